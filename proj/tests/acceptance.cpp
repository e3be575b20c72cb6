// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "boxatom/ci.hpp"
#include "boxatom/perturbation.hpp"
#include "boxatom/quadrature.hpp"
#include "boxatom/sphere_basis.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace boxatom;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char *title, double budget_seconds,
               const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception &e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0.0 && elapsed > budget_seconds) {
    out.pass = false;
    out.detail += " [over time budget]";
  }
  if (!out.pass)
    ++failures;
  std::printf("[%s] AC%-2d %-44s %s (%.3f s)\n", out.pass ? "PASS" : "FAIL", id, title,
              out.detail.c_str(), elapsed);
}

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

constexpr int kRule = 200;
const double kPi2 = std::numbers::pi * std::numbers::pi;

PerturbationCoefficients he(bool clamped, CoulombIntegrals &ints) {
  const auto sys = nondimensionalize(helium(clamped));
  return epsilon1(sys, ground_occupation(sys), ints);
}

} // namespace

int main() {
  std::printf("boxatom acceptance suite (quadrature n = %d)\n", kRule);

  criterion(1, "clamped He eps0 = 9.8696044", 1.0, [] {
    const auto sys = nondimensionalize(helium(true));
    const double e0 = epsilon0(sys, ground_occupation(sys));
    return Outcome{std::abs(e0 - 9.8696044) <= 1e-6, fmt("eps0=%.10f tol=1e-6", e0)};
  });

  criterion(2, "clamped He eps1 = -7.9645404", 1.0, [] {
    CoulombIntegrals ints(kRule);
    const auto c = he(true, ints);
    return Outcome{std::abs(c.eps1 + 7.9645404) <= 1e-6, fmt("eps1=%.10f tol=1e-6", c.eps1)};
  });

  criterion(3, "moving He eps0 = 9.870280744", 1.0, [] {
    const auto sys = nondimensionalize(helium(false));
    const double e0 = epsilon0(sys, ground_occupation(sys));
    return Outcome{std::abs(e0 - 9.870280744) <= 1e-8, fmt("eps0=%.10f tol=1e-8", e0)};
  });

  criterion(4, "moving He eps1 = -5.358219501", 1.0, [] {
    CoulombIntegrals ints(kRule);
    const auto c = he(false, ints);
    const double pair = ints.pair_expectation(kGroundMode, kGroundMode);
    const bool ok = std::abs(c.eps1 + 5.358219501) <= 1e-7 && std::abs(pair - 1.786073167) <= 4e-8;
    return Outcome{ok, fmt("eps1=%.10f pair=%.10f tol=1e-7/4e-8", c.eps1, pair)};
  });

  criterion(5, "eps1 clamped - moving closes via Cin(2pi)", 0.0, [] {
    CoulombIntegrals ints(kRule);
    const double diff = he(true, ints).eps1 - he(false, ints).eps1;
    const double cin = oracle::cin(2 * std::numbers::pi); // series, not quadrature
    const double pair = ints.pair_expectation(kGroundMode, kGroundMode);
    // As stated: -(4 Cin - 3 pair). The algebra from the two coefficient
    // formulas gives -4 (Cin - pair); its residual is reported alongside.
    const double expected = -(4.0 * cin - 3.0 * pair);
    const double derived = -4.0 * (cin - pair);
    return Outcome{std::abs(diff - expected) <= 1e-7,
                   fmt("diff=%.12f stated=%.12f tol=1e-7; -4(Cin-pair) residual=%.1e", diff,
                       expected, std::abs(diff - derived))};
  });

  criterion(6, "overlap <= 1, -> 1 as lambda -> 0, monotone", 5.0, [] {
    CoulombIntegrals ints(kRule);
    const std::vector<double> grid{1e-6, 0.01, 0.1, 0.5, 1.0, 2.0};
    const auto scan = overlap_scan(2.0, grid, CiBasis(8), ints);
    bool ok = scan[0].overlap0 >= 1.0 - 1e-8;
    std::ostringstream os;
    for (std::size_t k = 0; k < scan.size(); ++k) {
      ok = ok && scan[k].overlap0 <= 1.0;
      if (k > 0)
        ok = ok && scan[k].overlap0 <= scan[k - 1].overlap0;
      os << (k ? " " : "overlap=") << fmt("%.8f", scan[k].overlap0);
    }
    return Outcome{ok, os.str()};
  });

  criterion(7, "CI below first order; slope -> eps1", 0.0, [] {
    CoulombIntegrals ints(kRule);
    const CiBasis basis(8);
    const double eps1 = he(true, ints).eps1;
    bool ok = true;
    for (double lambda : {1e-6, 0.01, 0.1, 0.5, 1.0, 2.0}) {
      const auto s = solve_ci(2.0, lambda, basis, ints);
      ok = ok && s.energy <= kPi2 + eps1 * lambda;
    }
    const double h = 1e-4;
    const double slope =
        (solve_ci(2.0, h, basis, ints).energy - solve_ci(2.0, 0.0, basis, ints).energy) / h;
    ok = ok && std::abs(slope + 7.9645404) <= 1e-3;
    return Outcome{ok, fmt("slope=%.6f tol=1e-3", slope)};
  });

  criterion(8, "nuclear motion: potential-dominated", 0.0, [] {
    CoulombIntegrals ints(kRule);
    const auto r = nuclear_motion_report(he(true, ints), he(false, ints));
    const double kin = (9.870280744 - 9.8696044) / 9.8696044;
    const double pot = (7.9645404 - 5.358219501) / 7.9645404;
    const bool ok = std::abs(r.kinetic_shift / kin - 1.0) <= 1e-3 &&
                    std::abs(r.potential_shift / pot - 1.0) <= 1e-3 &&
                    r.kinetic_shift < r.potential_shift &&
                    r.dominant == DominantShift::Potential;
    return Outcome{ok, fmt("kinetic=%.4e potential=%.4f flag=%s", r.kinetic_shift,
                           r.potential_shift, to_string(r.dominant))};
  });

  criterion(9, "numerical infrastructure", 0.0, [] {
    bool ok = true;
    double worst_poly = 0.0;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int n : {2, 4, 8, 16}) {
      const auto rule = gauss_legendre(n);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> c(2 * n);
        for (auto &x : c)
          x = coef(rng);
        double exact = 0.0;
        for (int k = 0; k < 2 * n; k += 2)
          exact += c[k] * 2.0 / (k + 1);
        const double got = integrate(
            [&](double x) {
              double p = 0.0;
              for (int k = 2 * n - 1; k >= 0; --k)
                p = p * x + c[k];
              return p;
            },
            -1.0, 1.0, rule);
        worst_poly = std::max(worst_poly, std::abs(got - exact));
      }
    }
    ok = ok && worst_poly <= 1e-12;

    double worst_ortho = 0.0;
    const auto rule = gauss_legendre(kRule);
    for (int n = 1; n <= 10; ++n)
      for (int m = n; m <= 10; ++m) {
        const auto un = build_radial_mode({0, n});
        const auto um = build_radial_mode({0, m});
        const double s = integrate([&](double r) { return un(r) * um(r); }, 0.0, 1.0, rule);
        worst_ortho = std::max(worst_ortho, std::abs(s - (n == m ? 1.0 : 0.0)));
      }
    ok = ok && worst_ortho <= 1e-10;

    double worst_zero = 0.0;
    for (int n = 1; n <= 20; ++n)
      worst_zero = std::max(worst_zero, std::abs(bessel_zero(0, n) - n * std::numbers::pi));
    ok = ok && worst_zero <= 1e-12;

    const double j1_oracle =
        oracle::bisect(oracle::j1_root_condition, std::numbers::pi, 1.5 * std::numbers::pi);
    const double j1 = bessel_zero(1, 1);
    ok = ok && std::abs(j1 - 4.493409458) <= 1e-9 && std::abs(j1 - j1_oracle) <= 1e-12;
    return Outcome{ok, fmt("poly=%.1e ortho=%.1e zero0=%.1e j1=%.10f", worst_poly, worst_ortho,
                           worst_zero, j1)};
  });

  criterion(10, "s-limited eps2: fit vs sum-over-states <= 2%", 0.0, [] {
    CoulombIntegrals ints(kRule);
    const auto est = second_order_estimate(2.0, CiBasis(8), default_second_order_grid(), ints);
    const bool ok = est.relative_difference <= kSecondOrderAgreement && est.fit <= 0.0;
    return Outcome{ok, fmt("fit=%.6f sos=%.6f rel=%.2e", est.fit, est.sum_over_states,
                           est.relative_difference)};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
