#include "boxatom/ci.hpp"
#include "boxatom/errors.hpp"

#include "catch2/catch_amalgamated.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace boxatom;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double kPi2 = std::numbers::pi * std::numbers::pi;
const double kEps1Clamped = oracle::kPair11 - 4.0 * oracle::kCin2Pi;
} // namespace

TEST_CASE("ci basis layout", "[ci]") {
  for (int nmax : {1, 2, 5, 10}) {
    const CiBasis basis(nmax);
    CHECK(basis.size() == static_cast<std::size_t>(nmax * (nmax + 1) / 2));
    CHECK(basis.configurations().front() == std::pair{1, 1});
    for (const auto &[n, m] : basis.configurations()) {
      CHECK(n <= m);
      CHECK(m <= nmax);
    }
  }
  CHECK_THROWS_AS(CiBasis(0), ValidationError);
}

TEST_CASE("hamiltonian limits", "[ci]") {
  CoulombIntegrals ints;
  const CiBasis basis(4);
  const auto h0 = build_hamiltonian(2.0, 0.0, basis, ints);
  CHECK(h0.isDiagonal());
  CHECK_THAT(h0(0, 0), WithinAbs(kPi2, 1e-13));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto [n, m] = basis.configurations()[k];
    CHECK_THAT(h0(k, k), WithinAbs(0.5 * kPi2 * (n * n + m * m), 1e-12));
  }

  const CiBasis one(1);
  for (double lambda : {0.1, 1.0, 3.7}) {
    const auto h = build_hamiltonian(2.0, lambda, one, ints);
    REQUIRE(h.rows() == 1);
    CHECK_THAT(h(0, 0), WithinAbs(kPi2 + kEps1Clamped * lambda, 1e-11));
    CHECK_THAT(h(0, 0), WithinAbs(kPi2 - 7.9645404 * lambda, 1e-6 * lambda));
  }

  const auto h = build_hamiltonian(2.0, 0.7, CiBasis(6), ints);
  CHECK(h == h.transpose());

  CHECK_THROWS_AS(build_hamiltonian(0.0, 1.0, basis, ints), ValidationError);
  CHECK_THROWS_AS(build_hamiltonian(2.0, -1.0, basis, ints), ValidationError);
}

TEST_CASE("symmetrized matrix equals projected product-basis matrix", "[ci]") {
  // Brute force: the full 4x4 matrix over ordered products (a,b), a,b in {1,2},
  // then projected onto the exchange-symmetric subspace.
  CoulombIntegrals ints;
  const double z = 2.0;
  const double lambda = 0.83;
  const auto h1 = [&](int p, int q) {
    return (p == q ? 0.5 * p * p * kPi2 : 0.0) - lambda * z * oracle::central_ss(p, q);
  };
  const auto r0 = [&](int a, int b, int c, int d) {
    return ints.slater_radial({{0, a}, {0, b}, {0, c}, {0, d}, 0});
  };
  const std::pair<int, int> prod[4] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  Eigen::Matrix4d full;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto [a, b] = prod[i];
      const auto [c, d] = prod[j];
      full(i, j) = (b == d ? h1(a, c) : 0.0) + (a == c ? h1(b, d) : 0.0) + lambda * r0(a, b, c, d);
    }
  Eigen::Matrix<double, 4, 3> p = Eigen::Matrix<double, 4, 3>::Zero();
  p(0, 0) = 1.0;
  p(1, 1) = p(2, 1) = 1.0 / std::numbers::sqrt2;
  p(3, 2) = 1.0;
  const Eigen::Matrix3d projected = p.transpose() * full * p;

  const auto h = build_hamiltonian(z, lambda, CiBasis(2), ints);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK_THAT(h(i, j), WithinAbs(projected(i, j), 1e-10));

  // {1,1}-{1,2} coupling is sqrt(2) times the unsymmetrized element.
  CHECK_THAT(h(0, 1), WithinAbs(std::sqrt(2.0) * full(0, 1), 1e-10));
}

TEST_CASE("ground state", "[ci]") {
  Eigen::Matrix3d d = Eigen::Vector3d(3.0, -1.5, 2.0).asDiagonal();
  const auto g = ground_state(d);
  CHECK(g.energy == -1.5);
  CHECK_THAT(std::abs(g.coefficients(1)), WithinAbs(1.0, 1e-15));
  CHECK(g.residual <= 1e-10);

  const double a = 1.3, b = -0.4, c = 2.9;
  Eigen::Matrix2d m;
  m << a, b, b, c;
  const auto g2 = ground_state(m);
  CHECK_THAT(g2.energy, WithinAbs((a + c) / 2 - std::sqrt(std::pow((a - c) / 2, 2) + b * b), 1e-14));
  CHECK(g2.coefficients(0) >= 0.0);
  CHECK_THAT(g2.coefficients.norm(), WithinAbs(1.0, 1e-12));

  Eigen::Matrix2d asym;
  asym << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(ground_state(asym), ValidationError);
  CHECK_THROWS_AS(ground_state(Eigen::MatrixXd()), ValidationError);
}

TEST_CASE("ci solution at lambda = 0.5", "[ci]") {
  CoulombIntegrals ints;
  const auto s = solve_ci(2.0, 0.5, CiBasis(6), ints);
  CHECK(s.energy < kPi2 - 7.9645404 * 0.5);
  // Regression value for nmax = 6, Z = 2; an independent product-space CI
  // with adaptive integrals gave 5.700105937638882.
  CHECK_THAT(s.energy, WithinAbs(5.7001059376389, 1e-10));
  CHECK_THAT(s.coefficients.norm(), WithinAbs(1.0, 1e-12));
  CHECK(s.residual <= 1e-10);
  CHECK(s.overlap0 <= 1.0);
  CHECK(s.overlap0 == s.coefficients(0));
}

TEST_CASE("variational properties", "[ci][property]") {
  CoulombIntegrals ints;
  for (double lambda : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int nmax = 1; nmax <= 10; ++nmax) {
      const auto s = solve_ci(2.0, lambda, CiBasis(nmax), ints);
      CHECK(s.energy <= kPi2 + kEps1Clamped * lambda + 1e-12);
      CHECK(s.energy <= previous + 1e-12);
      if (nmax >= 2)
        CHECK(s.energy < kPi2 + kEps1Clamped * lambda);
      previous = s.energy;
    }
  }
}

TEST_CASE("slope at lambda = 0 reproduces the first-order coefficient", "[ci]") {
  CoulombIntegrals ints;
  const CiBasis basis(8);
  const double h = 1e-4;
  const double e0 = solve_ci(2.0, 0.0, basis, ints).energy;
  const double eh = solve_ci(2.0, h, basis, ints).energy;
  CHECK_THAT(e0, WithinAbs(kPi2, 1e-12));
  CHECK_THAT((eh - e0) / h, WithinAbs(-7.9645404, 1e-3));
}

TEST_CASE("overlap scan", "[ci]") {
  CoulombIntegrals ints;
  const CiBasis basis(8);
  const std::vector<double> grid{1e-6, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  const auto scan = overlap_scan(2.0, grid, basis, ints);
  REQUIRE(scan.size() == grid.size());
  CHECK(scan[0].overlap0 >= 1.0 - 1e-8);
  for (std::size_t k = 0; k < scan.size(); ++k) {
    CHECK(scan[k].lambda == grid[k]);
    CHECK(scan[k].overlap0 <= 1.0);
    CHECK(scan[k].overlap0 >= 0.0);
    if (k > 0)
      CHECK(scan[k].overlap0 <= scan[k - 1].overlap0);
  }
  const std::vector<double> unsorted{0.5, 0.1};
  CHECK_THROWS_AS(overlap_scan(2.0, unsorted, basis, ints), ValidationError);
  const std::vector<double> negative{-0.1};
  CHECK_THROWS_AS(overlap_scan(2.0, negative, basis, ints), ValidationError);
}

TEST_CASE("s-limited second-order estimate", "[ci]") {
  CoulombIntegrals ints;
  const auto grid = default_second_order_grid();
  double previous = 0.0;
  double previous_sos = 0.0;
  for (int nmax = 4; nmax <= 10; ++nmax) {
    const auto est = second_order_estimate(2.0, CiBasis(nmax), grid, ints);
    CHECK(est.fit <= 0.0);
    CHECK(est.sum_over_states <= 0.0);
    CHECK(est.relative_difference <= kSecondOrderAgreement);
    CHECK_THAT(est.eps0, WithinAbs(kPi2, 1e-12));
    CHECK_THAT(est.eps1, WithinAbs(kEps1Clamped, 1e-11));
    CHECK(est.fit < previous);
    CHECK(est.sum_over_states < previous_sos);
    previous = est.fit;
    previous_sos = est.sum_over_states;
  }

  CHECK_THROWS_AS(second_order_estimate(2.0, CiBasis(3), grid, ints), ValidationError);
  const std::vector<double> too_large{0.1, 0.3};
  CHECK_THROWS_AS(second_order_estimate(2.0, CiBasis(4), too_large, ints), ValidationError);
  const std::vector<double> repeated{0.1, 0.1, 0.1};
  CHECK_THROWS_AS(second_order_estimate(2.0, CiBasis(4), repeated, ints), NumericalError);
}
