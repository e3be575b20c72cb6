#include "boxatom/perturbation.hpp"

#include "boxatom/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace boxatom {

const char *to_string(TermKind kind) {
  switch (kind) {
  case TermKind::Kinetic:
    return "kinetic";
  case TermKind::PairFree:
    return "pair";
  case TermKind::PairCentral:
    return "central";
  }
  return "?";
}

const char *to_string(DominantShift shift) {
  return shift == DominantShift::Kinetic ? "kinetic" : "potential";
}

std::string Contribution::label() const {
  std::ostringstream os;
  if (kind == TermKind::Kinetic)
    os << "T" << i;
  else
    os << "V" << i << "_" << j;
  return os.str();
}

Occupation ground_occupation(const DimensionlessSystem &system) {
  return Occupation(system.free_count(), kGroundMode);
}

namespace {

// Mode of each particle; clamped particles get no entry in `occupation`.
std::vector<ModeIndex> expand_occupation(const DimensionlessSystem &system,
                                         std::span<const ModeIndex> occupation) {
  if (system.particles.size() - system.free_count() > 1)
    throw ValidationError("particles: at most one clamped particle is allowed");
  if (occupation.size() != system.free_count())
    throw ValidationError("occupation: expected " + std::to_string(system.free_count()) +
                          " modes (one per free particle), got " +
                          std::to_string(occupation.size()));
  std::vector<ModeIndex> modes(system.particles.size(), kGroundMode);
  std::size_t k = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (system.particles[i].clamped)
      continue;
    validate(occupation[k]);
    modes[i] = occupation[k++];
  }
  return modes;
}

// True when some other assignment of s-wave radial numbers to the free
// particles reproduces the same eps0.
bool has_degenerate_partner(const DimensionlessSystem &system,
                            std::span<const ModeIndex> occupation) {
  std::vector<double> scale; // pi^2 / (2 m')
  std::vector<int> given;
  std::size_t k = 0;
  for (const auto &p : system.particles) {
    if (p.clamped)
      continue;
    scale.push_back(std::numbers::pi * std::numbers::pi / (2.0 * p.mass));
    given.push_back(occupation[k++].n);
  }
  if (scale.empty())
    return false;
  double target = 0.0;
  for (std::size_t k = 0; k < scale.size(); ++k)
    target += scale[k] * given[k] * given[k];
  const double tol = 1e-12 * target;

  std::vector<int> trial(scale.size(), 1);
  std::function<bool(std::size_t, double)> search = [&](std::size_t k, double left) {
    if (k + 1 == scale.size()) {
      // Last particle: solve for n directly.
      const double n = std::sqrt(left / scale[k]);
      for (long c : {std::lround(std::floor(n)), std::lround(std::ceil(n))}) {
        if (c < 1 || std::abs(scale[k] * c * c - left) > tol)
          continue;
        trial[k] = static_cast<int>(c);
        if (trial != given)
          return true;
      }
      return false;
    }
    for (int n = 1; scale[k] * n * n <= left + tol; ++n) {
      trial[k] = n;
      if (search(k + 1, left - scale[k] * n * n))
        return true;
    }
    return false;
  };
  return search(0, target);
}

} // namespace

double epsilon0(const DimensionlessSystem &system, std::span<const ModeIndex> occupation) {
  const auto modes = expand_occupation(system, occupation);
  double sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (!system.particles[i].clamped)
      sum += mode_energy(modes[i], system.particles[i].mass);
  return sum;
}

PerturbationCoefficients epsilon1(const DimensionlessSystem &system,
                                  std::span<const ModeIndex> occupation,
                                  CoulombIntegrals &integrals) {
  const auto occupied = expand_occupation(system, occupation);
  for (std::size_t i = 0; i < occupation.size(); ++i)
    if (occupation[i].l != 0)
      throw UnsupportedFeature("occupation[" + std::to_string(i) +
                               "]: first-order coefficients need s-wave (l=0) modes");
  if (has_degenerate_partner(system, occupation))
    throw UnsupportedFeature(
        "occupation: zeroth-order level is degenerate with another s-wave "
        "occupation; degenerate perturbation theory is not implemented");

  const auto &ps = system.particles;
  PerturbationCoefficients out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].clamped)
      continue;
    const double x = bessel_zero(occupied[i].l, occupied[i].n);
    const double pre = 1.0 / (2.0 * ps[i].mass);
    out.breakdown.push_back({TermKind::Kinetic, i, i, pre, x * x, pre * x * x});
    out.eps0 += pre * x * x;
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const double pre = ps[i].charge * ps[j].charge;
      Contribution c{TermKind::PairFree, i, j, pre, 0.0, 0.0};
      if (ps[i].clamped || ps[j].clamped) {
        const auto &mode = ps[i].clamped ? occupied[j] : occupied[i];
        c.kind = TermKind::PairCentral;
        c.integral = integrals.central_expectation(mode, mode);
      } else {
        c.integral = integrals.pair_expectation(occupied[i], occupied[j]);
      }
      c.value = pre * c.integral;
      out.eps1 += c.value;
      out.breakdown.push_back(c);
    }
  }
  return out;
}

EnergyCurve energy_curve(const DimensionlessSystem &system,
                         const PerturbationCoefficients &coeffs,
                         std::span<const double> lambdas) {
  EnergyCurve curve;
  curve.points.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw ValidationError("lambda values must be positive and finite");
    curve.points.push_back({lambda, lambda * system.length_scale_a,
                            coeffs.eps0 / (lambda * lambda) + coeffs.eps1 / lambda});
  }
  if (coeffs.eps1 < 0.0)
    curve.turnover_lambda = -2.0 * coeffs.eps0 / coeffs.eps1;
  return curve;
}

NuclearMotionReport nuclear_motion_report(const PerturbationCoefficients &clamped,
                                          const PerturbationCoefficients &moving) {
  NuclearMotionReport r;
  r.clamped = clamped;
  r.moving = moving;
  r.kinetic_shift = std::abs(moving.eps0 - clamped.eps0) / clamped.eps0;
  r.potential_shift = std::abs(moving.eps1 - clamped.eps1) / std::abs(clamped.eps1);
  r.dominant =
      r.potential_shift > r.kinetic_shift ? DominantShift::Potential : DominantShift::Kinetic;
  return r;
}

} // namespace boxatom
