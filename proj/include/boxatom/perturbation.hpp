#pragma once

#include "boxatom/core_model.hpp"
#include "boxatom/coulomb.hpp"
#include "boxatom/sphere_basis.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boxatom {

enum class TermKind {
  Kinetic,     ///< x^2 / (2 m') of one free particle
  PairFree,    ///< q'_i q'_j <1/r_ij> between two free particles
  PairCentral, ///< q'_i q'_c <1/r_i> against the clamped particle
};

const char *to_string(TermKind kind);

struct Contribution {
  TermKind kind;
  std::size_t i{0};
  std::size_t j{0}; ///< equals i for kinetic terms
  double prefactor{1.0}; ///< 1/(2m') for kinetic, q'_i q'_j for pairs
  double integral{0.0};  ///< x^2 for kinetic, the 1/r expectation for pairs
  double value{0.0};     ///< prefactor * integral

  std::string label() const;
};

/// First two coefficients of eps(lambda) = eps0 + eps1 lambda + ...
/// `breakdown` lists kinetic terms first, then pairs in (i, j) order.
struct PerturbationCoefficients {
  double eps0{0.0};
  double eps1{0.0};
  std::vector<Contribution> breakdown;
};

/// One mode per free particle, in particle order; a clamped particle has no
/// entry.
using Occupation = std::vector<ModeIndex>;

Occupation ground_occupation(const DimensionlessSystem &system);

/// Sum of x_{l,n}^2 / (2 m') over free particles.
double epsilon0(const DimensionlessSystem &system, std::span<const ModeIndex> occupation);

/// eps0 and the first-order Coulomb coefficient (expectation of the scaled
/// interaction over the product state). s-wave occupations only; an
/// occupation whose eps0 is shared by another s-wave occupation is rejected
/// because degenerate first order is not implemented.
PerturbationCoefficients epsilon1(const DimensionlessSystem &system,
                                  std::span<const ModeIndex> occupation,
                                  CoulombIntegrals &integrals);

struct EnergyCurvePoint {
  double lambda{0.0};
  double rc_bohr{0.0};
  double energy{0.0}; ///< units of energy_prefactor (hartree for an electron reference)
};

struct EnergyCurve {
  std::vector<EnergyCurvePoint> points;
  /// lambda = -2 eps0 / eps1 where the truncated curve has its minimum; set
  /// only when eps1 < 0.
  std::optional<double> turnover_lambda;
};

/// E(lambda) = eps0 / lambda^2 + eps1 / lambda, the first-order truncation.
EnergyCurve energy_curve(const DimensionlessSystem &system,
                         const PerturbationCoefficients &coeffs,
                         std::span<const double> lambdas);

enum class DominantShift { Kinetic, Potential };

const char *to_string(DominantShift shift);

/// Relative change of each coefficient when the nucleus is allowed to move.
struct NuclearMotionReport {
  PerturbationCoefficients clamped;
  PerturbationCoefficients moving;
  double kinetic_shift{0.0};   ///< |d eps0| / eps0
  double potential_shift{0.0}; ///< |d eps1| / |eps1|
  DominantShift dominant{DominantShift::Potential};
};

NuclearMotionReport nuclear_motion_report(const PerturbationCoefficients &clamped,
                                          const PerturbationCoefficients &moving);

} // namespace boxatom
