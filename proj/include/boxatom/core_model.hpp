#pragma once

#include <cstddef>
#include <vector>

namespace boxatom {

/// A point particle in atomic-style units: mass in electron masses, charge
/// in elementary charges. A clamped particle sits fixed at the box center.
struct Particle {
  double mass{1.0};
  double charge{-1.0};
  bool clamped{false};
};

/// Physical input: particles, the reference particle that fixes the units,
/// and the box radius in bohr.
struct SystemDefinition {
  std::vector<Particle> particles;
  std::size_t reference{0};
  double rc_bohr{1.0};
};

/// Particle in reference units, m' = m/m_ref and q' = q/q_ref.
struct ScaledParticle {
  double mass{1.0};
  double charge{1.0};
  bool clamped{false};
};

/// The system after scaling lengths by the box radius. Every Coulomb term
/// carries the coupling `lambda` = R_c / a; energies are in units of
/// `energy_prefactor` = hbar^2 / (m_ref a^2).
struct DimensionlessSystem {
  std::vector<ScaledParticle> particles;
  std::size_t reference{0};
  double lambda{1.0};
  double length_scale_a{1.0};   ///< a in bohr
  double energy_prefactor{1.0}; ///< hbar^2/(m_ref a^2) in hartree

  std::size_t free_count() const;
  /// Index of the clamped particle, or particles.size() if none.
  std::size_t clamped_index() const;
  bool has_clamped() const { return clamped_index() < particles.size(); }
};

/// Throws ValidationError naming the offending particle or field.
void validate(const SystemDefinition &def);

/// Scale to reference-particle units. With a = a0 / (m_ref q_ref^2) the
/// coupling is lambda = R_c m_ref q_ref^2 and the energy unit is
/// m_ref q_ref^4 hartree, so no physical constants are needed.
DimensionlessSystem nondimensionalize(const SystemDefinition &def);

/// Nuclear mass used for the helium presets, in electron masses.
inline constexpr double kHeliumNuclearMass = 7296.300;

/// Two electrons and a charge +2 nucleus, reference = first electron.
SystemDefinition helium(bool clamped_nucleus, double rc_bohr = 1.0,
                        double nuclear_mass = kHeliumNuclearMass);

} // namespace boxatom
