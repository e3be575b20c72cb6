#include "boxatom/core_model.hpp"

#include "boxatom/errors.hpp"

#include <cmath>
#include <string>

namespace boxatom {

std::size_t DimensionlessSystem::free_count() const {
  std::size_t count = 0;
  for (const auto &p : particles)
    count += p.clamped ? 0 : 1;
  return count;
}

std::size_t DimensionlessSystem::clamped_index() const {
  for (std::size_t i = 0; i < particles.size(); ++i)
    if (particles[i].clamped)
      return i;
  return particles.size();
}

void validate(const SystemDefinition &def) {
  if (def.particles.empty())
    throw ValidationError("particles: system has no particles");
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < def.particles.size(); ++i) {
    const auto &p = def.particles[i];
    const auto where = "particles[" + std::to_string(i) + "]";
    if (!std::isfinite(p.mass) || p.mass <= 0.0)
      throw ValidationError(where + ".mass: must be finite and positive");
    if (!std::isfinite(p.charge) || p.charge == 0.0)
      throw ValidationError(where + ".charge: must be finite and nonzero");
    clamped += p.clamped ? 1 : 0;
  }
  if (clamped > 1)
    throw ValidationError(
        "particles: at most one clamped particle is allowed, got " +
        std::to_string(clamped));
  if (def.reference >= def.particles.size())
    throw ValidationError("reference: index " + std::to_string(def.reference) +
                          " out of range");
  if (def.particles[def.reference].clamped)
    throw ValidationError("reference: reference particle must not be clamped");
  if (!std::isfinite(def.rc_bohr) || def.rc_bohr <= 0.0)
    throw ValidationError("rc_bohr: must be finite and positive");
}

DimensionlessSystem nondimensionalize(const SystemDefinition &def) {
  validate(def);
  const auto &ref = def.particles[def.reference];

  DimensionlessSystem out;
  out.reference = def.reference;
  out.particles.reserve(def.particles.size());
  for (const auto &p : def.particles)
    out.particles.push_back({p.mass / ref.mass, p.charge / ref.charge, p.clamped});

  const double q2 = ref.charge * ref.charge;
  out.length_scale_a = 1.0 / (ref.mass * q2);
  out.lambda = def.rc_bohr / out.length_scale_a;
  out.energy_prefactor = ref.mass * q2 * q2;
  if (!(out.lambda > 0.0) || !std::isfinite(out.lambda))
    throw ValidationError("rc_bohr: scaled coupling is not a positive finite number");
  return out;
}

SystemDefinition helium(bool clamped_nucleus, double rc_bohr, double nuclear_mass) {
  SystemDefinition def;
  def.particles = {{1.0, -1.0, false}, {1.0, -1.0, false}, {nuclear_mass, 2.0, clamped_nucleus}};
  def.reference = 0;
  def.rc_bohr = rc_bohr;
  return def;
}

} // namespace boxatom
