#pragma once

#include <compare>

namespace boxatom {

/// One-particle state of the unit sphere: angular momentum l and radial
/// quantum number n (the n-th zero of j_l sits on the wall).
struct ModeIndex {
  int l{0};
  int n{1};

  auto operator<=>(const ModeIndex &) const = default;
};

inline constexpr ModeIndex kGroundMode{0, 1};

/// Spherical Bessel function j_l(x) for x >= 0. Power series below x = l+1,
/// upward recurrence from j_0, j_1 above.
double spherical_bessel_j(int l, double x);

/// n-th positive zero of j_l, accurate to ~1e-14 absolute. Zeros of j_l are
/// bracketed by consecutive zeros of j_{l-1} (interlacing); l = 0 is n*pi.
/// Results are memoized; safe to call concurrently.
double bessel_zero(int l, int n);

/// Dimensionless kinetic energy x_{l,n}^2 / (2 m') of a mode.
double mode_energy(ModeIndex index, double m_prime);

/// Normalized radial factor u(r) = r R(r) on [0, 1]:
///   u(r) = norm * r * j_l(x_{l,n} r),  norm = sqrt(2) / |j_{l+1}(x_{l,n})|
/// so that the integral of u^2 over [0,1] is one. For l = 0 this is
/// evaluated as sqrt(2) sin(n pi r).
class RadialMode {
public:
  explicit RadialMode(ModeIndex index);

  ModeIndex index() const { return index_; }
  double zero() const { return zero_; }
  double norm() const { return norm_; }

  double operator()(double r) const;

private:
  ModeIndex index_;
  double zero_;
  double norm_;
};

/// Throws ValidationError on l < 0 or n < 1.
void validate(ModeIndex index);

RadialMode build_radial_mode(ModeIndex index);

} // namespace boxatom
