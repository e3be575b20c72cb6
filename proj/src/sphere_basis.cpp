#include "boxatom/sphere_basis.hpp"

#include "boxatom/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <utility>

namespace boxatom {

namespace {

double bessel_series(int l, double x) {
  // x^l / (2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
  double lead = 1.0;
  for (int k = 1; k <= l; ++k)
    lead *= x / (2.0 * k + 1.0);
  const double y = -0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum))
      break;
  }
  return lead * sum;
}

std::shared_mutex zero_mutex;
std::map<std::pair<int, int>, double> zero_table;

double find_zero_in(int l, double lo, double hi) {
  double flo = spherical_bessel_j(l, lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = spherical_bessel_j(l, x);
    if (f == 0.0)
      return x;
    if ((f > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = f;
    } else {
      hi = x;
    }
    // Newton step with j_l' = j_{l-1} - (l+1)/x j_l (l >= 1); bisect
    // whenever it leaves the bracket.
    const double deriv = spherical_bessel_j(l - 1, x) - (l + 1.0) / x * f;
    double next = deriv != 0.0 ? x - f / deriv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi))
      next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4e-16 * x || hi - lo <= 4e-16 * x)
      return next;
    x = next;
  }
  throw NumericalError("bessel_zero: no convergence for l=" + std::to_string(l) +
                       " in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

} // namespace

void validate(ModeIndex index) {
  if (index.l < 0 || index.n < 1)
    throw ValidationError("mode index (l=" + std::to_string(index.l) +
                          ", n=" + std::to_string(index.n) +
                          ") requires l >= 0 and n >= 1");
}

double spherical_bessel_j(int l, double x) {
  if (l < 0)
    throw ValidationError("spherical_bessel_j: l must be nonnegative");
  x = std::abs(x);
  if (x < l + 1.0 || x < 1e-3)
    return bessel_series(l, x);
  const double s = std::sin(x);
  const double c = std::cos(x);
  double jm = s / x;
  if (l == 0)
    return jm;
  double j = s / (x * x) - c / x;
  for (int k = 1; k < l; ++k) {
    const double jp = (2.0 * k + 1.0) / x * j - jm;
    jm = j;
    j = jp;
  }
  return j;
}

double bessel_zero(int l, int n) {
  validate(ModeIndex{l, n});
  if (l == 0)
    return n * std::numbers::pi;
  {
    std::shared_lock lock(zero_mutex);
    if (auto it = zero_table.find({l, n}); it != zero_table.end())
      return it->second;
  }
  const double x = find_zero_in(l, bessel_zero(l - 1, n), bessel_zero(l - 1, n + 1));
  std::unique_lock lock(zero_mutex);
  zero_table.emplace(std::pair{l, n}, x);
  return x;
}

double mode_energy(ModeIndex index, double m_prime) {
  if (!(m_prime > 0.0))
    throw ValidationError("mode_energy: mass must be positive");
  const double x = bessel_zero(index.l, index.n);
  return x * x / (2.0 * m_prime);
}

RadialMode::RadialMode(ModeIndex index)
    : index_(index), zero_(bessel_zero(index.l, index.n)),
      norm_(std::sqrt(2.0) / std::abs(spherical_bessel_j(index.l + 1, zero_))) {}

double RadialMode::operator()(double r) const {
  if (index_.l == 0)
    return std::numbers::sqrt2 * std::sin(index_.n * std::numbers::pi * r);
  return norm_ * r * spherical_bessel_j(index_.l, zero_ * r);
}

RadialMode build_radial_mode(ModeIndex index) { return RadialMode(index); }

} // namespace boxatom
