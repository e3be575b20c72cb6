#include "boxatom/coulomb.hpp"

#include "boxatom/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace boxatom {

namespace {

void require_s_wave(const PairIntegralKey &key) {
  if (key.multipole != 0)
    throw UnsupportedFeature("two-particle integrals are implemented for the "
                             "monopole (multipole 0) only");
  for (const auto &m : {key.a, key.b, key.c, key.d}) {
    validate(m);
    if (m.l != 0)
      throw UnsupportedFeature("two-particle integrals are limited to s-wave (l=0) "
                               "modes; got l=" + std::to_string(m.l));
  }
}

} // namespace

PairIntegralKey PairIntegralKey::canonical() const {
  // Particle-1 pair and particle-2 pair are each unordered; the two pairs
  // may be swapped together.
  std::pair<ModeIndex, ModeIndex> p1 = std::minmax(a, c);
  std::pair<ModeIndex, ModeIndex> p2 = std::minmax(b, d);
  if (p2 < p1)
    std::swap(p1, p2);
  return {p1.first, p2.first, p1.second, p2.second, multipole};
}

CoulombIntegrals::CoulombIntegrals(int order, double tolerance)
    : order_(order), check_order_(0), tolerance_(tolerance) {
  if (order < 2 || order > kMaxRuleOrder)
    throw ValidationError("quadrature order " + std::to_string(order) + " outside [2, " +
                          std::to_string(kMaxRuleOrder) + "]");
  // The check rule doubles the order; above 256 points it halves instead so
  // it stays within the generator's range.
  check_order_ = 2 * order <= kMaxRuleOrder ? 2 * order : order / 2;
  const int orders[2] = {order, check_order_};
  for (int k = 0; k < 2; ++k) {
    resolution_[k].rule = gauss_legendre(orders[k]);
    resolution_[k].grid = triangle_grid(resolution_[k].rule);
  }
}

double CoulombIntegrals::checked(double value, double check, const char *what) const {
  if (!(std::abs(value - check) <= tolerance_)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": quadrature with " << order_ << " and " << check_order_
       << " points disagree (" << value << " vs " << check << ")";
    throw NumericalError(os.str());
  }
  return value;
}

double CoulombIntegrals::central_at(ModeIndex a, ModeIndex b, const Resolution &res) const {
  const RadialMode ua(a);
  const RadialMode ub(b);
  // u_a u_b ~ r^(2l+2), so the integrand vanishes at the origin.
  return integrate(
      [&](double r) { return r > 0.0 ? ua(r) * ub(r) / r : 0.0; }, 0.0, 1.0, res.rule);
}

double CoulombIntegrals::central_expectation(ModeIndex a, ModeIndex b) {
  validate(a);
  validate(b);
  if (a.l != b.l)
    return 0.0;
  const std::pair<ModeIndex, ModeIndex> key = std::minmax(a, b);
  {
    std::shared_lock lock(mutex_);
    if (auto it = central_cache_.find(key); it != central_cache_.end())
      return it->second;
  }
  const double value = checked(central_at(key.first, key.second, resolution_[0]),
                               central_at(key.first, key.second, resolution_[1]),
                               "central_expectation");
  std::unique_lock lock(mutex_);
  central_cache_.emplace(key, value);
  return value;
}

const CoulombIntegrals::ModeTable &CoulombIntegrals::table(ModeIndex m, int which) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = tables_.find({m, which}); it != tables_.end())
      return *it->second;
  }
  const RadialMode u(m);
  const auto &grid = resolution_[which].grid;
  auto t = std::make_shared<ModeTable>();
  t->outer.reserve(grid.outer_r.size());
  t->inner.reserve(grid.inner_r.size());
  for (double r : grid.outer_r)
    t->outer.push_back(u(r));
  for (double r : grid.inner_r)
    t->inner.push_back(u(r));
  std::unique_lock lock(mutex_);
  return *tables_.try_emplace({m, which}, std::move(t)).first->second;
}

double CoulombIntegrals::slater_at(const PairIntegralKey &key, const Resolution &res,
                                   int which) {
  // On the triangle r2 <= r1 the kernel is 1/r1:
  //   R = sum_i w_i / r1_i [rho_ac(r1) Y_bd(r1) + rho_bd(r1) Y_ac(r1)]
  // with Y(r1) = int_0^r1 rho(r2) dr2.
  const auto &ta = table(key.a, which);
  const auto &tb = table(key.b, which);
  const auto &tc = table(key.c, which);
  const auto &td = table(key.d, which);
  const auto &grid = res.grid;
  const auto n = static_cast<std::size_t>(grid.order);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y_ac = 0.0;
    double y_bd = 0.0;
    for (std::size_t j = i * n; j < (i + 1) * n; ++j) {
      y_ac += grid.inner_w[j] * ta.inner[j] * tc.inner[j];
      y_bd += grid.inner_w[j] * tb.inner[j] * td.inner[j];
    }
    const double rho_ac = ta.outer[i] * tc.outer[i];
    const double rho_bd = tb.outer[i] * td.outer[i];
    total += grid.outer_w[i] / grid.outer_r[i] * (rho_ac * y_bd + rho_bd * y_ac);
  }
  if (!std::isfinite(total))
    throw NumericalError("slater_radial: non-finite result");
  return total;
}

double CoulombIntegrals::slater_radial(const PairIntegralKey &key) {
  require_s_wave(key);
  const auto canon = key.canonical();
  {
    std::shared_lock lock(mutex_);
    if (auto it = slater_cache_.find(canon); it != slater_cache_.end())
      return it->second;
  }
  const double value = checked(slater_at(canon, resolution_[0], 0),
                               slater_at(canon, resolution_[1], 1), "slater_radial");
  std::unique_lock lock(mutex_);
  slater_cache_.emplace(canon, value);
  return value;
}

double CoulombIntegrals::pair_expectation(ModeIndex a, ModeIndex b) {
  return slater_radial({a, b, a, b, 0});
}

std::size_t CoulombIntegrals::cached_count() const {
  std::shared_lock lock(mutex_);
  return central_cache_.size() + slater_cache_.size();
}

} // namespace boxatom
