#pragma once

#include "boxatom/quadrature.hpp"
#include "boxatom/sphere_basis.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace boxatom {

/// Key of a monopole radial Slater integral
///   R^0(ab;cd) = int int u_a(r1) u_c(r1) u_b(r2) u_d(r2) / max(r1,r2).
/// (a, c) belong to particle 1, (b, d) to particle 2.
struct PairIntegralKey {
  ModeIndex a, b, c, d;
  int multipole{0};

  auto operator<=>(const PairIntegralKey &) const = default;

  /// Representative of the symmetry class under a<->c, b<->d and particle
  /// exchange (a,c)<->(b,d).
  PairIntegralKey canonical() const;
};

/// Radial Coulomb integrals over sphere modes. Every value is computed with
/// the `order`-point rule and re-checked with a `check_order()` rule
/// (2 * order, or order / 2 above 256 points); a disagreement larger than
/// `tolerance` raises NumericalError instead of caching a bad number.
/// Thread-safe: concurrent lookups share a reader lock.
class CoulombIntegrals {
public:
  explicit CoulombIntegrals(int order = kDefaultRuleOrder, double tolerance = 1e-9);

  int order() const { return order_; }
  int check_order() const { return check_order_; }
  double tolerance() const { return tolerance_; }

  /// int u_a u_b / r dr: the matrix element of a central 1/r potential.
  /// Exactly 0 when the angular momenta differ.
  double central_expectation(ModeIndex a, ModeIndex b);

  /// <1/r12> in the product state u_a(r1) u_b(r2), s-wave only.
  double pair_expectation(ModeIndex a, ModeIndex b);

  /// R^0(ab;cd), s-wave only.
  double slater_radial(const PairIntegralKey &key);

  std::size_t cached_count() const;

private:
  struct Resolution {
    QuadratureRule rule;
    TriangleGrid grid;
  };
  struct ModeTable {
    std::vector<double> outer; // u(r1_i)
    std::vector<double> inner; // u(r2_ij)
  };

  double central_at(ModeIndex a, ModeIndex b, const Resolution &res) const;
  double slater_at(const PairIntegralKey &key, const Resolution &res, int which);
  const ModeTable &table(ModeIndex m, int which);
  double checked(double value, double check, const char *what) const;

  int order_;
  int check_order_;
  double tolerance_;
  Resolution resolution_[2];

  mutable std::shared_mutex mutex_;
  std::map<std::pair<ModeIndex, ModeIndex>, double> central_cache_;
  std::map<PairIntegralKey, double> slater_cache_;
  std::map<std::pair<ModeIndex, int>, std::shared_ptr<const ModeTable>> tables_;
};

} // namespace boxatom
