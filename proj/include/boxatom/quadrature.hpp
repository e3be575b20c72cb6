#pragma once

#include "boxatom/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace boxatom {

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order{0};
};

inline constexpr int kMaxRuleOrder = 512;
inline constexpr int kDefaultRuleOrder = 200;

/// n-point Gauss-Legendre rule, 1 <= n <= 512. Nodes from Newton iteration
/// on P_n with the three-term recurrence; exact for degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// Tensor rule for the triangle 0 <= r2 <= r1 <= 1: outer rule on [0,1] in
/// r1, inner rule on [0, r1] in r2. Point (i, j) has coordinates
/// (outer_r[i], inner_r[i*n + j]) and weight outer_w[i] * inner_w[i*n + j].
struct TriangleGrid {
  int order{0};
  std::vector<double> outer_r;
  std::vector<double> outer_w;
  std::vector<double> inner_r;
  std::vector<double> inner_w;
};

TriangleGrid triangle_grid(const QuadratureRule &rule);

namespace detail {
[[noreturn]] void throw_non_finite(double x, double value);
[[noreturn]] void throw_non_finite(double x, double y, double value);
void check_interval(double a, double b);
} // namespace detail

/// Affine-mapped rule applied to f on [a, b].
template <class F>
double integrate(F &&f, double a, double b, const QuadratureRule &rule) {
  detail::check_interval(a, b);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = mid + half * rule.nodes[i];
    const double fx = f(x);
    if (!std::isfinite(fx))
      detail::throw_non_finite(x, fx);
    sum += rule.weights[i] * fx;
  }
  return half * sum;
}

/// Integral of f2(r1, r2) over {0 <= r2 <= r1 <= 1}. Kernels such as
/// 1/max(r1, r2) are smooth on this triangle, so the nested rule converges
/// spectrally. For a full-square integral of a symmetric kernel use
/// `integrate_square_symmetric`.
template <class F>
double integrate_triangular(F &&f2, const TriangleGrid &grid) {
  const auto n = static_cast<std::size_t>(grid.order);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = grid.outer_r[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double r2 = grid.inner_r[i * n + j];
      const double v = f2(r1, r2);
      if (!std::isfinite(v))
        detail::throw_non_finite(r1, r2, v);
      inner += grid.inner_w[i * n + j] * v;
    }
    total += grid.outer_w[i] * inner;
  }
  return total;
}

template <class F>
double integrate_triangular(F &&f2, const QuadratureRule &rule) {
  return integrate_triangular(std::forward<F>(f2), triangle_grid(rule));
}

/// Full unit square for f2(r1,r2): lower triangle of f2(r1,r2) plus lower
/// triangle of f2(r2,r1).
template <class F>
double integrate_square_symmetric(F &&f2, const QuadratureRule &rule) {
  return integrate_triangular(
      [&](double r1, double r2) { return f2(r1, r2) + f2(r2, r1); }, rule);
}

} // namespace boxatom
