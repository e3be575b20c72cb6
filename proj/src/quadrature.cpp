#include "boxatom/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace boxatom {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0)
    return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

} // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > kMaxRuleOrder)
    throw ValidationError("gauss_legendre: order " + std::to_string(n) +
                          " outside [1, " + std::to_string(kMaxRuleOrder) + "]");
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) <= 1e-16)
        break;
    }
    dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1)
    rule.nodes[n / 2] = 0.0;
  return rule;
}

TriangleGrid triangle_grid(const QuadratureRule &rule) {
  const auto n = rule.nodes.size();
  TriangleGrid grid;
  grid.order = rule.order;
  grid.outer_r.resize(n);
  grid.outer_w.resize(n);
  grid.inner_r.resize(n * n);
  grid.inner_w.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = 0.5 * (rule.nodes[i] + 1.0);
    grid.outer_r[i] = r1;
    grid.outer_w[i] = 0.5 * rule.weights[i];
    for (std::size_t j = 0; j < n; ++j) {
      grid.inner_r[i * n + j] = 0.5 * r1 * (rule.nodes[j] + 1.0);
      grid.inner_w[i * n + j] = 0.5 * r1 * rule.weights[j];
    }
  }
  return grid;
}

namespace detail {

void throw_non_finite(double x, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "integrand is not finite at node x=" << x << " (value " << value << ")";
  throw NumericalError(os.str());
}

void throw_non_finite(double x, double y, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "integrand is not finite at node (r1=" << x << ", r2=" << y << ") (value "
     << value << ")";
  throw NumericalError(os.str());
}

void check_interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw ValidationError("integrate: interval requires finite a < b");
}

} // namespace detail

} // namespace boxatom
