#include "boxatom/ci.hpp"

#include "boxatom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace boxatom {

CiBasis::CiBasis(int nmax) : nmax_(nmax) {
  if (nmax < 1)
    throw ValidationError("ci basis: nmax must be at least 1");
  for (int n = 1; n <= nmax; ++n)
    for (int m = n; m <= nmax; ++m)
      configs_.emplace_back(n, m);
}

namespace {

// Ordered products making up a symmetrized configuration, with the
// normalization factor.
struct Expansion {
  std::pair<int, int> terms[2];
  int count;
  double norm;
};

Expansion expand(std::pair<int, int> c) {
  if (c.first == c.second)
    return {{c, c}, 1, 1.0};
  return {{c, {c.second, c.first}}, 2, 1.0 / std::numbers::sqrt2};
}

ModeIndex s_mode(int n) { return {0, n}; }

} // namespace

Eigen::MatrixXd build_hamiltonian(double z, double lambda, const CiBasis &basis,
                                  CoulombIntegrals &integrals) {
  if (!(z > 0.0))
    throw ValidationError("ci: nuclear charge Z must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ValidationError("ci: lambda must be nonnegative and finite");

  // One-body h_pq = delta_pq (p pi)^2 / 2 - lambda Z <p|1/r|q> and the
  // product-basis element <ab|H|cd> = h_ac delta_bd + delta_ac h_bd + lambda R0(ab;cd).
  const auto one_body = [&](int p, int q) {
    double h = -lambda * z * integrals.central_expectation(s_mode(p), s_mode(q));
    if (p == q)
      h += 0.5 * (p * std::numbers::pi) * (p * std::numbers::pi);
    return h;
  };
  const auto product = [&](std::pair<int, int> bra, std::pair<int, int> ket) {
    const auto [a, b] = bra;
    const auto [c, d] = ket;
    double v = lambda * integrals.slater_radial(
                            {s_mode(a), s_mode(b), s_mode(c), s_mode(d), 0});
    if (b == d)
      v += one_body(a, c);
    if (a == c)
      v += one_body(b, d);
    return v;
  };

  const auto &configs = basis.configurations();
  const auto size = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd h(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto bra = expand(configs[i]);
    for (Eigen::Index j = i; j < size; ++j) {
      const auto ket = expand(configs[j]);
      double sum = 0.0;
      for (int s = 0; s < bra.count; ++s)
        for (int t = 0; t < ket.count; ++t)
          sum += product(bra.terms[s], ket.terms[t]);
      h(i, j) = h(j, i) = bra.norm * ket.norm * sum;
    }
  }
  return h;
}

Eigenpair ground_state(const Eigen::MatrixXd &matrix) {
  if (matrix.rows() == 0 || matrix.rows() != matrix.cols())
    throw ValidationError("ground_state: matrix must be square and nonempty");
  if (!matrix.allFinite())
    throw ValidationError("ground_state: matrix has non-finite entries");
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ValidationError("ground_state: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success)
    throw NumericalError("ground_state: eigensolver did not converge (" +
                         std::to_string(matrix.rows()) + "x" +
                         std::to_string(matrix.cols()) + " matrix)");
  Eigenpair out;
  out.energy = solver.eigenvalues()(0);
  out.coefficients = solver.eigenvectors().col(0);
  out.coefficients.normalize();
  if (out.coefficients(0) < 0.0)
    out.coefficients = -out.coefficients;
  out.residual = (matrix * out.coefficients - out.energy * out.coefficients).norm();
  if (!(out.residual <= 1e-10)) {
    std::ostringstream os;
    os.precision(3);
    os << "ground_state: residual " << out.residual << " exceeds 1e-10 (matrix norm "
       << matrix.norm() << ")";
    throw NumericalError(os.str());
  }
  return out;
}

CiSolution solve_ci(double z, double lambda, const CiBasis &basis,
                    CoulombIntegrals &integrals) {
  const auto pair = ground_state(build_hamiltonian(z, lambda, basis, integrals));
  return {lambda, pair.energy, pair.coefficients, std::abs(pair.coefficients(0)),
          pair.residual};
}

std::vector<CiSolution> overlap_scan(double z, std::span<const double> lambdas,
                                     const CiBasis &basis, CoulombIntegrals &integrals) {
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0))
      throw ValidationError("overlap_scan: lambda values must be positive");
    if (k > 0 && !(lambdas[k] > lambdas[k - 1]))
      throw ValidationError("overlap_scan: lambda values must be sorted ascending");
  }
  std::vector<CiSolution> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas)
    out.push_back(solve_ci(z, lambda, basis, integrals));
  return out;
}

std::vector<double> default_second_order_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k)
    grid.push_back(0.02 * k);
  return grid;
}

SecondOrderEstimate second_order_estimate(double z, const CiBasis &basis,
                                          std::span<const double> lambdas,
                                          CoulombIntegrals &integrals) {
  if (basis.nmax() < 4)
    throw ValidationError("second_order_estimate: basis needs nmax >= 4");
  if (lambdas.size() < 2)
    throw ValidationError("second_order_estimate: need at least two lambda values");
  for (double lambda : lambdas)
    if (!(lambda > 0.0 && lambda <= 0.2))
      throw ValidationError("second_order_estimate: lambda values must lie in (0, 0.2]");

  const Eigen::MatrixXd h0 = build_hamiltonian(z, 0.0, basis, integrals);
  const Eigen::MatrixXd v = build_hamiltonian(z, 1.0, basis, integrals) - h0;

  SecondOrderEstimate out;
  out.eps0 = h0(0, 0);
  out.eps1 = v(0, 0);
  for (Eigen::Index k = 1; k < h0.rows(); ++k)
    out.sum_over_states += v(k, 0) * v(k, 0) / (h0(0, 0) - h0(k, k));

  const auto rows = static_cast<Eigen::Index>(lambdas.size());
  Eigen::MatrixXd design(rows, 2);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double lambda = lambdas[static_cast<std::size_t>(i)];
    const double eps = ground_state(h0 + lambda * v).energy;
    design(i, 0) = lambda * lambda;
    design(i, 1) = lambda * lambda * lambda;
    rhs(i) = eps - out.eps0 - out.eps1 * lambda;
  }
  // Scale columns before judging conditioning.
  const Eigen::Vector2d scale = design.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto &sv = svd.singularValues();
  if (!(sv(1) > 0.0) || sv(0) / sv(1) > 1e6)
    throw NumericalError("second_order_estimate: ill-conditioned fit; use a smaller "
                         "lambda range with more distinct points");
  const Eigen::VectorXd solution = svd.solve(rhs).cwiseQuotient(scale);
  out.fit = solution(0);
  out.relative_difference =
      std::abs(out.fit - out.sum_over_states) / std::abs(out.sum_over_states);
  return out;
}

} // namespace boxatom
