#pragma once

#include "boxatom/coulomb.hpp"

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

namespace boxatom {

/// Two s-wave electrons around a clamped charge. Configurations are
/// spatially symmetric (singlet) products {n, m}, n <= m <= nmax:
///   |nn> = u_n(1) u_n(2),   |nm> = [u_n(1) u_m(2) + u_m(1) u_n(2)] / sqrt(2).
/// {1,1} is always first.
class CiBasis {
public:
  explicit CiBasis(int nmax);

  int nmax() const { return nmax_; }
  std::size_t size() const { return configs_.size(); }
  const std::vector<std::pair<int, int>> &configurations() const { return configs_; }

private:
  int nmax_;
  std::vector<std::pair<int, int>> configs_;
};

/// Dimensionless Hamiltonian in the configuration basis:
///   H = sum_i [-1/2 lap_i - lambda Z / r_i] + lambda / r12.
/// lambda = 0 is allowed and gives the diagonal free-particle matrix.
Eigen::MatrixXd build_hamiltonian(double z, double lambda, const CiBasis &basis,
                                  CoulombIntegrals &integrals);

struct Eigenpair {
  double energy{0.0};
  Eigen::VectorXd coefficients;
  double residual{0.0}; ///< ||H c - e c||
};

/// Lowest eigenpair, sign fixed so coefficient 0 is nonnegative. Throws
/// NumericalError if the residual exceeds 1e-10.
Eigenpair ground_state(const Eigen::MatrixXd &matrix);

struct CiSolution {
  double lambda{0.0};
  double energy{0.0};
  Eigen::VectorXd coefficients;
  double overlap0{0.0}; ///< |<phi|phi0>|, the {1,1} coefficient
  double residual{0.0};
};

CiSolution solve_ci(double z, double lambda, const CiBasis &basis,
                    CoulombIntegrals &integrals);

/// Ground state over an ascending lambda grid.
std::vector<CiSolution> overlap_scan(double z, std::span<const double> lambdas,
                                     const CiBasis &basis, CoulombIntegrals &integrals);

/// s-wave-limited second-order coefficient from two independent routes:
/// a least-squares fit of eps_CI - eps0 - eps1 lambda to {lambda^2,
/// lambda^3}, and the sum over states sum_k |V_k0|^2 / (E0_0 - E0_k) in the
/// same configuration space. Only pair excitations with l = 0 enter, so
/// this is a partial sum of the full coefficient.
struct SecondOrderEstimate {
  double eps0{0.0};
  double eps1{0.0};
  double fit{0.0};
  double sum_over_states{0.0};
  double relative_difference{0.0}; ///< |fit - sos| / |sos|
};

inline constexpr double kSecondOrderAgreement = 0.02;

/// Requires nmax >= 4 and every lambda in (0, 0.2]. Throws NumericalError on
/// an ill-conditioned fit.
SecondOrderEstimate second_order_estimate(double z, const CiBasis &basis,
                                          std::span<const double> lambdas,
                                          CoulombIntegrals &integrals);

/// Ten evenly spaced points on [0.02, 0.2].
std::vector<double> default_second_order_grid();

} // namespace boxatom
