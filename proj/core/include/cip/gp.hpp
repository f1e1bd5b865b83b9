#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "cip/kernel.hpp"

namespace cip {

/// Index split of a trace into the secret subsequence S and the remainder U.
/// Secret indices must be strictly increasing and in range; U is derived.
class Partition {
 public:
  Partition(std::vector<int> secret_indices, int trace_size);

  static Partition every_other(int trace_size);
  static Partition first_half(int trace_size);

  const std::vector<int>& secret_indices() const noexcept { return secret_; }
  const std::vector<int>& remainder_indices() const noexcept { return remainder_; }
  int trace_size() const noexcept { return trace_size_; }
  int secret_size() const noexcept { return static_cast<int>(secret_.size()); }
  int remainder_size() const noexcept { return static_cast<int>(remainder_.size()); }

 private:
  std::vector<int> secret_;
  std::vector<int> remainder_;
  int trace_size_;
};

/// P(U | S = s) = N(mean_map * s, cond_cov). The conditional covariance
/// depends only on which indices are conditioned on, never on the values.
struct ConditionalGaussian {
  Eigen::MatrixXd mean_map;  // |U| x |S|: Sigma_us Sigma_ss^-1
  Eigen::MatrixXd cond_cov;  // |U| x |U|: Sigma_uu - Sigma_us Sigma_ss^-1 Sigma_su
};

struct EffectiveCovariance {
  Eigen::MatrixXd sigma_eff;  // |S| x |S|
  double alpha_star = 0.0;    // top eigenvalue, clamped to >= 0
  Eigen::VectorXd v_star;     // unit-norm top eigenvector
  double sigma_z2 = 0.0;      // noise variance it was built with
};

ConditionalGaussian condition(const CovarianceMatrix& cov, const Partition& part);

/// Sigma_eff = (Sigma_us Sigma_ss^-1)^T (Sigma_u|s + sigma_z2 I)^-1
/// (Sigma_us Sigma_ss^-1), with its top eigenpair. When U is empty the
/// result is the zero matrix with alpha_star = 0.
EffectiveCovariance effective_covariance(const CovarianceMatrix& cov, const Partition& part,
                                         double sigma_z2);

/// Largest eigenvalue and unit eigenvector of a symmetric matrix, via full
/// symmetric eigendecomposition. Sign convention: first nonzero component
/// of the eigenvector is positive.
std::pair<double, Eigen::VectorXd> top_eigenpair(const Eigen::MatrixXd& m);

/// Power-iteration cross-check for top_eigenpair.
std::pair<double, Eigen::VectorXd> power_iteration_top(const Eigen::MatrixXd& m,
                                                       int max_iters = 20000,
                                                       double tol = 1e-12);

/// Cholesky with escalating diagonal jitter delta * scale for
/// delta in {0, 1e-12, 1e-11, ..., 1e-6}; throws SingularityError past 1e-6.
Eigen::LLT<Eigen::MatrixXd> llt_with_jitter(const Eigen::MatrixXd& m, double scale);

}  // namespace cip
