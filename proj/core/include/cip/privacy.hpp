#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "cip/gp.hpp"
#include "cip/kernel.hpp"

namespace cip {

struct PrivacyBudget {
  double epsilon = 1.0;  // loss bound, nats
  double radius = 1.0;   // per-point hypothesis radius r
  double lambda = 2.0;   // Renyi order, > 1

  void validate() const;
};

/// Difference of two hypothesis assignments for the secret subsequence.
struct DiscriminativePair {
  Eigen::VectorXd delta_s;

  // ||delta_s||_2^2 <= |S| r^2, the L2 ball circumscribing the L-inf ball.
  bool within_relaxed_ball(double radius) const;
};

struct LossReport {
  double loss_total = 0.0;  // nats
  double term_u = 0.0;      // (lambda/2) ds^T Sigma_eff ds
  double term_s = 0.0;      // (lambda/2) ||ds||_2^2 / sigma_z2
  double alpha_star = 0.0;
  std::optional<Eigen::VectorXd> delta_s_star;  // worst-case pair, when requested
  std::optional<bool> linf_feasible;            // ||ds*||_inf <= r
  // inputs echoed
  double sigma_z2 = 0.0;
  double lambda = 0.0;
  std::optional<double> radius;
  int secret_size = 0;
};

struct LossDecomposition {
  double term_zu = 0.0;              // divergence of the unreleased block
  double term_zs = 0.0;              // sum of per-point released divergences
  std::vector<double> per_point_zs;  // the |S| summands of term_zs

  double total() const { return term_zu + term_zs; }
};

/// Exact privacy loss for one discriminative pair:
/// (lambda/2) [ds^T Sigma_eff ds + ||ds||_2^2 / sigma_z2].
LossReport loss_for_pair(const CovarianceMatrix& cov, const Partition& part, double sigma_z2,
                         const DiscriminativePair& pair, double lambda);

/// Same, from a precomputed effective covariance.
LossReport loss_for_pair(const EffectiveCovariance& eff, const DiscriminativePair& pair,
                         double lambda);

/// Two-term split of the loss for explicit hypothesis values: the unreleased
/// block term via the conditional-mean gap, and the released block as a sum
/// of per-point Gaussian divergences. The total matches loss_for_pair with
/// delta_s = s_i - s_j.
LossDecomposition loss_decomposition(const CovarianceMatrix& cov, const Partition& part,
                                     double sigma_z2, const Eigen::VectorXd& s_i,
                                     const Eigen::VectorXd& s_j, double lambda);

/// D_lambda(N(mu_a, C) || N(mu_b, C)) = (lambda/2) (mu_a-mu_b)^T C^-1 (mu_a-mu_b).
double gaussian_renyi_divergence(const Eigen::VectorXd& mu_a, const Eigen::VectorXd& mu_b,
                                 const Eigen::MatrixXd& cov_shared, double lambda);

/// Worst case over the relaxed L2 ball:
/// (lambda/2) ((1 + sigma_z2 alpha*) / sigma_z2) |S| r^2, attained at
/// delta_s* = v* r sqrt(|S|).
LossReport worst_case_loss(const CovarianceMatrix& cov, const Partition& part, double sigma_z2,
                           const PrivacyBudget& budget);

/// Same, from a precomputed effective covariance.
LossReport worst_case_loss(const EffectiveCovariance& eff, const Partition& part,
                           const PrivacyBudget& budget);

/// Worst case under the independent-points prior: (lambda/2) |S| r^2 / sigma_z2.
LossReport gi_baseline_loss(int d, const Partition& part, double sigma_z2,
                            const PrivacyBudget& budget);

/// Smallest grid value of sigma_z2 at which L*_prior / L*_baseline exceeds
/// min_ratio; nullopt when no grid point does. The ratio 1 + sigma_z2 alpha*
/// is nondecreasing in sigma_z2, so the threshold separates the grid.
std::optional<double> gi_ratio_threshold(const CovarianceMatrix& cov, const Partition& part,
                                         std::span<const double> sigma_z2_grid,
                                         double min_ratio);

}  // namespace cip
