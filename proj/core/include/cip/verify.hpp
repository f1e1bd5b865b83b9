#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>

#include "cip/gp.hpp"
#include "cip/kernel.hpp"

namespace cip {

struct McConfig {
  std::size_t n_samples = 100000;  // >= 1000
  std::uint64_t seed = 0;
  double lambda = 2.0;
  std::optional<double> clip;   // cap on the lambda-power density-ratio weight;
                                // off by default, biases the estimate downward
  double rel_tolerance = 0.05;  // relative floor for the pass rule

  void validate() const;
};

struct VerificationReport {
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  bool pass = false;
  double tolerance = 0.0;           // absolute floor used in the pass rule
  std::optional<double> reference;  // second closed-form oracle, when one exists
  std::string note;
};

/// Monte Carlo estimate of D_lambda(N(mu_a, C) || N(mu_b, C)) from the
/// definition: sample x ~ N(mu_b, C), average the lambda-power density
/// ratio with log-sum-exp stabilization. Passes when the estimate is within
/// max(3 std errors, rel_tolerance * |analytic|) of the closed form.
VerificationReport mc_renyi_divergence(const Eigen::VectorXd& mu_a, const Eigen::VectorXd& mu_b,
                                       const Eigen::MatrixXd& cov_shared, const McConfig& config);

/// Monte Carlo estimate of the full release divergence
/// D_lambda(P(Z | S = s_i) || P(Z | S = s_j)): samples the release under s_j
/// (conditional draw of U plus mechanism noise on both blocks) and evaluates
/// the exact block-Gaussian density ratio. Compared to the closed-form
/// decomposition total.
VerificationReport mc_release_divergence(const CovarianceMatrix& cov, const Partition& part,
                                         double sigma_z2, const Eigen::VectorXd& s_i,
                                         const Eigen::VectorXd& s_j, const McConfig& config);

enum class OddsGapDirection { under_sj, under_si };

/// Empirical mean gap between posterior and prior log-odds of the two
/// hypotheses, which by Bayes equals the mean log release-density ratio.
/// cov_marginal is the zero-mean Gaussian marginal prior whose conditionals
/// are the class members. Passes when the mean gap is <= the analytic
/// D_lambda bound. reference carries the closed-form expected gap (a signed
/// KL divergence between the release distributions).
VerificationReport mc_odds_gap(const CovarianceMatrix& cov_marginal, const Partition& part,
                               double sigma_z2, const Eigen::VectorXd& s_i,
                               const Eigen::VectorXd& s_j, const McConfig& config,
                               OddsGapDirection direction = OddsGapDirection::under_sj);

}  // namespace cip
