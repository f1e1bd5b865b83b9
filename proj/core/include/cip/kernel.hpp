#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace cip {

enum class KernelFamily { rbf, custom };

/// Parameters of the conditional prior class. One spec instance pins a single
/// member via length_scale; the class ranges over l in (0, l_max].
struct KernelSpec {
  KernelFamily family = KernelFamily::rbf;
  double sigma_x2 = 1.0;
  double length_scale = 1.0;
  double l_max = 1.0;
  // Required when family == custom; must be symmetric positive definite with
  // k(t, t) == sigma_x2.
  std::function<double(double, double)> custom_kernel;

  void validate() const;
  KernelSpec with_length_scale(double l) const;
};

/// sigma_x2 * exp(-(t_i - t_j)^2 / (2 l^2)).
double rbf_kernel(double t_i, double t_j, const KernelSpec& spec);

/// Kernel value under spec, dispatching on family.
double kernel_value(double t_i, double t_j, const KernelSpec& spec);

/// d x d prior covariance over the trace timestamps. Exactly symmetric by
/// construction; diagonal entries equal sigma_x2 exactly.
class CovarianceMatrix {
 public:
  CovarianceMatrix(Eigen::MatrixXd entries, std::vector<double> timestamps, double sigma_x2);

  int dimension() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  const std::vector<double>& timestamps() const { return timestamps_; }
  double sigma_x2() const { return sigma_x2_; }

  // Throws DomainError if any eigenvalue is below -1e-8 * sigma_x2.
  void validate_psd() const;

 private:
  Eigen::MatrixXd entries_;
  std::vector<double> timestamps_;
  double sigma_x2_;
};

CovarianceMatrix build_covariance(std::span<const double> timestamps, const KernelSpec& spec);

/// sigma_x2 * identity: the prior-agnostic baseline where all points are
/// treated as independent.
CovarianceMatrix identity_covariance(int d, double sigma_x2);

}  // namespace cip
