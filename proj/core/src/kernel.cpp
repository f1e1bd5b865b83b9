#include "cip/kernel.hpp"

#include <cmath>
#include <utility>

#include "cip/errors.hpp"

namespace cip {
namespace {

void require_finite_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(name) + " must be finite and > 0");
  }
}

double rbf_raw(double t_i, double t_j, double sigma_x2, double length_scale) {
  const double dt = t_i - t_j;
  return sigma_x2 * std::exp(-(dt * dt) / (2.0 * length_scale * length_scale));
}

}  // namespace

void KernelSpec::validate() const {
  require_finite_positive(sigma_x2, "sigma_x2");
  require_finite_positive(length_scale, "length_scale");
  if (!std::isfinite(l_max) || !(l_max >= length_scale)) {
    throw DomainError("l_max must be finite and >= length_scale");
  }
  if (family == KernelFamily::custom && !custom_kernel) {
    throw DomainError("custom kernel family requires a kernel function");
  }
}

KernelSpec KernelSpec::with_length_scale(double l) const {
  KernelSpec out = *this;
  out.length_scale = l;
  if (out.l_max < l) out.l_max = l;
  out.validate();
  return out;
}

double rbf_kernel(double t_i, double t_j, const KernelSpec& spec) {
  spec.validate();
  return rbf_raw(t_i, t_j, spec.sigma_x2, spec.length_scale);
}

double kernel_value(double t_i, double t_j, const KernelSpec& spec) {
  spec.validate();
  if (spec.family == KernelFamily::custom) return spec.custom_kernel(t_i, t_j);
  return rbf_raw(t_i, t_j, spec.sigma_x2, spec.length_scale);
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries, std::vector<double> timestamps,
                                   double sigma_x2)
    : entries_(std::move(entries)), timestamps_(std::move(timestamps)), sigma_x2_(sigma_x2) {
  require_finite_positive(sigma_x2_, "sigma_x2");
  if (entries_.rows() != entries_.cols() || entries_.rows() < 2) {
    throw DomainError("covariance matrix must be square with dimension >= 2");
  }
  if (static_cast<int>(timestamps_.size()) != entries_.rows()) {
    throw DomainError("covariance timestamps must match matrix dimension");
  }
  if (!entries_.allFinite()) throw DomainError("covariance entries must be finite");
  for (int i = 0; i < entries_.rows(); ++i) {
    if (entries_(i, i) != sigma_x2_) {
      throw DomainError("covariance diagonal must equal sigma_x2 exactly");
    }
    for (int j = i + 1; j < entries_.cols(); ++j) {
      if (entries_(i, j) != entries_(j, i)) {
        throw DomainError("covariance matrix must be exactly symmetric");
      }
    }
  }
}

void CovarianceMatrix::validate_psd() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver failed while validating covariance");
  }
  if (es.eigenvalues().minCoeff() < -1e-8 * sigma_x2_) {
    throw DomainError("covariance matrix is not positive semi-definite");
  }
}

CovarianceMatrix build_covariance(std::span<const double> timestamps, const KernelSpec& spec) {
  spec.validate();
  const int d = static_cast<int>(timestamps.size());
  if (d < 2) throw DomainError("need at least two timestamps");
  for (int i = 0; i < d; ++i) {
    if (!std::isfinite(timestamps[i])) throw DomainError("timestamps must be finite");
    if (i > 0 && !(timestamps[i] > timestamps[i - 1])) {
      throw DomainError("timestamps must be strictly increasing");
    }
  }
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    if (spec.family == KernelFamily::custom) {
      const double k0 = spec.custom_kernel(timestamps[i], timestamps[i]);
      if (std::abs(k0 - spec.sigma_x2) > 1e-12 * spec.sigma_x2) {
        throw DomainError("custom kernel variance at zero lag must equal sigma_x2");
      }
    }
    m(i, i) = spec.sigma_x2;
    for (int j = i + 1; j < d; ++j) {
      const double k = spec.family == KernelFamily::custom
                           ? spec.custom_kernel(timestamps[i], timestamps[j])
                           : rbf_raw(timestamps[i], timestamps[j], spec.sigma_x2,
                                     spec.length_scale);
      if (!std::isfinite(k)) throw DomainError("kernel produced a non-finite value");
      m(i, j) = k;
      m(j, i) = k;
    }
  }
  return CovarianceMatrix(std::move(m), std::vector<double>(timestamps.begin(), timestamps.end()),
                          spec.sigma_x2);
}

CovarianceMatrix identity_covariance(int d, double sigma_x2) {
  if (d < 2) throw DomainError("need dimension >= 2");
  require_finite_positive(sigma_x2, "sigma_x2");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  m.diagonal().setConstant(sigma_x2);
  std::vector<double> ts(d);
  for (int i = 0; i < d; ++i) ts[i] = static_cast<double>(i);
  return CovarianceMatrix(std::move(m), std::move(ts), sigma_x2);
}

}  // namespace cip
