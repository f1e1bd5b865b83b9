#include "cip/gp.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "cip/errors.hpp"

namespace cip {
namespace {

Eigen::MatrixXd slice(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

void require_symmetric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DomainError("matrix must be square and nonempty");
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw DomainError("matrix is not symmetric within tolerance");
  }
}

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

Partition::Partition(std::vector<int> secret_indices, int trace_size)
    : secret_(std::move(secret_indices)), trace_size_(trace_size) {
  if (trace_size_ < 2) throw DomainError("partition trace size must be >= 2");
  if (secret_.empty()) throw DomainError("secret subsequence must be nonempty");
  int prev = -1;
  for (int ix : secret_) {
    if (ix < 0 || ix >= trace_size_) throw DomainError("secret index out of range");
    if (ix <= prev) throw DomainError("secret indices must be strictly increasing");
    prev = ix;
  }
  remainder_.reserve(trace_size_ - static_cast<int>(secret_.size()));
  std::size_t k = 0;
  for (int i = 0; i < trace_size_; ++i) {
    if (k < secret_.size() && secret_[k] == i) {
      ++k;
    } else {
      remainder_.push_back(i);
    }
  }
}

Partition Partition::every_other(int trace_size) {
  std::vector<int> s;
  for (int i = 0; i < trace_size; i += 2) s.push_back(i);
  return Partition(std::move(s), trace_size);
}

Partition Partition::first_half(int trace_size) {
  std::vector<int> s(std::max(1, trace_size / 2));
  std::iota(s.begin(), s.end(), 0);
  return Partition(std::move(s), trace_size);
}

Eigen::LLT<Eigen::MatrixXd> llt_with_jitter(const Eigen::MatrixXd& m, double scale) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) return llt;
  for (int e = -12; e <= -6; ++e) {
    Eigen::MatrixXd jittered = m;
    jittered.diagonal().array() += std::pow(10.0, e) * scale;
    llt.compute(jittered);
    if (llt.info() == Eigen::Success) return llt;
  }
  throw SingularityError(
      "Cholesky factorization failed at maximum jitter 1e-6; block is numerically singular");
}

ConditionalGaussian condition(const CovarianceMatrix& cov, const Partition& part) {
  if (part.trace_size() != cov.dimension()) {
    throw DomainError("partition size does not match covariance dimension");
  }
  if (part.remainder_size() == 0) {
    throw DomainError("conditioning requires a nonempty remainder U");
  }
  const auto& s_idx = part.secret_indices();
  const auto& u_idx = part.remainder_indices();
  const Eigen::MatrixXd sigma_ss = slice(cov.matrix(), s_idx, s_idx);
  const Eigen::MatrixXd sigma_us = slice(cov.matrix(), u_idx, s_idx);
  const Eigen::MatrixXd sigma_uu = slice(cov.matrix(), u_idx, u_idx);

  const auto llt = llt_with_jitter(sigma_ss, cov.sigma_x2());
  // A = Sigma_us Sigma_ss^-1, via Sigma_ss X = Sigma_su.
  Eigen::MatrixXd mean_map = llt.solve(sigma_us.transpose()).transpose();
  Eigen::MatrixXd cond_cov = sigma_uu - mean_map * sigma_us.transpose();
  cond_cov = (0.5 * (cond_cov + cond_cov.transpose())).eval();
  return {std::move(mean_map), std::move(cond_cov)};
}

EffectiveCovariance effective_covariance(const CovarianceMatrix& cov, const Partition& part,
                                         double sigma_z2) {
  if (!std::isfinite(sigma_z2) || !(sigma_z2 > 0.0)) {
    throw DomainError("sigma_z2 must be finite and > 0");
  }
  if (part.trace_size() != cov.dimension()) {
    throw DomainError("partition size does not match covariance dimension");
  }
  const int ns = part.secret_size();
  EffectiveCovariance eff;
  eff.sigma_z2 = sigma_z2;
  if (part.remainder_size() == 0) {
    // No unreleased points: the correlation term vanishes.
    eff.sigma_eff = Eigen::MatrixXd::Zero(ns, ns);
    eff.alpha_star = 0.0;
    eff.v_star = Eigen::VectorXd::Zero(ns);
    eff.v_star[0] = 1.0;
    return eff;
  }
  const ConditionalGaussian cond = condition(cov, part);
  Eigen::MatrixXd noisy = cond.cond_cov;
  noisy.diagonal().array() += sigma_z2;
  const auto llt = llt_with_jitter(noisy, cov.sigma_x2());
  Eigen::MatrixXd sigma_eff = cond.mean_map.transpose() * llt.solve(cond.mean_map);
  sigma_eff = (0.5 * (sigma_eff + sigma_eff.transpose())).eval();
  auto [alpha, v] = top_eigenpair(sigma_eff);
  eff.sigma_eff = std::move(sigma_eff);
  eff.alpha_star = std::max(alpha, 0.0);
  eff.v_star = std::move(v);
  return eff;
}

std::pair<double, Eigen::VectorXd> top_eigenpair(const Eigen::MatrixXd& m) {
  require_symmetric(m, 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver did not converge");
  }
  const Eigen::Index last = m.rows() - 1;
  Eigen::VectorXd v = es.eigenvectors().col(last);
  fix_sign(v);
  return {es.eigenvalues()(last), std::move(v)};
}

std::pair<double, Eigen::VectorXd> power_iteration_top(const Eigen::MatrixXd& m, int max_iters,
                                                       double tol) {
  require_symmetric(m, 1e-10);
  const Eigen::Index n = m.rows();
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i);
  v.normalize();
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd w = m * v;
    const double norm = w.norm();
    if (norm == 0.0) {
      fix_sign(v);
      return {0.0, std::move(v)};  // zero matrix: any unit vector
    }
    w /= norm;
    const double alpha = w.dot(m * w);
    if ((m * w - alpha * w).norm() <= tol * std::max(std::abs(alpha), 1.0)) {
      fix_sign(w);
      return {alpha, std::move(w)};
    }
    v = std::move(w);
  }
  throw ConvergenceError("power iteration exceeded its iteration cap");
}

}  // namespace cip
