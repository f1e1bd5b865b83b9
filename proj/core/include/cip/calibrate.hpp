#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "cip/gp.hpp"
#include "cip/kernel.hpp"
#include "cip/privacy.hpp"

namespace cip {

using CovarianceBuilder = std::function<CovarianceMatrix(double /*length_scale*/)>;

inline constexpr int kDefaultAuditCap = 16;

struct CalibrationResult {
  double sigma_z2 = 0.0;
  double achieved_loss = 0.0;  // L* at the returned sigma_z2, in [eps(1-1e-6), eps]
  int iterations = 0;          // bisection steps
  double l_used = 0.0;
  std::uint64_t audited_subsequences = 0;  // nonzero only in audit mode
};

/// Smallest sigma_z2 with worst_case_loss(Sigma(l_max), part, sigma_z2) <= epsilon,
/// by bracketing and bisection on the strictly decreasing loss. The bracket
/// starts at the closed-form lower bound lambda |S| r^2 / (2 epsilon).
CalibrationResult calibrate_sigma(const CovarianceBuilder& builder, const Partition& part,
                                  const PrivacyBudget& budget, double l_max);

/// Audit-mode calibration: bounds the loss of every subsequence containing
/// point_index (2^(d-1) of them).
CalibrationResult calibrate_sigma_audit(const CovarianceBuilder& builder, int point_index,
                                        const PrivacyBudget& budget, double l_max,
                                        int audit_cap = kDefaultAuditCap);

struct ClassLossScan {
  double l_worst = 0.0;
  double loss = 0.0;
  bool lmax_dominant = true;  // false when an interior grid point beat L*(l_max)
                              // by more than 1e-9 relative
  std::vector<std::pair<double, double>> grid;  // (l, L*(l)), ascending l
};

/// L* over a factor-2 geometric grid of length scales ending at l_max.
ClassLossScan max_loss_over_class(const CovarianceBuilder& builder, const Partition& part,
                                  double sigma_z2, const PrivacyBudget& budget, double l_max,
                                  int l_grid_size);

struct AuditResult {
  double max_loss = 0.0;
  Partition worst_subsequence;
  std::uint64_t audited_subsequences = 0;
};

/// Exhaustive audit of one point: enumerates all 2^(d-1) subsequences
/// containing point_index and returns the maximal worst-case loss. Ties
/// break to the lexicographically smallest index set. Refuses d > cap.
AuditResult audit_point(const CovarianceMatrix& cov, int point_index, double sigma_z2,
                        const PrivacyBudget& budget, int cap = kDefaultAuditCap);

}  // namespace cip
