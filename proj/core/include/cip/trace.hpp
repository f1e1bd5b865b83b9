#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cip {

struct TracePoint {
  double t = 0.0;
  double x = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Ordered 1-D location trace. Validated on construction: at least two
/// points, strictly increasing timestamps, all values finite.
class Trace {
 public:
  explicit Trace(std::vector<TracePoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<TracePoint>& points() const noexcept { return points_; }
  const TracePoint& operator[](std::size_t i) const { return points_[i]; }

  std::vector<double> timestamps() const;
  std::vector<double> values() const;

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<TracePoint> points_;
};

enum class TraceFormat { csv, json };

struct MechanismMetadata {
  double sigma_z2 = 0.0;
  std::uint64_t seed = 0;
  std::string rng;
  std::optional<double> epsilon;
  std::optional<double> radius;
  std::optional<double> lambda;

  friend bool operator==(const MechanismMetadata&, const MechanismMetadata&) = default;
};

/// Output of the additive Gaussian mechanism: same timestamps as the source
/// trace, obfuscated values z, plus a record of how the noise was produced.
struct SanitizedTrace {
  std::vector<TracePoint> points;  // (t, z)
  MechanismMetadata meta;

  friend bool operator==(const SanitizedTrace&, const SanitizedTrace&) = default;
};

TraceFormat parse_format(std::string_view name);
TraceFormat format_from_path(const std::filesystem::path& path);

Trace read_trace(const std::filesystem::path& path, TraceFormat format);
void write_trace(const Trace& trace, const std::filesystem::path& path, TraceFormat format);

SanitizedTrace read_sanitized(const std::filesystem::path& path, TraceFormat format);
void write_sanitized(const SanitizedTrace& trace, const std::filesystem::path& path,
                     TraceFormat format);

// 17 significant decimal digits: enough to round-trip any double exactly.
// Used by all CSV output.
std::string format_full_precision(double value);

}  // namespace cip
