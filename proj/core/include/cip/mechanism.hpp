#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cip/trace.hpp"

namespace cip {

// Generator identifier recorded in SanitizedTrace metadata.
inline constexpr std::string_view kNoiseGenerator = "splitmix64/mt19937_64/polar-gaussian/v1";

struct MechanismSpec {
  double sigma_z2 = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// z_i = x_i + g_i with g_i iid N(0, sigma_z2). Pure function of
/// (trace, spec): identical inputs give byte-identical output.
SanitizedTrace sanitize(const Trace& trace, const MechanismSpec& spec);

/// n iid N(0, sigma_z2) draws. Distinct stream_ids yield independent
/// streams under one seed.
std::vector<double> sample_noise_vector(std::size_t n, const MechanismSpec& spec,
                                        std::uint64_t stream_id);

}  // namespace cip
