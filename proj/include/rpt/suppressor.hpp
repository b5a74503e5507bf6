#pragma once

// Narrowband interference suppression by zeroing the Ramanujan coefficients
// of the spaces that carry the interference.

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "rpt/signal.hpp"
#include "rpt/transform.hpp"

namespace rpt {

/// 0/1 gains over coefficient indices; zero exactly on the layout ranges of
/// zeroed_spaces.
struct WindowMask {
  std::size_t plan_n = 0;
  std::vector<double> gains;
  std::set<std::size_t> zeroed_spaces;
};

/// Throws InvalidArgument if any target is not a divisor of plan.n().
WindowMask make_mask(const TransformPlan& plan, const std::set<std::size_t>& targets);

/// inverse(forward(x) .* gains).
std::vector<double> suppress_block(const TransformPlan& plan, const WindowMask& mask, std::span<const double> x);

struct SuppressionConfig {
  std::size_t block_size = 36;
  std::vector<double> interference_freqs{50.0};
  double fs = 360.0;
  /// Threads used for block processing; the result does not depend on it.
  unsigned workers = 1;
};

/// Spaces carrying the configured frequencies. Throws NotRepresentable
/// naming the admissible block sizes if a frequency misses every bin.
std::set<std::size_t> target_spaces(const SuppressionConfig& config);

/// Suppresses every block of an already padded buffer (size a multiple of plan.n()).
std::vector<double> suppress_padded(const TransformPlan& plan, const WindowMask& mask, std::span<const double> padded,
                                    unsigned workers = 1);

/// Non-overlapping blocks, final block zero-padded, output trimmed to the
/// input length.
Signal run(const Signal& signal, const SuppressionConfig& config);

}  // namespace rpt
