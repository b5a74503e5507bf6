#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rpt {

/// ceil(length / block).
constexpr std::size_t block_count(std::size_t length, std::size_t block) noexcept {
  return block == 0 ? 0 : (length + block - 1) / block;
}

/// Copy of x zero-padded up to a whole number of blocks.
inline std::vector<double> pad_to_blocks(std::span<const double> x, std::size_t block) {
  std::vector<double> out(block_count(x.size(), block) * block, 0.0);
  std::copy(x.begin(), x.end(), out.begin());
  return out;
}

}  // namespace rpt
