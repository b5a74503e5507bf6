#include "rpt/suppressor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "rpt/blocks.hpp"
#include "rpt/error.hpp"

namespace rpt {

WindowMask make_mask(const TransformPlan& plan, const std::set<std::size_t>& targets) {
  WindowMask mask{plan.n(), std::vector<double>(plan.n(), 1.0), targets};
  for (auto m : targets) {
    const auto& range = plan.range_of(m);
    std::fill(mask.gains.begin() + static_cast<std::ptrdiff_t>(range.begin),
              mask.gains.begin() + static_cast<std::ptrdiff_t>(range.end), 0.0);
  }
  return mask;
}

std::vector<double> suppress_block(const TransformPlan& plan, const WindowMask& mask, std::span<const double> x) {
  require(mask.plan_n == plan.n() && mask.gains.size() == plan.n(), "suppress_block: mask does not match plan");
  require(x.size() == plan.n(), "suppress_block: expected " + std::to_string(plan.n()) + " samples, got " +
                                    std::to_string(x.size()));
  auto beta = forward(plan, x);
  for (std::size_t i = 0; i < beta.values.size(); ++i) beta.values[i] *= mask.gains[i];
  return inverse(plan, beta);
}

std::set<std::size_t> target_spaces(const SuppressionConfig& config) {
  require(config.block_size >= 1, "block size must be >= 1");
  std::set<std::size_t> spaces;
  for (double f : config.interference_freqs) {
    spaces.insert(space_for_frequency(f, config.fs, config.block_size).space);
  }
  return spaces;
}

std::vector<double> suppress_padded(const TransformPlan& plan, const WindowMask& mask, std::span<const double> padded,
                                    unsigned workers) {
  const auto n = plan.n();
  require(padded.size() % n == 0, "suppress_padded: buffer is not a whole number of blocks");
  const auto blocks = padded.size() / n;
  std::vector<double> out(padded.size());

  auto work = [&](std::size_t first, std::size_t last) {
    for (std::size_t b = first; b < last; ++b) {
      const auto y = suppress_block(plan, mask, padded.subspan(b * n, n));
      std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(b * n));
    }
  };

  const auto threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(blocks, 1));
  if (threads == 1) {
    work(0, blocks);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const auto per = (blocks + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const auto first = t * per;
      const auto last = std::min(blocks, first + per);
      if (first < last) pool.emplace_back(work, first, last);
    }
  }  // joined here, before out is returned
  return out;
}

Signal run(const Signal& signal, const SuppressionConfig& config) {
  require(!signal.empty(), "cannot suppress an empty signal");
  require(std::abs(signal.fs() - config.fs) <= 1e-9 * config.fs, "signal sampling rate does not match configuration");
  const auto plan = build_plan(config.block_size);
  const auto mask = make_mask(plan, target_spaces(config));
  const auto padded = pad_to_blocks(signal.samples(), config.block_size);
  auto out = suppress_padded(plan, mask, padded, config.workers);
  out.resize(signal.size());
  return Signal(std::move(out), signal.fs());
}

}  // namespace rpt
