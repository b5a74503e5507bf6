#include "rpt/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rpt/error.hpp"
#include "text.hpp"

namespace rpt {
namespace {

// Inverts a symmetric positive definite p x p matrix (row-major) through its
// Cholesky factor. A pivot below 1e-9 of its diagonal entry means the shifts
// are not linearly independent.
std::vector<double> spd_inverse(std::vector<double> g, std::size_t p) {
  constexpr double kRelativePivot = 1e-9;
  std::vector<double> l(p * p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double d = g[j * p + j];
    for (std::size_t k = 0; k < j; ++k) d -= l[j * p + k] * l[j * p + k];
    if (!(d > kRelativePivot * g[j * p + j])) {
      fail(ErrorKind::Internal, "singular Gram matrix while building transform plan");
    }
    const double ljj = std::sqrt(d);
    l[j * p + j] = ljj;
    for (std::size_t i = j + 1; i < p; ++i) {
      double v = g[i * p + j];
      for (std::size_t k = 0; k < j; ++k) v -= l[i * p + k] * l[j * p + k];
      l[i * p + j] = v / ljj;
    }
  }

  std::vector<double> inv(p * p, 0.0);
  std::vector<double> col(p);
  for (std::size_t e = 0; e < p; ++e) {
    // L y = e_e, then L^T z = y.
    for (std::size_t i = 0; i < p; ++i) {
      double v = (i == e) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) v -= l[i * p + k] * col[k];
      col[i] = v / l[i * p + i];
    }
    for (std::size_t ii = p; ii-- > 0;) {
      double v = col[ii];
      for (std::size_t k = ii + 1; k < p; ++k) v -= l[k * p + ii] * col[k];
      col[ii] = v / l[ii * p + ii];
    }
    for (std::size_t i = 0; i < p; ++i) inv[i * p + e] = col[i];
  }
  return inv;
}

void check_length(const TransformPlan& plan, std::size_t len, const char* op) {
  require(len == plan.n(), std::string(op) + ": expected " + std::to_string(plan.n()) + " samples, got " +
                               std::to_string(len));
}

// beta restricted to one group: Ginv * R^T x.
void solve_group(const TransformPlan& plan, const SpaceRange& range, std::span<const double> gram_inv,
                 std::span<const double> x, std::span<double> out) {
  const auto n = plan.n();
  const auto p = range.size();
  const auto values = plan.basis_values();
  std::vector<double> rhs(p);
  for (std::size_t j = 0; j < p; ++j) {
    const double* column = values.data() + (range.begin + j) * n;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += column[i] * x[i];
    rhs[j] = acc;
  }
  for (std::size_t i = 0; i < p; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p; ++j) acc += gram_inv[i * p + j] * rhs[j];
    out[i] = acc;
  }
}

}  // namespace

TransformPlan TransformPlan::build(std::size_t n) {
  require(n >= 1, "build_plan: block length must be >= 1");
  TransformPlan plan;
  plan.n_ = n;
  plan.divisors_ = rpt::divisors(n);
  plan.basis_ = IntMatrix(n, n);

  std::size_t offset = 0;
  for (auto m : plan.divisors_) {
    const auto block = shift_basis(m, n);
    const auto p = block.columns.cols();
    plan.layout_.push_back({m, offset, offset + p});

    std::vector<double> gram(p * p);
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = 0; b < p; ++b) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += block.columns(i, a) * block.columns(i, b);
        gram[a * p + b] = static_cast<double>(acc);
      }
    }
    plan.gram_inverses_.push_back(spd_inverse(std::move(gram), p));

    for (std::size_t k = 0; k < p; ++k) {
      for (std::size_t i = 0; i < n; ++i) plan.basis_(i, offset + k) = block.columns(i, k);
    }
    offset += p;
  }
  if (offset != n) fail(ErrorKind::Internal, "build_plan: totient sum over divisors differs from N");

  plan.basis_values_.assign(plan.basis_.data().begin(), plan.basis_.data().end());
  plan.norm_scales_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::int64_t sq = 0;
    for (std::size_t r = 0; r < n; ++r) sq += plan.basis_(r, c) * plan.basis_(r, c);
    plan.norm_scales_[c] = std::sqrt(static_cast<double>(sq));
  }
  return plan;
}

bool TransformPlan::has_divisor(std::size_t m) const noexcept {
  return std::binary_search(divisors_.begin(), divisors_.end(), m);
}

const SpaceRange& TransformPlan::range_of(std::size_t m) const {
  for (const auto& r : layout_) {
    if (r.divisor == m) return r;
  }
  fail(ErrorKind::InvalidArgument, std::to_string(m) + " is not a divisor of block length " + std::to_string(n_));
}

std::span<const double> TransformPlan::gram_inverse(std::size_t m) const {
  const auto& r = range_of(m);
  const auto idx = static_cast<std::size_t>(&r - layout_.data());
  return gram_inverses_[idx];
}

CoefficientVector forward(const TransformPlan& plan, std::span<const double> x) {
  check_length(plan, x.size(), "forward");
  CoefficientVector beta{plan.n(), std::vector<double>(plan.n())};
  for (const auto& range : plan.layout()) {
    solve_group(plan, range, plan.gram_inverse(range.divisor), x,
                std::span<double>(beta.values).subspan(range.begin, range.size()));
  }
  return beta;
}

std::vector<double> inverse(const TransformPlan& plan, const CoefficientVector& beta) {
  require(beta.plan_n == plan.n() && beta.values.size() == plan.n(),
          "inverse: coefficient vector does not match plan length " + std::to_string(plan.n()));
  const auto n = plan.n();
  const auto values = plan.basis_values();
  std::vector<double> x(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    const double b = beta.values[c];
    if (b == 0.0) continue;
    const double* column = values.data() + c * n;
    for (std::size_t i = 0; i < n; ++i) x[i] += column[i] * b;
  }
  return x;
}

std::vector<double> normalized(const TransformPlan& plan, const CoefficientVector& beta) {
  require(beta.plan_n == plan.n() && beta.values.size() == plan.n(),
          "normalized: coefficient vector does not match plan length");
  std::vector<double> out(beta.values.size());
  const auto& scales = plan.norm_scales();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scales[i] * beta.values[i];
  return out;
}

std::vector<double> project(const TransformPlan& plan, std::span<const double> x, std::size_t m) {
  check_length(plan, x.size(), "project");
  const auto& range = plan.range_of(m);
  std::vector<double> coeffs(range.size());
  solve_group(plan, range, plan.gram_inverse(m), x, coeffs);

  const auto n = plan.n();
  const auto values = plan.basis_values();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < range.size(); ++j) {
    const double* column = values.data() + (range.begin + j) * n;
    for (std::size_t i = 0; i < n; ++i) out[i] += column[i] * coeffs[j];
  }
  return out;
}

std::map<std::size_t, double> energy_spectrum(const TransformPlan& plan, std::span<const double> x) {
  check_length(plan, x.size(), "energy_spectrum");
  std::map<std::size_t, double> spectrum;
  for (auto m : plan.divisors()) {
    const auto p = project(plan, x, m);
    double e = 0.0;
    for (double v : p) e += v * v;
    spectrum[m] = e;
  }
  return spectrum;
}

std::size_t minimal_block_size(double f0, double fs) {
  constexpr std::size_t kLimit = std::size_t{1} << 20;
  for (std::size_t n = 1; n <= kLimit; ++n) {
    const double k = f0 * static_cast<double>(n) / fs;
    if (std::abs(k - std::round(k)) < 1e-9) return n;
  }
  return 0;
}

FrequencyBinding space_for_frequency(double f0, double fs, std::size_t n) {
  require(std::isfinite(fs) && fs > 0.0, "sampling rate must be positive");
  require(std::isfinite(f0) && f0 >= 0.0 && (f0 == 0.0 || f0 < fs / 2.0),
          "frequency " + detail::format_number(f0) + " Hz must lie in [0, fs/2)");
  require(n >= 1, "block length must be >= 1");
  const double k = f0 * static_cast<double>(n) / fs;
  const double kr = std::round(k);
  if (std::abs(k - kr) >= 1e-9) {
    const auto minimal = minimal_block_size(f0, fs);
    std::string hint = minimal == 0 ? "no block length up to 2^20 is admissible"
                                    : "admissible block sizes are multiples of " + std::to_string(minimal);
    fail(ErrorKind::NotRepresentable, "frequency " + detail::format_number(f0) + " Hz is not representable at block size " +
                                          std::to_string(n) + " (fs " + detail::format_number(fs) + " Hz); " + hint);
  }
  const auto bin = static_cast<std::uint64_t>(kr);
  const auto space = static_cast<std::size_t>(n / gcd(bin, n));
  return {f0, fs, n, bin, space};
}

}  // namespace rpt
