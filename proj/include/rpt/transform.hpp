#pragma once

// Ramanujan periodic transform: per-length plans, analysis/synthesis,
// subspace projections and period-energy spectra.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "rpt/ramsum.hpp"

namespace rpt {

/// Coefficient index range [begin, end) owned by the space V_divisor.
struct SpaceRange {
  std::size_t divisor = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
};

/// Everything precomputed for one block length N. Immutable once built and
/// safe to share between threads.
///
/// Columns of T_N are grouped by ascending divisor m of N; group m holds the
/// phi(m) shifts of s_m in shift order. Spaces are mutually orthogonal, so
/// analysis factors into one small least-squares solve per divisor using
/// the stored (R_m^T R_m)^-1.
class TransformPlan {
 public:
  static TransformPlan build(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const std::vector<std::size_t>& divisors() const noexcept { return divisors_; }
  const std::vector<SpaceRange>& layout() const noexcept { return layout_; }
  bool has_divisor(std::size_t m) const noexcept;
  /// Throws InvalidArgument if m does not divide n.
  const SpaceRange& range_of(std::size_t m) const;

  /// Unnormalized integer T_N.
  const IntMatrix& basis() const noexcept { return basis_; }
  /// Euclidean norm of each column of T_N.
  const std::vector<double>& norm_scales() const noexcept { return norm_scales_; }
  /// Row-major phi(m) x phi(m) inverse Gram matrix of group m.
  std::span<const double> gram_inverse(std::size_t m) const;

  /// T_N as doubles, column-major.
  std::span<const double> basis_values() const noexcept { return basis_values_; }

 private:
  TransformPlan() = default;

  std::size_t n_ = 0;
  std::vector<std::size_t> divisors_;
  std::vector<SpaceRange> layout_;
  IntMatrix basis_;
  std::vector<double> basis_values_;
  std::vector<double> norm_scales_;
  std::vector<std::vector<double>> gram_inverses_;  // parallel to layout_
};

inline TransformPlan build_plan(std::size_t n) { return TransformPlan::build(n); }

/// Ramanujan coefficients beta of one block, ordered by the plan layout.
struct CoefficientVector {
  std::size_t plan_n = 0;
  std::vector<double> values;
};

/// beta = T_N^-1 x.
CoefficientVector forward(const TransformPlan& plan, std::span<const double> x);

/// x = T_N beta.
std::vector<double> inverse(const TransformPlan& plan, const CoefficientVector& beta);

/// Coefficients with respect to the column-normalized basis, norm_scales .* beta.
/// For power-of-two N the normalized basis is orthonormal and this equals
/// the transpose action of the normalized basis on x.
std::vector<double> normalized(const TransformPlan& plan, const CoefficientVector& beta);

/// Orthogonal projection of x onto V_m: R_m (R_m^T R_m)^-1 R_m^T x.
std::vector<double> project(const TransformPlan& plan, std::span<const double> x, std::size_t m);

/// Squared norm of the projection onto every V_m, keyed by divisor.
std::map<std::size_t, double> energy_spectrum(const TransformPlan& plan, std::span<const double> x);

/// Where a sinusoid of frequency f0 lands for block length n at rate fs.
struct FrequencyBinding {
  double f0 = 0.0;
  double fs = 0.0;
  std::size_t n = 0;
  std::uint64_t bin = 0;  // k0 = f0 n / fs
  std::size_t space = 0;  // n / gcd(k0, n)
};

/// Throws NotRepresentable if f0 n / fs is not an integer (within 1e-9);
/// the message names the smallest block length that would work.
FrequencyBinding space_for_frequency(double f0, double fs, std::size_t n);

/// Smallest n >= 1 for which f0 n / fs is integral, or 0 if none up to 2^20.
std::size_t minimal_block_size(double f0, double fs);

}  // namespace rpt
