#pragma once

// Number-theoretic primitives and the integer-valued Ramanujan sum bases
// every periodic subspace V_m is built from.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rpt {

/// Dense column-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  const std::vector<std::int64_t>& data() const noexcept { return data_; }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t lcm(std::uint64_t a, std::uint64_t b) noexcept;

/// Count of k in [1, m] coprime to m. Throws InvalidArgument for m = 0.
std::size_t euler_totient(std::size_t m);

/// All divisors of n in ascending order. Throws InvalidArgument for n = 0.
std::vector<std::size_t> divisors(std::size_t n);

/// One period of s_m(n).
struct RamanujanSequence {
  std::size_t m = 0;
  std::vector<std::int64_t> values;

  /// Periodic extension; accepts negative indices.
  std::int64_t at(std::int64_t n) const {
    const auto period = static_cast<std::int64_t>(m);
    auto r = n % period;
    return values[static_cast<std::size_t>(r < 0 ? r + period : r)];
  }
};

/// s_m(n) = sum over k in [1, m], gcd(k, m) = 1, of exp(j 2 pi k n / m),
/// evaluated in floating point and rounded. Throws Precision if either the
/// imaginary part or the distance to the nearest integer reaches 1e-9.
RamanujanSequence ramanujan_sum(std::size_t m);

/// m x m circulant whose first column is s_m and whose columns are
/// successive circular down-shifts: D(r, c) = s_m(r - c).
struct CirculantDm {
  std::size_t m = 0;
  IntMatrix entries;
};

CirculantDm circulant(std::size_t m);

/// N x phi(m) block R_m: column k is s_m(n - k) tiled over N samples.
struct ShiftBasis {
  std::size_t m = 0;
  std::size_t ambient_n = 0;
  IntMatrix columns;
};

/// Throws InvalidArgument unless m divides ambient_n.
ShiftBasis shift_basis(std::size_t m, std::size_t ambient_n);

/// Checks D_m = W W^H, with W the m-point DFT columns k in [1, m] coprime
/// to m. True iff the largest elementwise deviation is below tol.
bool verify_factorization(std::size_t m, double tol);

}  // namespace rpt
