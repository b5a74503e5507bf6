#include "rpt/ramsum.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "rpt/error.hpp"

namespace rpt {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

std::size_t euler_totient(std::size_t m) {
  require(m >= 1, "euler_totient: m must be >= 1");
  std::size_t count = 0;
  for (std::size_t k = 1; k <= m; ++k) {
    if (gcd(k, m) == 1) ++count;
  }
  return count;
}

std::vector<std::size_t> divisors(std::size_t n) {
  require(n >= 1, "divisors: n must be >= 1");
  std::vector<std::size_t> low, high;
  for (std::size_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

RamanujanSequence ramanujan_sum(std::size_t m) {
  require(m >= 1, "ramanujan_sum: m must be >= 1");
  constexpr double kResidualLimit = 1e-9;
  RamanujanSequence seq{m, std::vector<std::int64_t>(m)};
  for (std::size_t n = 0; n < m; ++n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
      if (gcd(k, m) != 1) continue;
      // Reduce k*n mod m first so the angle stays in [0, 2 pi).
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * n) % m) / static_cast<double>(m);
      re += std::cos(angle);
      im += std::sin(angle);
    }
    const double rounded = std::round(re);
    if (std::abs(re - rounded) >= kResidualLimit || std::abs(im) >= kResidualLimit) {
      fail(ErrorKind::Precision, "ramanujan_sum: rounding residual exceeds 1e-9 for m = " + std::to_string(m));
    }
    seq.values[n] = static_cast<std::int64_t>(rounded);
  }
  return seq;
}

CirculantDm circulant(std::size_t m) {
  const auto s = ramanujan_sum(m);
  CirculantDm d{m, IntMatrix(m, m)};
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < m; ++r) {
      d.entries(r, c) = s.at(static_cast<std::int64_t>(r) - static_cast<std::int64_t>(c));
    }
  }
  return d;
}

ShiftBasis shift_basis(std::size_t m, std::size_t ambient_n) {
  require(m >= 1 && ambient_n >= 1 && ambient_n % m == 0,
          "shift_basis: m = " + std::to_string(m) + " does not divide N = " + std::to_string(ambient_n));
  const auto s = ramanujan_sum(m);
  const auto width = euler_totient(m);
  ShiftBasis basis{m, ambient_n, IntMatrix(ambient_n, width)};
  for (std::size_t k = 0; k < width; ++k) {
    for (std::size_t n = 0; n < ambient_n; ++n) {
      basis.columns(n, k) = s.at(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(k));
    }
  }
  return basis;
}

bool verify_factorization(std::size_t m, double tol) {
  const auto d = circulant(m);
  std::vector<std::size_t> coprime;
  for (std::size_t k = 1; k <= m; ++k) {
    if (gcd(k, m) == 1) coprime.push_back(k);
  }
  const double md = static_cast<double>(m);
  double worst = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      std::complex<double> acc{0.0, 0.0};
      for (auto k : coprime) {
        const auto wr = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * r) % m) / md);
        const auto wc = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * c) % m) / md);
        acc += wr * std::conj(wc);
      }
      worst = std::max(worst, std::abs(acc - std::complex<double>(static_cast<double>(d.entries(r, c)), 0.0)));
    }
  }
  return worst < tol;
}

}  // namespace rpt
