#include "rpt/notch.hpp"

#include <cmath>
#include <numbers>

#include "rpt/error.hpp"

namespace rpt {

std::complex<double> BiquadCoeffs::response(double f) const {
  const auto z1 = std::polar(1.0, -2.0 * std::numbers::pi * f / fs);
  const auto z2 = z1 * z1;
  return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
}

BiquadCoeffs design_notch(double f0, double fs, double q) {
  require(std::isfinite(fs) && fs > 0.0, "design_notch: sampling rate must be positive");
  require(std::isfinite(f0) && f0 > 0.0 && f0 < fs / 2.0, "design_notch: notch frequency must lie in (0, fs/2)");
  require(std::isfinite(q) && q > 0.0, "design_notch: quality factor must be positive");
  const double bandwidth = f0 / q;
  require(bandwidth < fs / 2.0, "design_notch: bandwidth f0/q must be below fs/2");

  const double w0 = 2.0 * std::numbers::pi * f0 / fs;
  const double alpha = std::tan(std::numbers::pi * bandwidth / fs);
  const double norm = 1.0 + alpha;
  const double c = std::cos(w0);
  BiquadCoeffs out;
  out.b0 = 1.0 / norm;
  out.b1 = -2.0 * c / norm;
  out.b2 = 1.0 / norm;
  out.a1 = -2.0 * c / norm;
  out.a2 = (1.0 - alpha) / norm;
  out.f0 = f0;
  out.fs = fs;
  out.q = q;
  return out;
}

std::vector<double> filter_block(const BiquadCoeffs& c, std::span<const double> x) {
  std::vector<double> y(x.size());
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double v = c.b0 * x[n] + c.b1 * x1 + c.b2 * x2 - c.a1 * y1 - c.a2 * y2;
    x2 = x1;
    x1 = x[n];
    y2 = y1;
    y1 = v;
    y[n] = v;
  }
  return y;
}

std::vector<double> filter_blockwise(const BiquadCoeffs& c, std::span<const double> x, std::size_t block_size) {
  require(block_size >= 1, "block size must be >= 1");
  std::vector<double> y;
  y.reserve(x.size());
  for (std::size_t start = 0; start < x.size(); start += block_size) {
    const auto part = filter_block(c, x.subspan(start, std::min(block_size, x.size() - start)));
    y.insert(y.end(), part.begin(), part.end());
  }
  return y;
}

Signal notch_run(const Signal& signal, const BiquadCoeffs& c, std::size_t block_size) {
  require(std::abs(signal.fs() - c.fs) <= 1e-9 * c.fs, "signal sampling rate does not match notch design");
  return Signal(filter_blockwise(c, signal.samples(), block_size), signal.fs());
}

}  // namespace rpt
