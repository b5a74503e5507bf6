#pragma once

// Second-order IIR notch used as the reference method.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rpt/signal.hpp"

namespace rpt {

/// y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2] - a1 y[n-1] - a2 y[n-2].
struct BiquadCoeffs {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double f0 = 0.0;
  double fs = 0.0;
  double q = 0.0;

  /// H(e^{j 2 pi f / fs}).
  std::complex<double> response(double f) const;
};

/// Notch at f0 with -3 dB width f0 / q. Uses the prewarped bandwidth
/// parameter alpha = tan(pi f0 / (q fs)), so the digital -3 dB band edges are
/// exactly f0 / q apart; b = [1, -2 cos w0, 1] / (1 + alpha),
/// a = [1, -2 cos w0 / (1 + alpha), (1 - alpha) / (1 + alpha)].
/// Requires 0 < f0 < fs/2, q > 0 and f0 / q < fs / 2.
BiquadCoeffs design_notch(double f0, double fs, double q);

/// Zero initial state; output has the input's length.
std::vector<double> filter_block(const BiquadCoeffs& c, std::span<const double> x);

/// Filters consecutive blocks independently, resetting the state at every
/// block boundary. A trailing partial block is filtered as is.
std::vector<double> filter_blockwise(const BiquadCoeffs& c, std::span<const double> x, std::size_t block_size);

/// filter_blockwise over a whole signal.
Signal notch_run(const Signal& signal, const BiquadCoeffs& c, std::size_t block_size);

}  // namespace rpt
