#pragma once

// Sample containers, readers/writers and test-signal generators.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace rpt {

/// Finite samples at a positive sampling rate. The constructor rejects
/// NaN/Inf samples and non-positive rates.
class Signal {
 public:
  Signal(std::vector<double> samples, double fs);

  std::span<const double> samples() const noexcept { return samples_; }
  double fs() const noexcept { return fs_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

 private:
  std::vector<double> samples_;
  double fs_;
};

/// Reads one 0-based comma-separated column. Blank lines are skipped; any
/// other unparsable line fails with its 1-based line number.
Signal read_csv(const std::filesystem::path& path, std::size_t column, double fs);

/// One sample per line in shortest round-trip form.
void write_csv(const Signal& signal, const std::filesystem::path& path);

/// The two sign-extended 12-bit values packed in one 212-format frame.
struct Frame212 {
  int first = 0;
  int second = 0;
};

Frame212 decode_212_frame(std::array<std::uint8_t, 3> bytes) noexcept;

/// Raw 212 samples of one channel. With two channels the frame carries
/// channel 0 then channel 1; with one channel it carries two consecutive
/// samples.
std::vector<int> decode_212(std::span<const std::uint8_t> bytes, std::size_t channels, std::size_t select);

/// physical = (raw - baseline) / gain.
Signal read_wfdb_212(const std::filesystem::path& path, std::size_t channels, std::size_t select, double gain,
                     int baseline, double fs);

/// out[n] = in[n] + amplitude sin(2 pi f0 n / fs + phase). Requires 0 <= f0 < fs/2.
Signal add_sinusoid(const Signal& signal, double f0, double amplitude, double phase);

/// One Gaussian component of the synthetic beat. Its center sits at
/// R + rr_fraction * RR + offset_s seconds; support is truncated at 3 sigma.
struct EcgWave {
  double rr_fraction;
  double offset_s;
  double sigma_s;
  double amplitude;
};

/// Fixed P, Q, R, S, T components (millivolts, relative to the baseline).
inline constexpr std::array<EcgWave, 5> kEcgWaves{{
    {-0.16, 0.0, 0.025, 0.08},   // P
    {0.0, -0.03, 0.008, -0.07},  // Q
    {0.0, 0.0, 0.010, 0.6},      // R
    {0.0, 0.03, 0.008, -0.12},   // S
    {0.28, 0.0, 0.045, 0.18},    // T
}};
inline constexpr double kEcgBaseline = -0.3;
/// R peak position inside each beat, as a fraction of the RR interval.
inline constexpr double kEcgRPhase = 0.3;
inline constexpr double kEcgRAmplitude = kEcgWaves[2].amplitude;

/// Deterministic periodic ECG-like waveform of round(duration * fs) samples.
/// Requires duration > 0 and 20 <= heart_rate <= 240 bpm.
Signal synth_ecg(double duration_s, double fs, double heart_rate_bpm);

}  // namespace rpt
