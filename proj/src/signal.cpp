#include "rpt/signal.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>
#include <string_view>

#include "rpt/error.hpp"
#include "text.hpp"

namespace rpt {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int sign_extend_12(int v) noexcept { return v >= 2048 ? v - 4096 : v; }

}  // namespace

Signal::Signal(std::vector<double> samples, double fs) : samples_(std::move(samples)), fs_(fs) {
  require(std::isfinite(fs) && fs > 0.0, "sampling rate must be positive and finite");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      fail(ErrorKind::Format, "non-finite sample at index " + std::to_string(i));
    }
  }
}

Signal read_csv(const std::filesystem::path& path, std::size_t column, double fs) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());

  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = line;
    if (trim(rest).empty()) continue;
    for (std::size_t c = 0; c < column; ++c) {
      const auto comma = rest.find(',');
      if (comma == std::string_view::npos) {
        fail(ErrorKind::Format, path.string() + ":" + std::to_string(line_no) + ": missing column " +
                                    std::to_string(column));
      }
      rest.remove_prefix(comma + 1);
    }
    const auto field = trim(rest.substr(0, rest.find(',')));
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
      fail(ErrorKind::Format, path.string() + ":" + std::to_string(line_no) + ": not a finite number: '" +
                                  std::string(field) + "'");
    }
    samples.push_back(v);
  }
  if (samples.empty()) fail(ErrorKind::Format, path.string() + ": no samples");
  return Signal(std::move(samples), fs);
}

void write_csv(const Signal& signal, const std::filesystem::path& path) {
  require(!signal.empty(), "refusing to write an empty signal to " + path.string());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  for (double v : signal.samples()) out << detail::format_number(v) << '\n';
  if (!out) fail(ErrorKind::Io, "write failed: " + path.string());
}

Frame212 decode_212_frame(std::array<std::uint8_t, 3> b) noexcept {
  const int s1 = ((b[1] & 0x0F) << 8) | b[0];
  const int s2 = ((b[1] & 0xF0) << 4) | b[2];
  return {sign_extend_12(s1), sign_extend_12(s2)};
}

std::vector<int> decode_212(std::span<const std::uint8_t> bytes, std::size_t channels, std::size_t select) {
  require(channels == 1 || channels == 2, "212 format supports 1 or 2 channels");
  require(select < channels, "channel " + std::to_string(select) + " out of range for " +
                                 std::to_string(channels) + " channel(s)");
  if (bytes.size() % 3 != 0) {
    fail(ErrorKind::Format, "truncated 212 frame: " + std::to_string(bytes.size()) + " bytes is not a multiple of 3");
  }
  std::vector<int> out;
  out.reserve(channels == 1 ? bytes.size() / 3 * 2 : bytes.size() / 3);
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    const auto f = decode_212_frame({bytes[i], bytes[i + 1], bytes[i + 2]});
    if (channels == 1) {
      out.push_back(f.first);
      out.push_back(f.second);
    } else {
      out.push_back(select == 0 ? f.first : f.second);
    }
  }
  return out;
}

Signal read_wfdb_212(const std::filesystem::path& path, std::size_t channels, std::size_t select, double gain,
                     int baseline, double fs) {
  require(std::isfinite(gain) && gain > 0.0, "gain must be positive");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (bytes.empty()) fail(ErrorKind::Format, path.string() + ": empty 212 file");

  const auto raw = decode_212(bytes, channels, select);
  std::vector<double> samples(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) samples[i] = (raw[i] - baseline) / gain;
  return Signal(std::move(samples), fs);
}

Signal add_sinusoid(const Signal& signal, double f0, double amplitude, double phase) {
  const double fs = signal.fs();
  require(std::isfinite(f0) && f0 >= 0.0 && f0 < fs / 2.0,
          "contaminant frequency " + detail::format_number(f0) + " Hz must lie in [0, fs/2)");
  require(std::isfinite(amplitude) && std::isfinite(phase), "amplitude and phase must be finite");
  std::vector<double> out(signal.samples().begin(), signal.samples().end());
  if (amplitude == 0.0) return Signal(std::move(out), fs);
  const double w = 2.0 * std::numbers::pi * f0 / fs;
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += amplitude * std::sin(w * static_cast<double>(n) + phase);
  return Signal(std::move(out), fs);
}

Signal synth_ecg(double duration_s, double fs, double heart_rate_bpm) {
  require(std::isfinite(duration_s) && duration_s > 0.0, "duration must be positive");
  require(std::isfinite(fs) && fs > 0.0, "sampling rate must be positive");
  require(heart_rate_bpm >= 20.0 && heart_rate_bpm <= 240.0, "heart rate must lie in [20, 240] bpm");

  const auto count = static_cast<std::size_t>(std::llround(duration_s * fs));
  const double rr = 60.0 / heart_rate_bpm;
  std::vector<double> x(count, kEcgBaseline);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / fs;
    const auto beat = static_cast<long long>(std::floor(t / rr));
    // Waves of neighbouring beats can spill over at high heart rates.
    for (auto b = beat - 2; b <= beat + 2; ++b) {
      const double r_time = (static_cast<double>(b) + kEcgRPhase) * rr;
      for (const auto& w : kEcgWaves) {
        const double d = t - (r_time + w.rr_fraction * rr + w.offset_s);
        if (std::abs(d) > 3.0 * w.sigma_s) continue;
        const double z = d / w.sigma_s;
        x[i] += w.amplitude * std::exp(-0.5 * z * z);
      }
    }
  }
  return Signal(std::move(x), fs);
}

}  // namespace rpt
