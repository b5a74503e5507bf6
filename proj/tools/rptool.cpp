// rptool: command-line front end over the C API.
//
// Exit codes: 0 success, 1 usage error, 2 data/format/I-O error,
// 3 configuration error (frequency not representable at the block size).

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpt/rpt.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitConfig = 3;

struct SignalDeleter {
  void operator()(rpt_signal* s) const { rpt_signal_destroy(s); }
};
struct PlanDeleter {
  void operator()(rpt_plan* p) const { rpt_plan_destroy(p); }
};
struct ReportDeleter {
  void operator()(rpt_report_set* r) const { rpt_report_set_destroy(r); }
};
using SignalPtr = std::unique_ptr<rpt_signal, SignalDeleter>;
using PlanPtr = std::unique_ptr<rpt_plan, PlanDeleter>;
using ReportPtr = std::unique_ptr<rpt_report_set, ReportDeleter>;

// Carries the exit code out of a subcommand.
struct Failure {
  int code;
};

int exit_code_for(rpt_status st) {
  switch (st) {
    case RPT_OK: return 0;
    case RPT_ERR_INVALID_ARGUMENT:
    case RPT_ERR_BUFFER_TOO_SMALL: return kExitUsage;
    case RPT_ERR_NOT_REPRESENTABLE: return kExitConfig;
    default: return kExitData;
  }
}

void check(rpt_status st) {
  if (st == RPT_OK) return;
  std::cerr << "rptool: " << rpt_status_string(st) << ": " << rpt_last_error() << '\n';
  throw Failure{exit_code_for(st)};
}

[[noreturn]] void usage_error(const std::string& flag, const std::string& why) {
  std::cerr << "rptool: invalid " << flag << ": " << why << '\n';
  throw Failure{kExitUsage};
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Input selection shared by every subcommand that reads a signal.
struct InputOptions {
  std::string path;
  std::string format = "csv";
  std::size_t column = 0;
  std::size_t channels = 2;
  std::size_t channel = 0;
  double gain = 200.0;
  int baseline = 1024;

  void add_to(CLI::App* app, const std::string& flag = "--input", const std::string& what = "input signal") {
    app->add_option(flag, path, what)->required();
    app->add_option("--format", format, "input format: csv or wfdb212")
        ->check(CLI::IsMember({"csv", "wfdb212"}))
        ->capture_default_str();
    app->add_option("--column", column, "0-based CSV column")->capture_default_str();
    app->add_option("--channels", channels, "channels interleaved in a 212 file (1 or 2)")->capture_default_str();
    app->add_option("--channel", channel, "0-based channel to read from a 212 file")->capture_default_str();
    app->add_option("--gain", gain, "212 ADC gain (units per physical unit)")->capture_default_str();
    app->add_option("--baseline", baseline, "212 ADC baseline")->capture_default_str();
  }

  void validate() const {
    if (format == "wfdb212") {
      if (channels != 1 && channels != 2) usage_error("--channels", "must be 1 or 2");
      if (channel >= channels) usage_error("--channel", "must be below --channels");
      if (!(gain > 0.0) || !std::isfinite(gain)) usage_error("--gain", "must be positive");
    }
  }

  SignalPtr read(const std::string& file, double fs) const {
    rpt_signal* s = nullptr;
    if (format == "wfdb212") {
      check(rpt_signal_read_wfdb212(file.c_str(), channels, channel, gain, baseline, fs, &s));
    } else {
      check(rpt_signal_read_csv(file.c_str(), column, fs, &s));
    }
    return SignalPtr(s);
  }

  SignalPtr read(double fs) const { return read(path, fs); }
};

void require_positive(double v, const char* flag) {
  if (!std::isfinite(v) || !(v > 0.0)) usage_error(flag, "must be a positive number");
}

void require_nyquist(double f0, double fs, const char* flag) {
  if (!std::isfinite(f0) || f0 < 0.0 || f0 >= fs / 2.0) usage_error(flag, "must lie in [0, fs/2)");
}

// Confirms every frequency lands on a bin of the block before touching data.
void check_representable(const std::vector<double>& freqs, double fs, std::size_t block) {
  for (double f : freqs) check(rpt_space_for_frequency(f, fs, block, nullptr, nullptr));
}

void write_signal(const rpt_signal* s, const std::string& path) { check(rpt_signal_write_csv(s, path.c_str())); }

// ---- synth --------------------------------------------------------------

struct SynthOptions {
  double duration = 10.0;
  double fs = 360.0;
  double heart_rate = 72.0;
  std::string output;
};

void run_synth(const SynthOptions& o) {
  require_positive(o.duration, "--duration");
  require_positive(o.fs, "--fs");
  if (!(o.heart_rate >= 20.0 && o.heart_rate <= 240.0)) usage_error("--heart-rate", "must lie in [20, 240]");
  rpt_signal* s = nullptr;
  check(rpt_signal_synth_ecg(o.duration, o.fs, o.heart_rate, &s));
  SignalPtr sig(s);
  write_signal(sig.get(), o.output);
}

// ---- contaminate ----------------------------------------------------------

struct ContaminateOptions {
  InputOptions input;
  double fs = 360.0;
  double f0 = 50.0;
  double amplitude = 0.5;
  double phase = 0.0;
  std::string output;
};

void run_contaminate(const ContaminateOptions& o) {
  o.input.validate();
  require_positive(o.fs, "--fs");
  require_nyquist(o.f0, o.fs, "--f0");
  if (!std::isfinite(o.amplitude)) usage_error("--amplitude", "must be finite");
  if (!std::isfinite(o.phase)) usage_error("--phase", "must be finite");
  auto in = o.input.read(o.fs);
  rpt_signal* s = nullptr;
  check(rpt_signal_add_sinusoid(in.get(), o.f0, o.amplitude, o.phase, &s));
  SignalPtr out(s);
  write_signal(out.get(), o.output);
}

// ---- spectrum -------------------------------------------------------------

struct SpectrumOptions {
  InputOptions input;
  double fs = 360.0;
  std::size_t block_size = 36;
  std::size_t block_index = 0;
};

void run_spectrum(const SpectrumOptions& o) {
  o.input.validate();
  require_positive(o.fs, "--fs");
  if (o.block_size == 0) usage_error("--block-size", "must be >= 1");
  auto sig = o.input.read(o.fs);
  const auto len = rpt_signal_length(sig.get());
  const auto blocks = (len + o.block_size - 1) / o.block_size;
  if (o.block_index >= blocks) {
    usage_error("--block-index", "signal has only " + std::to_string(blocks) + " block(s)");
  }

  std::vector<double> block(o.block_size, 0.0);
  const double* data = rpt_signal_data(sig.get());
  const auto start = o.block_index * o.block_size;
  for (std::size_t i = 0; i < o.block_size && start + i < len; ++i) block[i] = data[start + i];

  rpt_plan* p = nullptr;
  check(rpt_plan_create(o.block_size, &p));
  PlanPtr plan(p);
  const auto spaces = rpt_plan_space_count(plan.get());
  std::vector<double> energy(spaces);
  check(rpt_energy_spectrum(plan.get(), block.data(), block.size(), energy.data(), energy.size()));
  double total = 0.0;
  for (double e : energy) total += e;

  std::cout << "divisor,energy,fraction\n";
  for (std::size_t i = 0; i < spaces; ++i) {
    std::size_t divisor = 0;
    check(rpt_plan_space(plan.get(), i, &divisor, nullptr, nullptr));
    const double fraction = total > 0.0 ? energy[i] / total : 0.0;
    std::cout << divisor << ',' << format_number(energy[i]) << ',' << format_number(fraction) << '\n';
  }
}

// ---- denoise --------------------------------------------------------------

struct DenoiseOptions {
  InputOptions input;
  std::string method;
  double fs = 360.0;
  std::size_t block_size = 36;
  std::vector<double> f0{50.0};
  double q = 1.0;
  unsigned workers = 1;
  std::string output;
  std::string plot;
  std::string clean;
};

void write_plot(const std::string& path, const rpt_signal* original, const rpt_signal* dirty,
                const rpt_signal* cleaned) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "rptool: cannot open " << path << " for writing\n";
    throw Failure{kExitData};
  }
  const auto len = rpt_signal_length(dirty);
  const double* d = rpt_signal_data(dirty);
  const double* c = rpt_signal_data(cleaned);
  const double* o = original ? rpt_signal_data(original) : nullptr;
  out << (o ? "index,original,contaminated,cleaned\n" : "index,contaminated,cleaned\n");
  for (std::size_t i = 0; i < len; ++i) {
    out << i << ',';
    if (o) out << format_number(o[i]) << ',';
    out << format_number(d[i]) << ',' << format_number(c[i]) << '\n';
  }
}

void run_denoise(const DenoiseOptions& o) {
  o.input.validate();
  require_positive(o.fs, "--fs");
  if (o.block_size == 0) usage_error("--block-size", "must be >= 1");
  if (o.f0.empty()) usage_error("--f0", "at least one frequency is required");
  for (double f : o.f0) require_nyquist(f, o.fs, "--f0");
  if (o.method == "notch") {
    require_positive(o.q, "--q");
    if (o.f0.size() != 1) usage_error("--f0", "the notch method takes exactly one frequency");
    if (o.f0[0] == 0.0) usage_error("--f0", "the notch frequency must be positive");
  } else {
    check_representable(o.f0, o.fs, o.block_size);
  }
  if (o.workers == 0) usage_error("--workers", "must be >= 1");

  auto in = o.input.read(o.fs);
  rpt_signal* s = nullptr;
  if (o.method == "rpt") {
    check(rpt_denoise_rpt(in.get(), o.block_size, o.f0.data(), o.f0.size(), o.workers, &s));
  } else {
    rpt_biquad coeffs{};
    check(rpt_notch_design(o.f0[0], o.fs, o.q, &coeffs));
    check(rpt_denoise_notch(in.get(), &coeffs, o.block_size, &s));
  }
  SignalPtr out(s);
  write_signal(out.get(), o.output);

  if (!o.plot.empty()) {
    SignalPtr original;
    if (!o.clean.empty()) {
      original = o.input.read(o.clean, o.fs);
      if (rpt_signal_length(original.get()) != rpt_signal_length(in.get())) {
        usage_error("--clean", "length differs from --input");
      }
    }
    write_plot(o.plot, original.get(), in.get(), out.get());
  }
}

// ---- compare --------------------------------------------------------------

struct CompareOptions {
  InputOptions input;
  std::string dirty;
  double fs = 360.0;
  double f0 = 50.0;
  double q = 1.0;
  std::vector<std::size_t> block_sizes{36, 72, 108, 144, 180};
  unsigned workers = 1;
  std::string output;
  std::string block_errors_dir;
};

void run_compare(const CompareOptions& o) {
  o.input.validate();
  require_positive(o.fs, "--fs");
  require_positive(o.f0, "--f0");
  require_nyquist(o.f0, o.fs, "--f0");
  require_positive(o.q, "--q");
  if (o.block_sizes.empty()) usage_error("--block-sizes", "at least one block size is required");
  for (auto n : o.block_sizes) {
    if (n == 0) usage_error("--block-sizes", "block sizes must be >= 1");
  }
  if (o.workers == 0) usage_error("--workers", "must be >= 1");
  {
    rpt_biquad probe{};
    check(rpt_notch_design(o.f0, o.fs, o.q, &probe));
  }
  for (auto n : o.block_sizes) check_representable({o.f0}, o.fs, n);

  auto clean = o.input.read(o.fs);
  auto dirty = o.input.read(o.dirty, o.fs);
  rpt_report_set* r = nullptr;
  check(rpt_compare_grid(clean.get(), dirty.get(), o.block_sizes.data(), o.block_sizes.size(), o.f0, o.q, o.workers,
                         &r));
  ReportPtr reports(r);

  if (o.output.empty() || o.output == "-") {
    const auto count = rpt_report_set_count(reports.get());
    std::cout << "block_size,method,total_error,num_blocks\n";
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t n = 0, blocks = 0;
      rpt_method method{};
      double total = 0.0;
      check(rpt_report_get(reports.get(), i, &n, &method, &total, &blocks));
      std::cout << n << ',' << (method == RPT_METHOD_RPT ? "rpt" : "notch") << ',' << format_number(total) << ','
                << blocks << '\n';
    }
  } else {
    check(rpt_report_set_write_csv(reports.get(), o.output.c_str()));
  }

  if (!o.block_errors_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(o.block_errors_dir, ec);
    if (ec) {
      std::cerr << "rptool: cannot create " << o.block_errors_dir << ": " << ec.message() << '\n';
      throw Failure{kExitData};
    }
    const auto count = rpt_report_set_count(reports.get());
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t n = 0;
      rpt_method method{};
      check(rpt_report_get(reports.get(), i, &n, &method, nullptr, nullptr));
      const auto file = std::filesystem::path(o.block_errors_dir) /
                        ("block_errors_" + std::string(method == RPT_METHOD_RPT ? "rpt" : "notch") + "_" +
                         std::to_string(n) + ".csv");
      check(rpt_report_write_block_csv(reports.get(), i, file.string().c_str()));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramanujan periodic transform toolkit: narrowband interference suppression and benchmarking"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "write a deterministic synthetic ECG as CSV");
  synth_cmd->add_option("--duration", synth.duration, "length in seconds")->capture_default_str();
  synth_cmd->add_option("--fs", synth.fs, "sampling rate in Hz")->capture_default_str();
  synth_cmd->add_option("--heart-rate", synth.heart_rate, "beats per minute, 20..240")->capture_default_str();
  synth_cmd->add_option("--output,-o", synth.output, "output CSV")->required();

  ContaminateOptions cont;
  auto* cont_cmd = app.add_subcommand("contaminate", "add a sinusoidal interferer to a signal");
  cont.input.add_to(cont_cmd);
  cont_cmd->add_option("--fs", cont.fs, "sampling rate in Hz")->capture_default_str();
  cont_cmd->add_option("--f0", cont.f0, "interference frequency in Hz")->capture_default_str();
  cont_cmd->add_option("--amplitude", cont.amplitude, "interference amplitude in signal units")
      ->capture_default_str();
  cont_cmd->add_option("--phase", cont.phase, "interference phase in radians")->capture_default_str();
  cont_cmd->add_option("--output,-o", cont.output, "output CSV")->required();

  SpectrumOptions spec;
  auto* spec_cmd = app.add_subcommand("spectrum", "print per-divisor projection energies of one block");
  spec.input.add_to(spec_cmd);
  spec_cmd->add_option("--fs", spec.fs, "sampling rate in Hz")->capture_default_str();
  spec_cmd->add_option("--block-size", spec.block_size, "block length N")->capture_default_str();
  spec_cmd->add_option("--block-index", spec.block_index, "0-based block to analyse")->capture_default_str();

  DenoiseOptions den;
  auto* den_cmd = app.add_subcommand("denoise", "suppress interference with RPT or the block-wise notch");
  den.input.add_to(den_cmd);
  den_cmd->add_option("--method", den.method, "rpt or notch")->required()->check(CLI::IsMember({"rpt", "notch"}));
  den_cmd->add_option("--fs", den.fs, "sampling rate in Hz")->capture_default_str();
  den_cmd->add_option("--block-size", den.block_size, "block length N")->capture_default_str();
  den_cmd->add_option("--f0", den.f0, "interference frequency in Hz (repeatable for rpt)")->capture_default_str();
  den_cmd->add_option("--q", den.q, "notch quality factor")->capture_default_str();
  den_cmd->add_option("--workers", den.workers, "threads for block processing (rpt)")->capture_default_str();
  den_cmd->add_option("--output,-o", den.output, "output CSV")->required();
  den_cmd->add_option("--plot", den.plot, "also write a plot CSV (index, [original,] contaminated, cleaned)");
  den_cmd->add_option("--clean", den.clean, "clean reference signal for the plot's original column");

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "score RPT against the notch over several block sizes");
  cmp.input.add_to(cmp_cmd, "--clean", "clean reference signal");
  cmp_cmd->add_option("--dirty", cmp.dirty, "contaminated signal")->required();
  cmp_cmd->add_option("--fs", cmp.fs, "sampling rate in Hz")->capture_default_str();
  cmp_cmd->add_option("--f0", cmp.f0, "interference frequency in Hz")->capture_default_str();
  cmp_cmd->add_option("--q", cmp.q, "notch quality factor")->capture_default_str();
  cmp_cmd->add_option("--block-sizes", cmp.block_sizes, "comma-separated block lengths")
      ->delimiter(',')
      ->capture_default_str();
  cmp_cmd->add_option("--workers", cmp.workers, "threads for block processing")->capture_default_str();
  cmp_cmd->add_option("--output,-o", cmp.output, "report CSV (stdout if omitted)");
  cmp_cmd->add_option("--block-errors-dir", cmp.block_errors_dir, "directory for per-block error CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*synth_cmd) run_synth(synth);
    if (*cont_cmd) run_contaminate(cont);
    if (*spec_cmd) run_spectrum(spec);
    if (*den_cmd) run_denoise(den);
    if (*cmp_cmd) run_compare(cmp);
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
