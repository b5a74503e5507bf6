#include "rpt/rpt.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rpt/error.hpp"
#include "rpt/metrics.hpp"
#include "rpt/notch.hpp"
#include "rpt/ramsum.hpp"
#include "rpt/signal.hpp"
#include "rpt/suppressor.hpp"
#include "rpt/transform.hpp"

struct rpt_plan {
  rpt::TransformPlan plan;
};

struct rpt_signal {
  rpt::Signal signal;
};

struct rpt_report_set {
  std::vector<rpt::SuppressionReport> reports;
};

namespace {

thread_local std::string g_last_error;

rpt_status to_status(rpt::ErrorKind kind) {
  switch (kind) {
    case rpt::ErrorKind::InvalidArgument: return RPT_ERR_INVALID_ARGUMENT;
    case rpt::ErrorKind::Precision: return RPT_ERR_PRECISION;
    case rpt::ErrorKind::NotRepresentable: return RPT_ERR_NOT_REPRESENTABLE;
    case rpt::ErrorKind::Format: return RPT_ERR_FORMAT;
    case rpt::ErrorKind::Io: return RPT_ERR_IO;
    case rpt::ErrorKind::Internal: return RPT_ERR_INTERNAL;
  }
  return RPT_ERR_INTERNAL;
}

rpt_status set_error(rpt_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
rpt_status guarded(F&& body) {
  try {
    body();
    return RPT_OK;
  } catch (const rpt::Error& e) {
    return set_error(to_status(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RPT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RPT_ERR_INTERNAL, e.what());
  }
}

bool null_arg(const void* p, const char* name, rpt_status& status) {
  if (p != nullptr) return false;
  status = set_error(RPT_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
  return true;
}

#define RPT_REQUIRE_NONNULL(p)              \
  do {                                      \
    rpt_status st_ = RPT_OK;                \
    if (null_arg((p), #p, st_)) return st_; \
  } while (0)

rpt_status check_capacity(size_t capacity, size_t needed) {
  if (capacity >= needed) return RPT_OK;
  return set_error(RPT_ERR_BUFFER_TOO_SMALL,
                   "buffer holds " + std::to_string(capacity) + " elements, need " + std::to_string(needed));
}

rpt_status check_length(const rpt_plan* plan, size_t len) {
  if (len == plan->plan.n()) return RPT_OK;
  return set_error(RPT_ERR_INVALID_ARGUMENT, "expected " + std::to_string(plan->plan.n()) + " samples, got " +
                                                 std::to_string(len));
}

rpt_signal* wrap(rpt::Signal s) { return new rpt_signal{std::move(s)}; }

rpt::BiquadCoeffs from_c(const rpt_biquad& c) {
  rpt::BiquadCoeffs out;
  out.b0 = c.b0;
  out.b1 = c.b1;
  out.b2 = c.b2;
  out.a1 = c.a1;
  out.a2 = c.a2;
  out.f0 = c.f0;
  out.fs = c.fs;
  out.q = c.q;
  return out;
}

rpt_status check_report_index(const rpt_report_set* set, size_t index) {
  if (index < set->reports.size()) return RPT_OK;
  return set_error(RPT_ERR_INVALID_ARGUMENT, "report index " + std::to_string(index) + " out of range");
}

}  // namespace

extern "C" {

const char* rpt_last_error(void) { return g_last_error.c_str(); }

const char* rpt_status_string(rpt_status status) {
  switch (status) {
    case RPT_OK: return "ok";
    case RPT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RPT_ERR_FORMAT: return "format error";
    case RPT_ERR_IO: return "i/o error";
    case RPT_ERR_NOT_REPRESENTABLE: return "frequency not representable";
    case RPT_ERR_PRECISION: return "precision error";
    case RPT_ERR_INTERNAL: return "internal error";
    case RPT_ERR_BUFFER_TOO_SMALL: return "buffer too small";
  }
  return "unknown status";
}

const char* rpt_version(void) { return "1.0.0"; }

rpt_status rpt_euler_totient(size_t m, size_t* out) {
  RPT_REQUIRE_NONNULL(out);
  return guarded([&] { *out = rpt::euler_totient(m); });
}

rpt_status rpt_divisors(size_t n, size_t* out, size_t capacity, size_t* count) {
  RPT_REQUIRE_NONNULL(count);
  std::vector<std::size_t> d;
  if (auto st = guarded([&] { d = rpt::divisors(n); }); st != RPT_OK) return st;
  *count = d.size();
  if (auto st = check_capacity(capacity, d.size()); st != RPT_OK) return st;
  RPT_REQUIRE_NONNULL(out);
  std::copy(d.begin(), d.end(), out);
  return RPT_OK;
}

rpt_status rpt_ramanujan_sum(size_t m, int64_t* out, size_t capacity) {
  RPT_REQUIRE_NONNULL(out);
  if (auto st = check_capacity(capacity, m); st != RPT_OK) return st;
  return guarded([&] {
    const auto s = rpt::ramanujan_sum(m);
    std::copy(s.values.begin(), s.values.end(), out);
  });
}

rpt_status rpt_verify_factorization(size_t m, double tol, int* ok) {
  RPT_REQUIRE_NONNULL(ok);
  return guarded([&] { *ok = rpt::verify_factorization(m, tol) ? 1 : 0; });
}

rpt_status rpt_plan_create(size_t n, rpt_plan** out) {
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  return guarded([&] { *out = new rpt_plan{rpt::build_plan(n)}; });
}

void rpt_plan_destroy(rpt_plan* plan) { delete plan; }

size_t rpt_plan_length(const rpt_plan* plan) { return plan ? plan->plan.n() : 0; }

size_t rpt_plan_space_count(const rpt_plan* plan) { return plan ? plan->plan.layout().size() : 0; }

rpt_status rpt_plan_space(const rpt_plan* plan, size_t index, size_t* divisor, size_t* begin, size_t* end) {
  RPT_REQUIRE_NONNULL(plan);
  const auto& layout = plan->plan.layout();
  if (index >= layout.size()) {
    return set_error(RPT_ERR_INVALID_ARGUMENT, "space index " + std::to_string(index) + " out of range");
  }
  if (divisor) *divisor = layout[index].divisor;
  if (begin) *begin = layout[index].begin;
  if (end) *end = layout[index].end;
  return RPT_OK;
}

rpt_status rpt_plan_basis(const rpt_plan* plan, int64_t* out, size_t capacity) {
  RPT_REQUIRE_NONNULL(plan);
  RPT_REQUIRE_NONNULL(out);
  const auto& data = plan->plan.basis().data();
  if (auto st = check_capacity(capacity, data.size()); st != RPT_OK) return st;
  std::copy(data.begin(), data.end(), out);
  return RPT_OK;
}

rpt_status rpt_plan_norm_scales(const rpt_plan* plan, double* out, size_t capacity) {
  RPT_REQUIRE_NONNULL(plan);
  RPT_REQUIRE_NONNULL(out);
  const auto& scales = plan->plan.norm_scales();
  if (auto st = check_capacity(capacity, scales.size()); st != RPT_OK) return st;
  std::copy(scales.begin(), scales.end(), out);
  return RPT_OK;
}

rpt_status rpt_forward(const rpt_plan* plan, const double* x, size_t len, double* beta) {
  RPT_REQUIRE_NONNULL(plan);
  RPT_REQUIRE_NONNULL(x);
  RPT_REQUIRE_NONNULL(beta);
  if (auto st = check_length(plan, len); st != RPT_OK) return st;
  return guarded([&] {
    const auto b = rpt::forward(plan->plan, {x, len});
    std::copy(b.values.begin(), b.values.end(), beta);
  });
}

rpt_status rpt_inverse(const rpt_plan* plan, const double* beta, size_t len, double* x) {
  RPT_REQUIRE_NONNULL(plan);
  RPT_REQUIRE_NONNULL(beta);
  RPT_REQUIRE_NONNULL(x);
  if (auto st = check_length(plan, len); st != RPT_OK) return st;
  return guarded([&] {
    const auto y = rpt::inverse(plan->plan, {len, std::vector<double>(beta, beta + len)});
    std::copy(y.begin(), y.end(), x);
  });
}

rpt_status rpt_project(const rpt_plan* plan, const double* x, size_t len, size_t divisor, double* out) {
  RPT_REQUIRE_NONNULL(plan);
  RPT_REQUIRE_NONNULL(x);
  RPT_REQUIRE_NONNULL(out);
  if (auto st = check_length(plan, len); st != RPT_OK) return st;
  return guarded([&] {
    const auto y = rpt::project(plan->plan, {x, len}, divisor);
    std::copy(y.begin(), y.end(), out);
  });
}

rpt_status rpt_energy_spectrum(const rpt_plan* plan, const double* x, size_t len, double* energies,
                               size_t capacity) {
  RPT_REQUIRE_NONNULL(plan);
  RPT_REQUIRE_NONNULL(x);
  RPT_REQUIRE_NONNULL(energies);
  if (auto st = check_length(plan, len); st != RPT_OK) return st;
  if (auto st = check_capacity(capacity, plan->plan.layout().size()); st != RPT_OK) return st;
  return guarded([&] {
    const auto spectrum = rpt::energy_spectrum(plan->plan, {x, len});
    std::size_t i = 0;
    for (const auto& [m, e] : spectrum) energies[i++] = e;
  });
}

rpt_status rpt_suppress_block(const rpt_plan* plan, const size_t* targets, size_t ntargets, const double* x,
                              size_t len, double* out) {
  RPT_REQUIRE_NONNULL(plan);
  RPT_REQUIRE_NONNULL(x);
  RPT_REQUIRE_NONNULL(out);
  if (ntargets > 0) RPT_REQUIRE_NONNULL(targets);
  if (auto st = check_length(plan, len); st != RPT_OK) return st;
  return guarded([&] {
    const std::set<std::size_t> t(targets, targets + ntargets);
    const auto mask = rpt::make_mask(plan->plan, t);
    const auto y = rpt::suppress_block(plan->plan, mask, {x, len});
    std::copy(y.begin(), y.end(), out);
  });
}

rpt_status rpt_space_for_frequency(double f0, double fs, size_t n, uint64_t* bin, size_t* space) {
  return guarded([&] {
    const auto b = rpt::space_for_frequency(f0, fs, n);
    if (bin) *bin = b.bin;
    if (space) *space = b.space;
  });
}

size_t rpt_minimal_block_size(double f0, double fs) {
  if (!(fs > 0.0) || !(f0 >= 0.0)) return 0;
  return rpt::minimal_block_size(f0, fs);
}

rpt_status rpt_signal_create(const double* samples, size_t len, double fs, rpt_signal** out) {
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  if (len > 0) RPT_REQUIRE_NONNULL(samples);
  return guarded([&] { *out = wrap(rpt::Signal(std::vector<double>(samples, samples + len), fs)); });
}

void rpt_signal_destroy(rpt_signal* signal) { delete signal; }

size_t rpt_signal_length(const rpt_signal* signal) { return signal ? signal->signal.size() : 0; }

double rpt_signal_fs(const rpt_signal* signal) { return signal ? signal->signal.fs() : 0.0; }

const double* rpt_signal_data(const rpt_signal* signal) {
  return signal ? signal->signal.samples().data() : nullptr;
}

rpt_status rpt_signal_read_csv(const char* path, size_t column, double fs, rpt_signal** out) {
  RPT_REQUIRE_NONNULL(path);
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(rpt::read_csv(path, column, fs)); });
}

rpt_status rpt_signal_read_wfdb212(const char* path, size_t channels, size_t select, double gain, int baseline,
                                   double fs, rpt_signal** out) {
  RPT_REQUIRE_NONNULL(path);
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(rpt::read_wfdb_212(path, channels, select, gain, baseline, fs)); });
}

rpt_status rpt_signal_write_csv(const rpt_signal* signal, const char* path) {
  RPT_REQUIRE_NONNULL(signal);
  RPT_REQUIRE_NONNULL(path);
  return guarded([&] { rpt::write_csv(signal->signal, path); });
}

rpt_status rpt_signal_synth_ecg(double duration_s, double fs, double heart_rate_bpm, rpt_signal** out) {
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(rpt::synth_ecg(duration_s, fs, heart_rate_bpm)); });
}

rpt_status rpt_signal_add_sinusoid(const rpt_signal* signal, double f0, double amplitude, double phase,
                                   rpt_signal** out) {
  RPT_REQUIRE_NONNULL(signal);
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(rpt::add_sinusoid(signal->signal, f0, amplitude, phase)); });
}

rpt_status rpt_decode_212(const uint8_t* bytes, size_t len, size_t channels, size_t select, int* out,
                          size_t capacity, size_t* count) {
  RPT_REQUIRE_NONNULL(count);
  if (len > 0) RPT_REQUIRE_NONNULL(bytes);
  std::vector<int> raw;
  if (auto st = guarded([&] { raw = rpt::decode_212({bytes, len}, channels, select); }); st != RPT_OK) return st;
  *count = raw.size();
  if (auto st = check_capacity(capacity, raw.size()); st != RPT_OK) return st;
  if (!raw.empty()) RPT_REQUIRE_NONNULL(out);
  std::copy(raw.begin(), raw.end(), out);
  return RPT_OK;
}

rpt_status rpt_denoise_rpt(const rpt_signal* signal, size_t block_size, const double* freqs, size_t nfreqs,
                           unsigned workers, rpt_signal** out) {
  RPT_REQUIRE_NONNULL(signal);
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  if (nfreqs > 0) RPT_REQUIRE_NONNULL(freqs);
  return guarded([&] {
    rpt::SuppressionConfig config{block_size, std::vector<double>(freqs, freqs + nfreqs), signal->signal.fs(),
                                  workers};
    *out = wrap(rpt::run(signal->signal, config));
  });
}

rpt_status rpt_notch_design(double f0, double fs, double q, rpt_biquad* out) {
  RPT_REQUIRE_NONNULL(out);
  return guarded([&] {
    const auto c = rpt::design_notch(f0, fs, q);
    *out = rpt_biquad{c.b0, c.b1, c.b2, c.a1, c.a2, c.f0, c.fs, c.q};
  });
}

rpt_status rpt_notch_magnitude(const rpt_biquad* coeffs, double f, double* magnitude) {
  RPT_REQUIRE_NONNULL(coeffs);
  RPT_REQUIRE_NONNULL(magnitude);
  return guarded([&] { *magnitude = std::abs(from_c(*coeffs).response(f)); });
}

rpt_status rpt_denoise_notch(const rpt_signal* signal, const rpt_biquad* coeffs, size_t block_size,
                             rpt_signal** out) {
  RPT_REQUIRE_NONNULL(signal);
  RPT_REQUIRE_NONNULL(coeffs);
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  return guarded([&] { *out = wrap(rpt::notch_run(signal->signal, from_c(*coeffs), block_size)); });
}

rpt_status rpt_block_error(const double* clean, const double* recon, size_t len, double* out) {
  RPT_REQUIRE_NONNULL(out);
  if (len > 0) {
    RPT_REQUIRE_NONNULL(clean);
    RPT_REQUIRE_NONNULL(recon);
  }
  return guarded([&] { *out = rpt::block_error({clean, len}, {recon, len}); });
}

rpt_status rpt_compare_grid(const rpt_signal* clean, const rpt_signal* contaminated, const size_t* block_sizes,
                            size_t nsizes, double f0, double q, unsigned workers, rpt_report_set** out) {
  RPT_REQUIRE_NONNULL(clean);
  RPT_REQUIRE_NONNULL(contaminated);
  RPT_REQUIRE_NONNULL(out);
  *out = nullptr;
  if (nsizes > 0) RPT_REQUIRE_NONNULL(block_sizes);
  return guarded([&] {
    auto reports = rpt::compare_grid(clean->signal, contaminated->signal, {block_sizes, nsizes}, f0, q, workers);
    *out = new rpt_report_set{std::move(reports)};
  });
}

void rpt_report_set_destroy(rpt_report_set* set) { delete set; }

size_t rpt_report_set_count(const rpt_report_set* set) { return set ? set->reports.size() : 0; }

rpt_status rpt_report_get(const rpt_report_set* set, size_t index, size_t* block_size, rpt_method* method,
                          double* total, size_t* num_blocks) {
  RPT_REQUIRE_NONNULL(set);
  if (auto st = check_report_index(set, index); st != RPT_OK) return st;
  const auto& r = set->reports[index];
  if (block_size) *block_size = r.block_size;
  if (method) *method = r.method == rpt::Method::Rpt ? RPT_METHOD_RPT : RPT_METHOD_NOTCH;
  if (total) *total = r.total;
  if (num_blocks) *num_blocks = r.per_block_errors.size();
  return RPT_OK;
}

rpt_status rpt_report_block_errors(const rpt_report_set* set, size_t index, const double** errors, size_t* count) {
  RPT_REQUIRE_NONNULL(set);
  RPT_REQUIRE_NONNULL(errors);
  RPT_REQUIRE_NONNULL(count);
  if (auto st = check_report_index(set, index); st != RPT_OK) return st;
  *errors = set->reports[index].per_block_errors.data();
  *count = set->reports[index].per_block_errors.size();
  return RPT_OK;
}

rpt_status rpt_report_set_write_csv(const rpt_report_set* set, const char* path) {
  RPT_REQUIRE_NONNULL(set);
  RPT_REQUIRE_NONNULL(path);
  return guarded([&] { rpt::write_report_csv(set->reports, std::filesystem::path(path)); });
}

rpt_status rpt_report_write_block_csv(const rpt_report_set* set, size_t index, const char* path) {
  RPT_REQUIRE_NONNULL(set);
  RPT_REQUIRE_NONNULL(path);
  if (auto st = check_report_index(set, index); st != RPT_OK) return st;
  return guarded([&] { rpt::write_block_errors_csv(set->reports[index], std::filesystem::path(path)); });
}

}  // extern "C"
