#include "rpt/metrics.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "rpt/blocks.hpp"
#include "rpt/error.hpp"
#include "rpt/notch.hpp"
#include "rpt/suppressor.hpp"
#include "text.hpp"

namespace rpt {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string_view method_name(Method m) noexcept { return m == Method::Rpt ? "rpt" : "notch"; }

double block_error(std::span<const double> clean, std::span<const double> recon) {
  require(clean.size() == recon.size(), "block_error: blocks differ in length");
  double e = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double d = clean[i] - recon[i];
    e += d * d;
  }
  return e;
}

double total_error(std::span<const double> per_block) {
  double sum = 0.0;
  for (double e : per_block) {
    require(e >= 0.0, "total_error: negative block error");
    sum += e;
  }
  return sum;
}

std::vector<double> block_errors(std::span<const double> clean, std::span<const double> recon,
                                 std::size_t block_size) {
  require(clean.size() == recon.size(), "block_errors: buffers differ in length");
  require(block_size >= 1, "block size must be >= 1");
  std::vector<double> out;
  out.reserve(block_count(clean.size(), block_size));
  for (std::size_t start = 0; start < clean.size(); start += block_size) {
    const auto len = std::min(block_size, clean.size() - start);
    out.push_back(block_error(clean.subspan(start, len), recon.subspan(start, len)));
  }
  return out;
}

std::vector<SuppressionReport> compare_grid(const Signal& clean, const Signal& contaminated,
                                            std::span<const std::size_t> block_sizes, double f0, double q,
                                            unsigned workers) {
  require(clean.size() == contaminated.size(), "compare_grid: clean and contaminated lengths differ");
  require(std::abs(clean.fs() - contaminated.fs()) <= 1e-9 * clean.fs(),
          "compare_grid: clean and contaminated sampling rates differ");
  require(!clean.empty(), "compare_grid: empty signal");
  const double fs = clean.fs();
  const auto notch = design_notch(f0, fs, q);

  std::vector<SuppressionReport> reports;
  for (auto n : block_sizes) {
    SuppressionConfig config{n, {f0}, fs, workers};
    const auto targets = target_spaces(config);
    const auto plan = build_plan(n);
    const auto mask = make_mask(plan, targets);

    const auto clean_padded = pad_to_blocks(clean.samples(), n);
    const auto dirty_padded = pad_to_blocks(contaminated.samples(), n);

    const auto rpt_out = suppress_padded(plan, mask, dirty_padded, workers);
    auto rpt_errors = block_errors(clean_padded, rpt_out, n);
    const double rpt_total = total_error(rpt_errors);
    reports.push_back({n, Method::Rpt, std::move(rpt_errors), rpt_total});

    const auto notch_out = filter_blockwise(notch, dirty_padded, n);
    auto notch_errors = block_errors(clean_padded, notch_out, n);
    const double notch_total = total_error(notch_errors);
    reports.push_back({n, Method::Notch, std::move(notch_errors), notch_total});
  }
  return reports;
}

void write_report_csv(std::span<const SuppressionReport> reports, std::ostream& out) {
  out << "block_size,method,total_error,num_blocks\n";
  for (const auto& r : reports) {
    out << r.block_size << ',' << method_name(r.method) << ',' << detail::format_number(r.total) << ','
        << r.per_block_errors.size() << '\n';
  }
}

void write_report_csv(std::span<const SuppressionReport> reports, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_report_csv(reports, out);
  if (!out) fail(ErrorKind::Io, "write failed: " + path.string());
}

void write_block_errors_csv(const SuppressionReport& report, std::ostream& out) {
  out << "block_index,e_i\n";
  for (std::size_t i = 0; i < report.per_block_errors.size(); ++i) {
    out << i << ',' << detail::format_number(report.per_block_errors[i]) << '\n';
  }
}

void write_block_errors_csv(const SuppressionReport& report, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_block_errors_csv(report, out);
  if (!out) fail(ErrorKind::Io, "write failed: " + path.string());
}

}  // namespace rpt
