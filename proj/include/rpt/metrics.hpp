#pragma once

// Block-wise reconstruction error and the RPT-versus-notch comparison grid.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "rpt/signal.hpp"

namespace rpt {

enum class Method { Rpt, Notch };

std::string_view method_name(Method m) noexcept;

struct SuppressionReport {
  std::size_t block_size = 0;
  Method method = Method::Rpt;
  std::vector<double> per_block_errors;
  double total = 0.0;
};

/// Sum of squared differences. Throws InvalidArgument on length mismatch.
double block_error(std::span<const double> clean, std::span<const double> recon);

/// Plain sum; throws InvalidArgument on a negative entry.
double total_error(std::span<const double> per_block);

/// block_error over consecutive blocks of two equally long buffers.
std::vector<double> block_errors(std::span<const double> clean, std::span<const double> recon,
                                 std::size_t block_size);

/// For every block size, runs RPT suppression of f0 and the blockwise notch
/// (f0, q) on `contaminated` and scores each block against `clean`. Both
/// signals are zero-padded to whole blocks first, so the final block is
/// compared over the padding too. Reports come in input order, RPT first.
std::vector<SuppressionReport> compare_grid(const Signal& clean, const Signal& contaminated,
                                            std::span<const std::size_t> block_sizes, double f0, double q,
                                            unsigned workers = 1);

/// Header `block_size,method,total_error,num_blocks`, one row per report.
void write_report_csv(std::span<const SuppressionReport> reports, std::ostream& out);
void write_report_csv(std::span<const SuppressionReport> reports, const std::filesystem::path& path);

/// Header `block_index,e_i`.
void write_block_errors_csv(const SuppressionReport& report, std::ostream& out);
void write_block_errors_csv(const SuppressionReport& report, const std::filesystem::path& path);

}  // namespace rpt
