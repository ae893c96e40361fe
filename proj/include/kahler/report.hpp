#pragma once

// Report serialization and the small text formats used on the command line.

#include <string>
#include <string_view>
#include <vector>

#include "kahler/metric.hpp"
#include "kahler/verify.hpp"

namespace kahler::report {

enum class Format { Json, Csv, Text };

/// Throws ConfigError for anything other than json, csv or text.
[[nodiscard]] Format parse_format(std::string_view name);

struct Options {
  // wall time is the only nondeterministic field; it is written as 0 unless asked for
  bool timing = false;
};

/// Top-level array of records {id, pass, max_residual, mean_residual,
/// tolerance, samples, seed, wall_ms, claim_ref}.
[[nodiscard]] std::string to_json(const std::vector<verify::CheckReport>& reports, const Options& opts = {});
/// Header row plus one row per report, same fields in the same order.
[[nodiscard]] std::string to_csv(const std::vector<verify::CheckReport>& reports, const Options& opts = {});
/// Human-readable summary including every condition of every check.
[[nodiscard]] std::string to_text(const std::vector<verify::CheckReport>& reports, const Options& opts = {});
[[nodiscard]] std::string render(const std::vector<verify::CheckReport>& reports, Format format,
                                 const Options& opts = {});

/// Shortest decimal that round-trips to the same double.
[[nodiscard]] std::string format_real(double x);
/// "a+bi" / "a-bi" with both parts at full precision.
[[nodiscard]] std::string format_complex(Complex c);
/// Row-major array of "a+bi" strings, one row per line.
[[nodiscard]] std::string format_matrix(const metric::Matrix& m);

/// Parses "1.5", "-2i", "i", "0.7-0.3i", "1e-3+2.5e1i". Throws ConfigError.
[[nodiscard]] Complex parse_complex(std::string_view text);
/// Comma-separated complex literals.
[[nodiscard]] Point parse_point(std::string_view text);

}  // namespace kahler::report
