#pragma once

#include "fiegarch/estimate.hpp"
#include "fiegarch/spec.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fiegarch {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Fixed 17-significant-digit text.
std::string format_double17(double v);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double v, int decimals);

/// Reads one numeric column of a CSV file. With a single-column file the
/// column may be omitted. A non-numeric first row is treated as a header.
/// `column` is either a header name or a 0-based index. Throws Error(Parse)
/// with the offending line number.
std::vector<double> read_csv_column(const std::string& path, const std::optional<std::string>& column = std::nullopt);

/// key=value lines; '#' starts a comment. Throws Error(Parse).
std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin);
std::string read_text_file(const std::string& path);

/// Comma-separated numbers. Throws Error(Usage).
std::vector<double> parse_number_list(const std::string& text);
std::vector<std::size_t> parse_index_list(const std::string& text);

/// Writes a fit report as key=value text.
std::string format_fit_report(const FitResult& fit, std::size_t n);

/// Reads the parameters back from a fit report (or any key=value file with
/// d, omega, theta, gamma, p, q, alpha1.., beta1..).
FiegarchSpec spec_from_key_values(const std::map<std::string, std::string>& kv, const std::string& origin);

}  // namespace fiegarch
