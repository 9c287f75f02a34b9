#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ergot/config.hpp"

namespace ergot::cli {

/// Exit codes: 0 success, 1 compare verdict failed, then ErrorClass values
/// (2 config, 3 domain, 4 numerical, 5 infeasible).
inline constexpr int kVerdictFailed = 1;

/// One line of the fixed CSV schema.
struct CsvRow {
    std::string run_id;
    std::string mode;
    std::string function_id;
    double value = 0.0;
    std::optional<double> ci_halfwidth;
    std::optional<std::int64_t> n;
    std::optional<std::uint64_t> seed;
    std::optional<double> residuals;
};

inline constexpr const char* kCsvHeader = "run_id,mode,function_id,value,ci_halfwidth,n,seed,residuals";

std::string format_csv_row(const CsvRow& row);
/// Skips '#' comment lines and the header.
std::vector<CsvRow> read_csv(const std::string& path);

/// Runs one resolved configuration. The human-readable report goes to
/// `out`, diagnostics to `err`; the CSV goes to the resolved output path.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and calls run().
int main(int argc, char** argv);

}  // namespace ergot::cli
