#pragma once

// Command-line front end. The `qchan` executable is a thin wrapper around
// run_cli so the subcommands can be driven in-process by tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qchan/entropy_opt.hpp"

namespace qchan::cli {

enum ExitCode : int {
    kOk = 0,
    kParseError = 1,
    kValidationFailure = 2,
    kCapExceeded = 3,
    kNumericalFailure = 4,
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

// One row of `qchan scan`.
struct ScanRow {
    std::size_t sample = 0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    std::optional<double> bi_bound; // H(tau^{(x)p}) lower bound; absent when n < 2
    double min_entropy = 0.0;       // H(tau^{(x)p}) estimate
    std::optional<double> gap;      // min_entropy - bi_bound
};

// Sample `count` random unitary channels; sample i draws from seed-derived stream i.
std::vector<ScanRow> scan_unitary(std::size_t n, std::size_t l, std::size_t count,
                                  std::uint64_t seed, std::size_t p, const OptimizerConfig& cfg);

std::string scan_csv_header(std::size_t p);
std::string scan_csv_row(const ScanRow& row);

// QCHAN_DIM_CAP when set to a positive integer, otherwise `fallback`.
std::size_t dim_cap_from_env(std::size_t fallback);

} // namespace qchan::cli
