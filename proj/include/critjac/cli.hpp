#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "critjac/errors.hpp"

namespace critjac::cli {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& s);   // throws DomainError
const char* to_string(OutputFormat f);

// Linear grid "lo:hi:count"; count >= 1, hi >= lo (count 1 collapses to lo).
struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;

    std::vector<double> points() const;
};

Grid parse_grid(const std::string& spec);          // throws DomainError

// Closed index window "lo:hi" of positive integers.
std::pair<long, long> parse_index_window(const std::string& spec);

// Shortest representation that round-trips through double.
std::string fmt_double(double v);

// Write via a temporary file in the same directory, then rename into place,
// so a crash never leaves a half-written report.
void atomic_write_text(const std::string& path, const std::string& content);

// Worker cap from CRITJAC_THREADS (default 1, clamped to [1, 256]).
int env_thread_cap();

// Shared run configuration assembled by the command-line front end.
struct RunConfig {
    std::string command;
    double alpha = 1.0;
    double b = 1.0;
    double E = 0.0;
    long n_sites = 0;
    long n_max = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::string output_path;     // empty: stdout
    OutputFormat format = OutputFormat::csv;
    int threads = 1;
};

}  // namespace critjac::cli
