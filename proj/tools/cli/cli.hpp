#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bippr::cli {

/// Process exit statuses.
enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kBadArguments = 2,
    kGuardExceeded = 3,
};

enum class OutputFormat { Json, Csv };

/// Everything a subcommand needs, validated before any work starts.
struct RunConfig {
    std::string subcommand;
    std::string graph_path;
    double alpha = 0.2;
    std::string delta = "auto";  // a positive number or "auto" (d_t / m)
    double eps = 0.1;
    double p_fail = 0.01;
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    std::string source;
    std::string target;
    std::vector<std::string> estimators{"bippr", "mc", "push"};
    std::string family = "pagerank";
    double gamma = 1.0;
    double trunc_tol = 1e-6;
    unsigned threads = 1;
    std::optional<OutputFormat> format;
    std::optional<std::size_t> ell;
    std::optional<std::size_t> max_nodes;
    std::optional<double> r_max;
    std::optional<std::uint64_t> walks;
    bool independent_batches = false;
    bool trace_push = false;
    bool timing = false;
};

/// Parses argv and runs the selected subcommand, writing results to `out`
/// and diagnostics to `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bippr::cli
