#pragma once

#include "lola/analysis.hpp"
#include "lola/ast.hpp"
#include "lola/engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lola {

enum class RunMode : uint8_t { Check, Offline, Online };

struct RunConfig {
    std::vector<std::string> spec_paths;
    RunMode mode = RunMode::Check;
    std::string input;        // log path, or "-" for stdin (online)
    std::string listen;       // online socket address, "host:port" or ":port"
    int64_t evalstep = 1;
    std::string out_dir;      // base for relative tag sink paths
    bool stats = false;
    bool lenient = false;
    std::string json_report;  // path; empty = no JSON report
};

struct RunReport {
    int64_t events = 0;
    double wall_seconds = 0.0;
    double events_per_second = 0.0;
    size_t peak_state_slots = 0;
    std::optional<double> avg_input_frequency_hz;
    int64_t runtime_errors = 0;
    bool well_formed = false;
    bool efficiently_monitorable = false;
    // (label, count) per feedback declaration, declaration order.
    std::vector<std::pair<std::string, int64_t>> fire_counts;
};

/// Exit code contract: 0 success, 1 specification error, 2 I/O error,
/// 3 runtime evaluation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSpecError = 1;
inline constexpr int kExitIoError = 2;
inline constexpr int kExitRuntimeError = 3;

/// Parse + desugar + merge the configured specification files.
Specification load_specs(const RunConfig& config);

/// Static verdicts only: types, well-formedness, the efficiently
/// monitorable classification, buffer table, evaluation order.
RunReport run_check(const RunConfig& config, std::ostream& out);

/// Whole-log evaluation. Accepts non-efficiently-monitorable specs (the
/// trace is complete, lookahead is cheap).
RunReport run_offline(const RunConfig& config, std::ostream& notify,
                      std::ostream& diag);

/// Incremental evaluation with evalstep batching; refuses specs outside
/// the efficiently monitorable fragment.
RunReport run_online(const RunConfig& config, std::ostream& notify,
                     std::ostream& diag);

void print_report(const RunReport& report, const RunConfig& config,
                  std::ostream& out);
void write_json_report(const RunReport& report, const RunConfig& config,
                       const std::string& path);

/// Shared by the CLI and the integration tests: full command handling.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

} // namespace lola
