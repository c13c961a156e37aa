#pragma once

// Command implementations behind the `smartbin` executable.
//
// Exit status contract: 0 success/pass, 1 check or budget failure,
// 2 usage, I/O or parse error. Diagnostics go to `err`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "smartbin/trace.hpp"

namespace smartbin::cli {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitError = 2 };

struct SimulateOptions {
    std::filesystem::path scenario;
    std::optional<std::filesystem::path> config;
    std::uint64_t seed = 1;
    std::uint32_t sigma_mm = 0;
    double dropout = 0.0;
    std::string out = "-";  // "-" writes the trace to `out` stream
    TraceFormat format = TraceFormat::KeyValue;
};

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

int cmd_metrics(const std::filesystem::path& trace, const std::filesystem::path& scenario,
                const std::optional<std::filesystem::path>& config, std::ostream& out, std::ostream& err);

int cmd_check(const std::filesystem::path& trace, const std::optional<std::filesystem::path>& config,
              std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smartbin::cli
