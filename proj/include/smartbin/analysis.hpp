#pragma once

// Trace-level metrics against the response-time budget, and the invariant
// checks every closed-loop trace must satisfy.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smartbin/config.hpp"
#include "smartbin/scenario.hpp"
#include "smartbin/trace.hpp"

namespace smartbin {

inline constexpr std::uint64_t kResponseBudgetMs = 800;

/// Lid transitions this many cycles or fewer after a ground-truth change are
/// attributed to it; anything later counts as chatter.
inline constexpr std::uint64_t kChatterWindowCycles = 3;

/// Thrown when a trace does not belong to the scenario/config it is scored against.
class TraceMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Metrics {
    std::uint64_t open_events = 0;
    std::uint64_t close_events = 0;
    std::uint64_t lockout_entries = 0;
    std::uint64_t chatter_score = 0;
    /// One entry per hand stimulus whose lid reached the open angle:
    /// ground-truth arrival to end of servo travel.
    std::vector<std::uint64_t> response_latencies_ms;
    std::uint64_t stimuli = 0;
    std::uint64_t missed_stimuli = 0;

    double mean_latency_ms() const;
    std::uint64_t max_latency_ms() const;
    std::uint64_t within_budget() const;
    bool budget_pass() const;
};

/// A hand stimulus is a ground-truth transition into <= hand_set_mm while the
/// lid is closed and the bin is not full. Its latency runs from the scenario
/// event time to the end of the cycle in which the servo first reaches
/// open_angle_deg. Throws TraceMismatch if the trace's timeline or ground
/// truth disagrees with `scenario` under `config`.
Metrics compute_metrics(std::span<const TraceRecord> trace, const Scenario& scenario,
                        const ControlConfig& config);

std::string format_metrics(const Metrics& m);

struct InvariantCheck {
    std::string name;
    bool passed = true;
    std::optional<std::uint64_t> first_offending_cycle;
    std::string detail;
};

struct InvariantReport {
    std::vector<InvariantCheck> checks;

    bool all_passed() const;
    const InvariantCheck* find(std::string_view name) const;
};

/// Runs every trace-level invariant: timeline, lockout safety, command
/// deduplication, state/flag coherence, display consistency and servo motion
/// bound. Throws std::invalid_argument on an empty trace.
InvariantReport check_trace(std::span<const TraceRecord> trace, const ControlConfig& config);

std::string format_report(const InvariantReport& report);

}  // namespace smartbin
