#pragma once

// Scripted ground truth for the simulator.
//
// File grammar, one directive per line ('#' starts a comment):
//   <time_ms> hand <mm|none>
//   <time_ms> bin <mm>
//   duration <ms>            (required, exactly once)

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smartbin/sensing.hpp"

namespace smartbin {

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    /// 1-based line number, or 0 when the error is not tied to a line.
    int line() const { return line_; }

private:
    int line_;
};

enum class Target { Hand, Bin };

struct ScenarioEvent {
    std::uint32_t at_ms = 0;
    Target target = Target::Hand;
    std::optional<Millimeters> value;  // nullopt: hand removed

    friend bool operator==(const ScenarioEvent&, const ScenarioEvent&) = default;
};

struct WorldState {
    std::optional<Millimeters> hand;  // nullopt: no hand present
    Millimeters bin;

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

inline constexpr std::uint32_t kDefaultBinMm = 300;

class Scenario {
public:
    /// Events are stably sorted by time, so ties keep their given order.
    /// Throws ScenarioError on zero duration or a Bin event without a value.
    Scenario(std::vector<ScenarioEvent> events, std::uint32_t duration_ms);

    const std::vector<ScenarioEvent>& events() const { return events_; }
    std::uint32_t duration_ms() const { return duration_ms_; }

    /// Ground truth at `t_ms`: the last event at or before t per target.
    /// Throws std::out_of_range unless 0 <= t_ms <= duration_ms.
    WorldState world_at(std::uint32_t t_ms) const;

private:
    std::vector<ScenarioEvent> events_;
    std::uint32_t duration_ms_;
};

Scenario parse_scenario(std::string_view text);

}  // namespace smartbin
