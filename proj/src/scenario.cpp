#include "smartbin/scenario.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace smartbin {

Scenario::Scenario(std::vector<ScenarioEvent> events, std::uint32_t duration_ms)
    : events_(std::move(events)), duration_ms_(duration_ms) {
    if (duration_ms_ == 0) {
        throw ScenarioError(0, "duration must be positive");
    }
    for (const auto& e : events_) {
        if (e.target == Target::Bin && !e.value) {
            throw ScenarioError(0, "bin events need a distance");
        }
    }
    std::stable_sort(events_.begin(), events_.end(),
                     [](const ScenarioEvent& a, const ScenarioEvent& b) { return a.at_ms < b.at_ms; });
}

WorldState Scenario::world_at(std::uint32_t t_ms) const {
    if (t_ms > duration_ms_) {
        throw std::out_of_range("world_at: t=" + std::to_string(t_ms) + " ms beyond duration " +
                                std::to_string(duration_ms_) + " ms");
    }
    WorldState world{std::nullopt, Millimeters(kDefaultBinMm)};
    for (const auto& e : events_) {
        if (e.at_ms > t_ms) {
            break;
        }
        if (e.target == Target::Hand) {
            world.hand = e.value;
        } else {
            world.bin = *e.value;
        }
    }
    return world;
}

namespace {

std::uint32_t parse_time(std::string_view token, int line) {
    if (!token.empty() && token.front() == '-') {
        throw ScenarioError(line, "negative time '" + std::string(token) + "'");
    }
    const auto v = detail::parse_int<std::uint32_t>(token);
    if (!v) {
        throw ScenarioError(line, "invalid time '" + std::string(token) + "'");
    }
    return *v;
}

Millimeters parse_distance(std::string_view token, int line) {
    const auto v = detail::parse_int<std::int64_t>(token);
    if (!v || *v < 0) {
        throw ScenarioError(line, "invalid distance '" + std::string(token) + "'");
    }
    if (*v > Millimeters::kMax) {
        throw ScenarioError(line, "distance " + std::string(token) + " mm exceeds sensor range of " +
                                      std::to_string(Millimeters::kMax) + " mm");
    }
    return Millimeters(static_cast<std::uint32_t>(*v));
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    std::vector<ScenarioEvent> events;
    std::optional<std::uint32_t> duration;

    int line_no = 0;
    for (std::string_view raw : detail::split_lines(text)) {
        ++line_no;
        const auto tokens = detail::split_ws(detail::strip_comment(raw));
        if (tokens.empty()) {
            continue;
        }
        if (tokens[0] == "duration") {
            if (tokens.size() != 2) {
                throw ScenarioError(line_no, "expected 'duration <ms>'");
            }
            if (duration) {
                throw ScenarioError(line_no, "duration given twice");
            }
            duration = parse_time(tokens[1], line_no);
            if (*duration == 0) {
                throw ScenarioError(line_no, "duration must be positive");
            }
            continue;
        }
        if (tokens.size() != 3) {
            throw ScenarioError(line_no, "expected '<time_ms> hand|bin <value>'");
        }
        ScenarioEvent event;
        event.at_ms = parse_time(tokens[0], line_no);
        if (tokens[1] == "hand") {
            event.target = Target::Hand;
            if (tokens[2] != "none") {
                event.value = parse_distance(tokens[2], line_no);
            }
        } else if (tokens[1] == "bin") {
            event.target = Target::Bin;
            event.value = parse_distance(tokens[2], line_no);
        } else {
            throw ScenarioError(line_no, "unknown directive '" + std::string(tokens[1]) + "'");
        }
        events.push_back(event);
    }
    if (!duration) {
        throw ScenarioError(0, "missing required 'duration <ms>' directive");
    }
    return Scenario(std::move(events), *duration);
}

}  // namespace smartbin
