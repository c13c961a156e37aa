#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "smartbin/actuation.hpp"
#include "smartbin/sensing.hpp"

namespace smartbin {

/// Raised when a ControlConfig violates an invariant; names the field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Every threshold, timing, filter and servo parameter of the controller.
///
/// Set thresholds are the detection limits themselves (d <= set asserts);
/// clear thresholds add the release margin.
struct ControlConfig {
    std::uint32_t cycle_ms = 100;
    Millimeters hand_set_mm{50};
    Millimeters hand_clear_mm{60};
    Millimeters full_set_mm{30};
    Millimeters full_clear_mm{40};
    std::uint32_t median_window = 3;
    Micros echo_timeout_us{30'000};
    int open_angle_deg = 180;
    int closed_angle_deg = 0;
    ServoProfile servo_profile{};
    std::uint32_t servo_speed_deg_per_s = 600;
    SpeedOfSound speed_of_sound{};

    /// Throws ConfigError naming the first offending field.
    void validate() const;
};

/// Parses flat `key=value` lines. Absent keys keep their defaults; unknown
/// keys, malformed values and invariant violations throw ConfigError.
/// The result is validated.
ControlConfig parse_config(std::string_view text);

/// Inverse of parse_config; lists every key.
std::string format_config(const ControlConfig& config);

}  // namespace smartbin
