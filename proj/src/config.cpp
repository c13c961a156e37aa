#include "smartbin/config.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "text_util.hpp"

namespace smartbin {

namespace {
constexpr std::uint32_t kMaxMedianWindow = 99;
}

void ControlConfig::validate() const {
    if (cycle_ms == 0) {
        throw ConfigError("cycle_ms", "must be positive");
    }
    if (hand_clear_mm < hand_set_mm) {
        throw ConfigError("hand_clear_mm", "must be >= hand_set_mm");
    }
    if (full_clear_mm < full_set_mm) {
        throw ConfigError("full_clear_mm", "must be >= full_set_mm");
    }
    if (median_window == 0 || median_window % 2 == 0 || median_window > kMaxMedianWindow) {
        throw ConfigError("median_window", "must be odd and in [1, 99], got " + std::to_string(median_window));
    }
    if (echo_timeout_us.value() == 0) {
        throw ConfigError("echo_timeout_us", "must be positive");
    }
    if (open_angle_deg <= 0 || open_angle_deg > 180) {
        throw ConfigError("open_angle_deg", "must be in (0, 180]");
    }
    if (closed_angle_deg < 0 || closed_angle_deg >= open_angle_deg) {
        throw ConfigError("closed_angle_deg", "must be in [0, open_angle_deg)");
    }
    if (!(servo_profile.min_pulse_us < servo_profile.max_pulse_us)) {
        throw ConfigError("min_pulse_us", "must be below max_pulse_us");
    }
    if (!(servo_profile.max_pulse_us < servo_profile.pwm_period_us)) {
        throw ConfigError("max_pulse_us", "must be below pwm_period_us");
    }
    if (servo_speed_deg_per_s == 0) {
        throw ConfigError("servo_speed_deg_per_s", "must be positive");
    }
    if (std::uint64_t{servo_speed_deg_per_s} * cycle_ms < 1000) {
        throw ConfigError("servo_speed_deg_per_s", "servo must travel at least 1 deg per cycle");
    }
    if (speed_of_sound.m_per_s == 0) {
        throw ConfigError("speed_of_sound_m_per_s", "must be positive");
    }
}

namespace {

using Setter = std::function<void(ControlConfig&, std::uint32_t)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"cycle_ms", [](ControlConfig& c, std::uint32_t v) { c.cycle_ms = v; }},
        {"hand_set_mm", [](ControlConfig& c, std::uint32_t v) { c.hand_set_mm = Millimeters(v); }},
        {"hand_clear_mm", [](ControlConfig& c, std::uint32_t v) { c.hand_clear_mm = Millimeters(v); }},
        {"full_set_mm", [](ControlConfig& c, std::uint32_t v) { c.full_set_mm = Millimeters(v); }},
        {"full_clear_mm", [](ControlConfig& c, std::uint32_t v) { c.full_clear_mm = Millimeters(v); }},
        {"median_window", [](ControlConfig& c, std::uint32_t v) { c.median_window = v; }},
        {"echo_timeout_us", [](ControlConfig& c, std::uint32_t v) { c.echo_timeout_us = Micros(v); }},
        {"open_angle_deg", [](ControlConfig& c, std::uint32_t v) { c.open_angle_deg = static_cast<int>(v); }},
        {"closed_angle_deg", [](ControlConfig& c, std::uint32_t v) { c.closed_angle_deg = static_cast<int>(v); }},
        {"pwm_period_us", [](ControlConfig& c, std::uint32_t v) { c.servo_profile.pwm_period_us = Micros(v); }},
        {"min_pulse_us", [](ControlConfig& c, std::uint32_t v) { c.servo_profile.min_pulse_us = Micros(v); }},
        {"max_pulse_us", [](ControlConfig& c, std::uint32_t v) { c.servo_profile.max_pulse_us = Micros(v); }},
        {"servo_speed_deg_per_s", [](ControlConfig& c, std::uint32_t v) { c.servo_speed_deg_per_s = v; }},
        {"speed_of_sound_m_per_s", [](ControlConfig& c, std::uint32_t v) { c.speed_of_sound.m_per_s = v; }},
    };
    return table;
}

}  // namespace

ControlConfig parse_config(std::string_view text) {
    ControlConfig config;
    int line_no = 0;
    for (std::string_view raw : detail::split_lines(text)) {
        ++line_no;
        const std::string_view line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected key=value");
        }
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(std::string(key), "unknown key (line " + std::to_string(line_no) + ")");
        }
        const auto parsed = detail::parse_int<std::uint32_t>(value);
        if (!parsed) {
            throw ConfigError(std::string(key), "not a non-negative integer: '" + std::string(value) + "'");
        }
        try {
            it->second(config, *parsed);
        } catch (const std::out_of_range& e) {
            throw ConfigError(std::string(key), e.what());
        }
    }
    config.validate();
    return config;
}

std::string format_config(const ControlConfig& c) {
    std::ostringstream os;
    os << "cycle_ms=" << c.cycle_ms << '\n'
       << "hand_set_mm=" << c.hand_set_mm.value() << '\n'
       << "hand_clear_mm=" << c.hand_clear_mm.value() << '\n'
       << "full_set_mm=" << c.full_set_mm.value() << '\n'
       << "full_clear_mm=" << c.full_clear_mm.value() << '\n'
       << "median_window=" << c.median_window << '\n'
       << "echo_timeout_us=" << c.echo_timeout_us.value() << '\n'
       << "open_angle_deg=" << c.open_angle_deg << '\n'
       << "closed_angle_deg=" << c.closed_angle_deg << '\n'
       << "pwm_period_us=" << c.servo_profile.pwm_period_us.value() << '\n'
       << "min_pulse_us=" << c.servo_profile.min_pulse_us.value() << '\n'
       << "max_pulse_us=" << c.servo_profile.max_pulse_us.value() << '\n'
       << "servo_speed_deg_per_s=" << c.servo_speed_deg_per_s << '\n'
       << "speed_of_sound_m_per_s=" << c.speed_of_sound.m_per_s << '\n';
    return os.str();
}

}  // namespace smartbin
