#pragma once

// Idle/Open/Locked lid controller with bin-full priority.
//
// One tick per control cycle: the bin channel is filtered and latched first;
// hand logic runs only while the bin-full latch is clear.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "smartbin/actuation.hpp"
#include "smartbin/config.hpp"
#include "smartbin/sensing.hpp"

namespace smartbin {

enum class SystemState { Idle, Open, Locked };
enum class LidState { Closed, Open };

std::string_view to_string(SystemState s);
std::string_view to_string(LidState s);

struct CycleInput {
    EchoResult hand_echo = EchoResult::no_echo();
    EchoResult bin_echo = EchoResult::no_echo();
};

struct CycleOutput {
    SystemState state = SystemState::Idle;
    LidState lid = LidState::Closed;
    bool bin_full = false;
    std::optional<int> servo_command;  // degrees; present only on lid transitions
    DisplayContent display = BinDistance{Millimeters::max_range()};
    Millimeters filtered_hand_mm = Millimeters::max_range();
    Millimeters filtered_bin_mm = Millimeters::max_range();

    friend bool operator==(const CycleOutput&, const CycleOutput&) = default;
};

class Controller {
public:
    /// Validates `config`; throws ConfigError naming the offending field.
    explicit Controller(const ControlConfig& config);

    CycleOutput tick(const CycleInput& input);

    const ControlConfig& config() const { return config_; }
    SystemState state() const { return state_; }
    LidState lid() const { return lid_; }
    bool bin_full() const { return bin_full_latch_.active(); }
    std::uint64_t cycle_count() const { return cycle_count_; }

private:
    /// NoEcho, timed-out echoes and out-of-range echoes read as max range.
    Millimeters reading(EchoResult echo) const;
    int angle_for(LidState lid) const;

    ControlConfig config_;
    MedianFilter hand_filter_;
    MedianFilter bin_filter_;
    Hysteresis hand_detect_;
    Hysteresis bin_full_latch_;
    LidState lid_ = LidState::Closed;
    SystemState state_ = SystemState::Idle;
    Millimeters last_hand_mm_ = Millimeters::max_range();
    std::uint64_t cycle_count_ = 0;
};

/// Direct transcription of the control loop without smoothing or release
/// margins: each cycle compares the raw reading against the set thresholds.
/// Used for differential testing of Controller.
std::vector<CycleOutput> reference_oracle(std::span<const CycleInput> inputs,
                                          const ControlConfig& config);

/// One firmware loop iteration against a hardware port: collect the latest
/// captures, re-trigger both sensors, tick, then drive the servo (on lid
/// transitions only) and refresh the display.
CycleOutput run_cycle(Controller& controller, HardwarePort& port);

}  // namespace smartbin
