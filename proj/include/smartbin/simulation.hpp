#pragma once

// Closed-loop desk simulation: a scripted world around the controller.
//
// Each cycle k (t = k * cycle_ms, t < duration) the firmware loop collects the
// echo captures triggered at the previous cycle boundary, re-triggers both
// sensors against the world at t, ticks, and drives the servo and display.
// The servo then travels for cycle_ms before the record is appended, so
// servo_angle_deg is the angle at t + cycle_ms. A trigger at t = 0 during
// initialization primes the first capture.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smartbin/actuation.hpp"
#include "smartbin/config.hpp"
#include "smartbin/controller.hpp"
#include "smartbin/noise.hpp"
#include "smartbin/scenario.hpp"
#include "smartbin/trace.hpp"

namespace smartbin {

/// Rate-limited servo: moves toward its target by at most speed * dt per
/// step, never past it.
class ServoMotionModel {
public:
    ServoMotionModel(int initial_angle_deg, std::uint32_t speed_deg_per_s)
        : current_(initial_angle_deg), target_(initial_angle_deg), speed_(speed_deg_per_s) {}

    void set_target(int angle_deg) { target_ = angle_deg; }
    void advance(std::uint32_t dt_ms);

    int current_angle_deg() const { return current_; }
    int target_angle_deg() const { return target_; }

private:
    int current_;
    int target_;
    std::uint32_t speed_;
};

/// Inverse of angle_to_pulse, rounded half-up and clamped to [0, 180].
/// Exact for profiles whose pulse span is at least 180 us.
int pulse_to_angle(Micros pulse, const ServoProfile& profile);

/// HardwarePort bound to a scenario, a noise model and a servo motion model.
class SimulatedPort final : public HardwarePort {
public:
    SimulatedPort(const Scenario& scenario, const ControlConfig& config, const NoiseModel& noise);

    void set_time(std::uint32_t t_ms) { now_ms_ = t_ms; }

    void trigger_pulse(Channel channel) override;
    EchoResult await_echo(Channel channel) override;
    void set_servo_pulse(Micros pulse) override;
    void write_display(const std::string& text) override { display_ = text; }

    const std::string& display() const { return display_; }
    ServoMotionModel& servo() { return servo_; }
    std::optional<Micros> last_servo_pulse() const { return last_pulse_; }

private:
    struct ChannelState {
        NoiseStream stream;
        EchoResult pending = EchoResult::no_echo();
    };
    ChannelState& channel(Channel c) { return c == Channel::Hand ? hand_ : bin_; }

    const Scenario& scenario_;
    ControlConfig config_;
    NoiseModel noise_;
    std::uint32_t now_ms_ = 0;
    ChannelState hand_;
    ChannelState bin_;
    ServoMotionModel servo_;
    std::optional<Micros> last_pulse_;
    std::string display_;
};

/// Runs the whole scenario; deterministic in (scenario, config, noise).
std::vector<TraceRecord> run_simulation(const Scenario& scenario, const ControlConfig& config,
                                        const NoiseModel& noise);

}  // namespace smartbin
