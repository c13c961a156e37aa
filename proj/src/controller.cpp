#include "smartbin/controller.hpp"

namespace smartbin {

std::string_view to_string(SystemState s) {
    switch (s) {
        case SystemState::Idle: return "Idle";
        case SystemState::Open: return "Open";
        case SystemState::Locked: return "Locked";
    }
    return "?";
}

std::string_view to_string(LidState s) {
    return s == LidState::Open ? "Open" : "Closed";
}

namespace {
const ControlConfig& validated(const ControlConfig& config) {
    config.validate();
    return config;
}
}  // namespace

Controller::Controller(const ControlConfig& config)
    : config_(validated(config)),
      hand_filter_(config.median_window),
      bin_filter_(config.median_window) {}

Millimeters Controller::reading(EchoResult echo) const {
    if (!echo.has_echo() || echo.round_trip() >= config_.echo_timeout_us) {
        return Millimeters::max_range();
    }
    return *echo_to_distance(echo, config_.speed_of_sound);
}

int Controller::angle_for(LidState lid) const {
    return lid == LidState::Open ? config_.open_angle_deg : config_.closed_angle_deg;
}

CycleOutput Controller::tick(const CycleInput& input) {
    ++cycle_count_;
    CycleOutput out;

    // Bin level first; the hand channel is not consulted while full.
    out.filtered_bin_mm = bin_filter_.push(reading(input.bin_echo));
    bin_full_latch_ = bin_full_latch_.update(out.filtered_bin_mm, config_.full_set_mm, config_.full_clear_mm);

    const LidState previous_lid = lid_;
    if (bin_full_latch_.active()) {
        lid_ = LidState::Closed;
        state_ = SystemState::Locked;
        out.display = BinFull{};
    } else {
        last_hand_mm_ = hand_filter_.push(reading(input.hand_echo));
        hand_detect_ = hand_detect_.update(last_hand_mm_, config_.hand_set_mm, config_.hand_clear_mm);
        lid_ = hand_detect_.active() ? LidState::Open : LidState::Closed;
        state_ = lid_ == LidState::Open ? SystemState::Open : SystemState::Idle;
        out.display = BinDistance{out.filtered_bin_mm};
    }

    if (lid_ != previous_lid) {
        out.servo_command = angle_for(lid_);
    }
    out.state = state_;
    out.lid = lid_;
    out.bin_full = bin_full_latch_.active();
    out.filtered_hand_mm = last_hand_mm_;
    return out;
}

std::vector<CycleOutput> reference_oracle(std::span<const CycleInput> inputs,
                                          const ControlConfig& config) {
    config.validate();

    const auto distance = [&](EchoResult echo) {
        if (!echo.has_echo() || echo.round_trip() >= config.echo_timeout_us) {
            return Millimeters::max_range();
        }
        return *echo_to_distance(echo, config.speed_of_sound);
    };

    std::vector<CycleOutput> outputs;
    outputs.reserve(inputs.size());

    LidState lid_state = LidState::Closed;
    bool bin_full = false;
    Millimeters hand = Millimeters::max_range();

    for (const CycleInput& input : inputs) {
        CycleOutput out;

        const Millimeters bin = distance(input.bin_echo);
        if (bin <= config.full_set_mm) {
            bin_full = true;
            out.display = BinFull{};
            if (lid_state == LidState::Open) {
                out.servo_command = config.closed_angle_deg;
                lid_state = LidState::Closed;
            }
        } else {
            bin_full = false;
            out.display = BinDistance{bin};
        }

        if (!bin_full) {
            hand = distance(input.hand_echo);
            if (hand <= config.hand_set_mm) {
                if (lid_state == LidState::Closed) {
                    out.servo_command = config.open_angle_deg;
                    lid_state = LidState::Open;
                }
            } else {
                if (lid_state == LidState::Open) {
                    out.servo_command = config.closed_angle_deg;
                    lid_state = LidState::Closed;
                }
            }
        }

        out.lid = lid_state;
        out.bin_full = bin_full;
        out.state = bin_full ? SystemState::Locked
                             : (lid_state == LidState::Open ? SystemState::Open : SystemState::Idle);
        out.filtered_bin_mm = bin;
        out.filtered_hand_mm = hand;
        outputs.push_back(out);
    }
    return outputs;
}

CycleOutput run_cycle(Controller& controller, HardwarePort& port) {
    CycleInput input;
    input.bin_echo = port.await_echo(Channel::Bin);
    input.hand_echo = port.await_echo(Channel::Hand);
    port.trigger_pulse(Channel::Bin);
    port.trigger_pulse(Channel::Hand);

    CycleOutput out = controller.tick(input);
    if (out.servo_command) {
        port.set_servo_pulse(angle_to_pulse(*out.servo_command, controller.config().servo_profile));
    }
    port.write_display(render_display(out.display));
    return out;
}

}  // namespace smartbin
