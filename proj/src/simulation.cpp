#include "smartbin/simulation.hpp"

#include <algorithm>

namespace smartbin {

void ServoMotionModel::advance(std::uint32_t dt_ms) {
    const std::uint64_t max_step = std::uint64_t{speed_} * dt_ms / 1000;
    const std::int64_t delta = std::int64_t{target_} - current_;
    const std::int64_t step =
        std::clamp<std::int64_t>(delta, -static_cast<std::int64_t>(max_step), static_cast<std::int64_t>(max_step));
    current_ += static_cast<int>(step);
}

int pulse_to_angle(Micros pulse, const ServoProfile& profile) {
    profile.validate();
    const std::int64_t min = profile.min_pulse_us.value();
    const std::int64_t span = std::int64_t{profile.max_pulse_us.value()} - min;
    const std::int64_t offset = std::clamp<std::int64_t>(std::int64_t{pulse.value()} - min, 0, span);
    return static_cast<int>((2 * offset * 180 + span) / (2 * span));
}

namespace {
constexpr std::uint64_t kHandChannel = 0;
constexpr std::uint64_t kBinChannel = 1;
}  // namespace

SimulatedPort::SimulatedPort(const Scenario& scenario, const ControlConfig& config, const NoiseModel& noise)
    : scenario_(scenario),
      config_(config),
      noise_(noise),
      hand_{NoiseStream(noise.seed, kHandChannel)},
      bin_{NoiseStream(noise.seed, kBinChannel)},
      servo_(config.closed_angle_deg, config.servo_speed_deg_per_s) {}

void SimulatedPort::trigger_pulse(Channel c) {
    const WorldState world = scenario_.world_at(now_ms_);
    const std::optional<Millimeters> truth =
        c == Channel::Hand ? world.hand : std::optional<Millimeters>(world.bin);
    ChannelState& ch = channel(c);
    ch.pending = synthesize_echo(truth, noise_, ch.stream, config_.echo_timeout_us, config_.speed_of_sound);
}

EchoResult SimulatedPort::await_echo(Channel c) { return channel(c).pending; }

void SimulatedPort::set_servo_pulse(Micros pulse) {
    last_pulse_ = pulse;
    servo_.set_target(pulse_to_angle(pulse, config_.servo_profile));
}

std::vector<TraceRecord> run_simulation(const Scenario& scenario, const ControlConfig& config,
                                        const NoiseModel& noise) {
    config.validate();
    noise.validate();

    Controller controller(config);
    SimulatedPort port(scenario, config, noise);

    port.set_time(0);
    port.trigger_pulse(Channel::Bin);
    port.trigger_pulse(Channel::Hand);

    std::vector<TraceRecord> trace;
    trace.reserve(scenario.duration_ms() / config.cycle_ms + 1);

    for (std::uint64_t cycle = 0;; ++cycle) {
        const std::uint64_t t = cycle * config.cycle_ms;
        if (t >= scenario.duration_ms()) {
            break;
        }
        port.set_time(static_cast<std::uint32_t>(t));

        TraceRecord rec;
        rec.raw_bin = port.await_echo(Channel::Bin);
        rec.raw_hand = port.await_echo(Channel::Hand);

        const CycleOutput out = run_cycle(controller, port);
        port.servo().advance(config.cycle_ms);

        const WorldState world = scenario.world_at(static_cast<std::uint32_t>(t));
        rec.cycle = cycle;
        rec.t_ms = t;
        rec.truth_hand_mm = world.hand;
        rec.truth_bin_mm = world.bin;
        rec.filtered_hand_mm = out.filtered_hand_mm;
        rec.filtered_bin_mm = out.filtered_bin_mm;
        rec.state = out.state;
        rec.lid = out.lid;
        rec.bin_full = out.bin_full;
        rec.servo_command_deg = out.servo_command;
        rec.servo_angle_deg = port.servo().current_angle_deg();
        rec.display = port.display();
        trace.push_back(std::move(rec));
    }
    return trace;
}

}  // namespace smartbin
