#include "smartbin/actuation.hpp"

#include <stdexcept>

namespace smartbin {

void ServoProfile::validate() const {
    if (!(min_pulse_us < max_pulse_us)) {
        throw std::invalid_argument("servo profile: min_pulse_us must be below max_pulse_us");
    }
    if (!(max_pulse_us < pwm_period_us)) {
        throw std::invalid_argument("servo profile: max_pulse_us must be below pwm_period_us");
    }
}

Micros angle_to_pulse(int angle_deg, const ServoProfile& profile) {
    if (angle_deg < 0 || angle_deg > 180) {
        throw std::out_of_range("angle_to_pulse: angle " + std::to_string(angle_deg) +
                                " outside [0, 180]");
    }
    profile.validate();
    const std::uint64_t span = profile.max_pulse_us.value() - profile.min_pulse_us.value();
    // min + angle * span / 180, rounded half-up
    const std::uint64_t offset = (2 * static_cast<std::uint64_t>(angle_deg) * span + 180) / 360;
    return Micros(profile.min_pulse_us.value() + static_cast<std::uint32_t>(offset));
}

std::uint32_t DutyCycle::ppm() const {
    return static_cast<std::uint32_t>((2'000'000ULL * pulse_us + period_us) / (2ULL * period_us));
}

DutyCycle pulse_to_duty(Micros pulse, const ServoProfile& profile) {
    profile.validate();
    if (pulse > profile.pwm_period_us) {
        throw std::out_of_range("pulse_to_duty: pulse " + std::to_string(pulse.value()) +
                                " us exceeds period");
    }
    return DutyCycle{pulse.value(), profile.pwm_period_us.value()};
}

namespace {
struct Renderer {
    std::string operator()(const BinFull&) const { return "Bin Full"; }
    std::string operator()(const BinDistance& d) const {
        return "Bin: " + std::to_string(d.mm.value()) + " mm";
    }
};
}  // namespace

std::string render_display(const DisplayContent& content) {
    return std::visit(Renderer{}, content);
}

}  // namespace smartbin
