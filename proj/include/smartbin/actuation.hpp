#pragma once

// Servo PWM mapping, display text, and the hardware port contract that
// separates the control loop from real or simulated peripherals.

#include <cstdint>
#include <string>
#include <variant>

#include "smartbin/sensing.hpp"

namespace smartbin {

/// Pulse-width calibration of a hobby servo (SG90 full-travel defaults).
struct ServoProfile {
    Micros pwm_period_us{20'000};
    Micros min_pulse_us{500};   // pulse at 0 deg
    Micros max_pulse_us{2500};  // pulse at 180 deg

    /// Throws std::invalid_argument unless min < max < period.
    void validate() const;
};

/// Linear angle-to-pulse map over [0, 180] deg, rounded half-up.
Micros angle_to_pulse(int angle_deg, const ServoProfile& profile);

/// Exact duty fraction pulse / period.
struct DutyCycle {
    std::uint32_t pulse_us;
    std::uint32_t period_us;

    /// Parts per million, rounded half-up.
    std::uint32_t ppm() const;
};

DutyCycle pulse_to_duty(Micros pulse, const ServoProfile& profile);

struct BinDistance {
    Millimeters mm;
    friend bool operator==(const BinDistance&, const BinDistance&) = default;
};
struct BinFull {
    friend bool operator==(const BinFull&, const BinFull&) = default;
};
using DisplayContent = std::variant<BinDistance, BinFull>;

/// "Bin Full" or "Bin: <d> mm".
std::string render_display(const DisplayContent& content);

enum class Channel { Hand, Bin };

/// Minimal capability set the control loop needs from the board.
///
/// A firmware port binds these to GPIO trigger/echo pins, a timer PWM channel
/// and the I2C display; the simulator binds them to the scripted world.
class HardwarePort {
public:
    virtual ~HardwarePort() = default;

    virtual void trigger_pulse(Channel channel) = 0;
    /// Returns the most recent completed capture on `channel`.
    virtual EchoResult await_echo(Channel channel) = 0;
    virtual void set_servo_pulse(Micros pulse) = 0;
    virtual void write_display(const std::string& text) = 0;
};

}  // namespace smartbin
