#include "smartbin/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smartbin {

namespace {
constexpr std::uint32_t kPpm = 1'000'000;
}

void NoiseModel::validate() const {
    if (dropout_ppm > kPpm) {
        throw std::invalid_argument("noise: dropout probability above 1");
    }
}

std::uint32_t NoiseModel::probability_to_ppm(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("noise: dropout probability must be in [0, 1]");
    }
    return static_cast<std::uint32_t>(std::llround(p * kPpm));
}

double NoiseStream::gaussian() {
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

EchoResult synthesize_echo(std::optional<Millimeters> true_distance, const NoiseModel& noise,
                           NoiseStream& stream, Micros echo_timeout, SpeedOfSound speed) {
    if (!true_distance) {
        return EchoResult::no_echo();
    }
    const std::uint64_t u32 = stream.next_u64() >> 32;
    if (u32 * kPpm < (std::uint64_t{noise.dropout_ppm} << 32)) {
        return EchoResult::no_echo();
    }

    std::int64_t mm = true_distance->value();
    if (noise.sigma_mm > 0) {
        const double noisy = static_cast<double>(mm) + noise.sigma_mm * stream.gaussian();
        mm = static_cast<std::int64_t>(std::floor(noisy + 0.5));
    }
    mm = std::clamp<std::int64_t>(mm, 0, Millimeters::kMax);

    const Micros t = distance_to_echo(Millimeters(static_cast<std::uint32_t>(mm)), speed);
    if (t >= echo_timeout) {
        return EchoResult::no_echo();
    }
    return EchoResult::echo(t);
}

}  // namespace smartbin
