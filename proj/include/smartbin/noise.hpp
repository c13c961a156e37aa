#pragma once

// Deterministic measurement noise for the simulator.
//
// Sampling pipeline (fixed so traces are reproducible bit-for-bit):
//   generator   std::mt19937_64, one per sensor channel, seeded with
//               seed XOR channel index (hand = 0, bin = 1)
//   uniform     (next() >> 11) * 2^-53, in [0, 1)
//   dropout     one draw per present-target measurement: the top 32 bits u
//               drop the echo iff u * 10^6 < dropout_ppm * 2^32
//   gaussian    Marsaglia polar method on 2u - 1 pairs, spare discarded,
//               drawn only when sigma_mm > 0 and the echo was not dropped
//   distance    floor(true + sigma * z + 0.5), clamped to [0, 4000] mm
// An absent target consumes no draws.

#include <cstdint>
#include <optional>
#include <random>

#include "smartbin/sensing.hpp"

namespace smartbin {

struct NoiseModel {
    std::uint32_t sigma_mm = 0;
    std::uint32_t dropout_ppm = 0;  // probability of NoEcho, parts per million
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument if dropout_ppm > 10^6.
    void validate() const;

    /// Converts a probability in [0, 1] to ppm, rounding to nearest.
    static std::uint32_t probability_to_ppm(double p);
};

/// Per-channel generator state for synthesize_echo.
class NoiseStream {
public:
    NoiseStream(std::uint64_t seed, std::uint64_t channel_index) : engine_(seed ^ channel_index) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Standard normal deviate.
    double gaussian();

private:
    std::mt19937_64 engine_;
};

/// Synthesizes one echo for a ground-truth distance; absent targets and
/// dropouts yield NoEcho, as do round trips at or beyond `echo_timeout`.
EchoResult synthesize_echo(std::optional<Millimeters> true_distance, const NoiseModel& noise,
                           NoiseStream& stream, Micros echo_timeout = Micros(30'000),
                           SpeedOfSound speed = kSpeedOfSoundAir);

}  // namespace smartbin
