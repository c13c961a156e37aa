#pragma once

// Test-only reference computations. These deliberately avoid the library's
// integer code paths so they can check them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace smartbin::oracle {

/// d = v t / 2 in floating point, v = 343 m/s, rounded half-up.
inline std::int64_t tof_distance_mm(double round_trip_us, double speed_m_per_s = 343.0) {
    const double mm = speed_m_per_s * (round_trip_us * 1e-6) / 2.0 * 1000.0;
    return static_cast<std::int64_t>(std::floor(mm + 0.5));
}

/// t = 2 d / v in floating point, rounded half-up.
inline std::int64_t tof_round_trip_us(double distance_mm, double speed_m_per_s = 343.0) {
    const double us = 2.0 * (distance_mm / 1000.0) / speed_m_per_s * 1e6;
    return static_cast<std::int64_t>(std::floor(us + 0.5));
}

/// Median by full sort of the trailing window; upper median on even counts.
inline std::uint32_t sorted_median(const std::vector<std::uint32_t>& history, std::size_t window) {
    const std::size_t n = std::min(window, history.size());
    std::vector<std::uint32_t> w(history.end() - static_cast<std::ptrdiff_t>(n), history.end());
    std::sort(w.begin(), w.end());
    return w[w.size() / 2];
}

inline std::int64_t servo_pulse_us(double angle, double min_us, double max_us) {
    return static_cast<std::int64_t>(std::floor(min_us + angle * (max_us - min_us) / 180.0 + 0.5));
}

/// Cycle-counting model of the hand-step response in the closed-loop
/// simulator: the reading captured at the arrival sample is consumed one
/// cycle later, the median needs (window+1)/2 in-range samples to flip, then
/// the servo covers the travel in whole-degree steps of speed*cycle/1000.
struct HandStepTimeline {
    std::int64_t command_ms;
    std::int64_t fully_open_ms;
    std::int64_t latency_ms;
};

inline HandStepTimeline hand_step_timeline(std::int64_t arrival_ms, std::int64_t cycle_ms, std::int64_t window,
                                           std::int64_t travel_deg, std::int64_t speed_deg_per_s) {
    const std::int64_t samples_needed = (window + 1) / 2;
    const std::int64_t command = arrival_ms + samples_needed * cycle_ms;
    const std::int64_t step = speed_deg_per_s * cycle_ms / 1000;
    const std::int64_t travel_cycles = (travel_deg + step - 1) / step;
    const std::int64_t done = command + travel_cycles * cycle_ms;
    return {command, done, done - arrival_ms};
}

}  // namespace smartbin::oracle
