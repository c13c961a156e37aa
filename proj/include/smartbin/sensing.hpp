#pragma once

// Ultrasonic time-of-flight conversion and the smoothing primitives the
// control loop applies before thresholding.
//
// All arithmetic is integer: distances in millimeters, times in microseconds.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace smartbin {

/// Duration in microseconds, bounded to one second.
class Micros {
public:
    static constexpr std::uint32_t kMax = 1'000'000;

    constexpr Micros() = default;
    /// Throws std::out_of_range when `value` exceeds kMax.
    explicit Micros(std::uint32_t value);

    constexpr std::uint32_t value() const { return value_; }
    friend constexpr auto operator<=>(Micros, Micros) = default;

private:
    std::uint32_t value_ = 0;
};

/// Distance in millimeters, bounded by the sensor working range.
class Millimeters {
public:
    static constexpr std::uint32_t kMax = 4000;

    constexpr Millimeters() = default;
    /// Throws std::out_of_range when `value` exceeds kMax.
    explicit Millimeters(std::uint32_t value);

    static constexpr Millimeters max_range() { return Millimeters(Raw{}, kMax); }

    constexpr std::uint32_t value() const { return value_; }
    friend constexpr auto operator<=>(Millimeters, Millimeters) = default;

private:
    struct Raw {};
    constexpr Millimeters(Raw, std::uint32_t v) : value_(v) {}
    std::uint32_t value_ = 0;
};

/// A single ultrasonic measurement: a round-trip time, or a timeout.
class EchoResult {
public:
    static EchoResult echo(Micros round_trip) { return EchoResult(round_trip); }
    static EchoResult no_echo() { return EchoResult(std::nullopt); }

    bool has_echo() const { return round_trip_.has_value(); }
    /// Precondition: has_echo().
    Micros round_trip() const { return *round_trip_; }

    friend bool operator==(const EchoResult&, const EchoResult&) = default;

private:
    explicit EchoResult(std::optional<Micros> t) : round_trip_(t) {}
    std::optional<Micros> round_trip_;
};

/// Speed of sound in whole meters per second (numerically equal to µm/µs).
struct SpeedOfSound {
    std::uint32_t m_per_s = 343;
};

inline constexpr SpeedOfSound kSpeedOfSoundAir{343};

/// d = v * t / 2, rounded half-up, saturating at the sensor range.
/// NoEcho yields nullopt; callers treat it as maximum range.
std::optional<Millimeters> echo_to_distance(EchoResult echo, SpeedOfSound speed = kSpeedOfSoundAir);

/// t = 2 * d / v, rounded half-up.
Micros distance_to_echo(Millimeters d, SpeedOfSound speed = kSpeedOfSoundAir);

/// Running median over the most recent `capacity` samples.
///
/// Before the window fills, the median is taken over the samples present;
/// with an even count the upper median is returned so the output is always
/// one of the buffered samples.
class MedianFilter {
public:
    /// Throws std::invalid_argument unless capacity is odd and >= 1.
    explicit MedianFilter(std::size_t capacity);

    Millimeters push(Millimeters sample);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return count_; }
    /// Samples oldest-first.
    std::vector<Millimeters> contents() const;

private:
    std::size_t capacity_;
    std::vector<Millimeters> ring_;
    std::size_t head_ = 0;  // next write slot
    std::size_t count_ = 0;
};

/// Dual-threshold latch: asserts at or below `set_at`, releases above `clear_at`.
class Hysteresis {
public:
    constexpr Hysteresis() = default;
    constexpr explicit Hysteresis(bool active) : active_(active) {}

    bool active() const { return active_; }

    /// Throws std::invalid_argument if clear_at < set_at.
    Hysteresis update(Millimeters value, Millimeters set_at, Millimeters clear_at) const;

    friend constexpr bool operator==(Hysteresis, Hysteresis) = default;

private:
    bool active_ = false;
};

}  // namespace smartbin
