#include "smartbin/sensing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace smartbin {

Micros::Micros(std::uint32_t value) : value_(value) {
    if (value > kMax) {
        throw std::out_of_range("Micros: " + std::to_string(value) + " exceeds " + std::to_string(kMax));
    }
}

Millimeters::Millimeters(std::uint32_t value) : value_(value) {
    if (value > kMax) {
        throw std::out_of_range("Millimeters: " + std::to_string(value) + " exceeds " +
                                std::to_string(kMax));
    }
}

std::optional<Millimeters> echo_to_distance(EchoResult echo, SpeedOfSound speed) {
    if (!echo.has_echo()) {
        return std::nullopt;
    }
    // v [m/s] == v [µm/µs]; d [mm] = v * t / 2000, rounded half-up.
    const std::uint64_t num = std::uint64_t{speed.m_per_s} * echo.round_trip().value();
    const std::uint64_t mm = (num + 1000) / 2000;
    return Millimeters(static_cast<std::uint32_t>(std::min<std::uint64_t>(mm, Millimeters::kMax)));
}

Micros distance_to_echo(Millimeters d, SpeedOfSound speed) {
    if (speed.m_per_s == 0) {
        throw std::invalid_argument("distance_to_echo: speed of sound must be positive");
    }
    // t [µs] = 2000 * d / v, rounded half-up: floor((4000 d + v) / 2v).
    const std::uint64_t v = speed.m_per_s;
    const std::uint64_t us = (4000 * std::uint64_t{d.value()} + v) / (2 * v);
    if (us > Micros::kMax) {
        throw std::out_of_range("distance_to_echo: round trip exceeds one second");
    }
    return Micros(static_cast<std::uint32_t>(us));
}

MedianFilter::MedianFilter(std::size_t capacity) : capacity_(capacity), ring_(capacity) {
    if (capacity == 0 || capacity % 2 == 0) {
        throw std::invalid_argument("MedianFilter: capacity must be odd and >= 1, got " +
                                    std::to_string(capacity));
    }
}

Millimeters MedianFilter::push(Millimeters sample) {
    ring_[head_] = sample;
    head_ = (head_ + 1) % capacity_;
    count_ = std::min(count_ + 1, capacity_);

    std::vector<Millimeters> window = contents();
    const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
    std::nth_element(window.begin(), mid, window.end());
    return *mid;
}

std::vector<Millimeters> MedianFilter::contents() const {
    std::vector<Millimeters> out;
    out.reserve(count_);
    const std::size_t start = (head_ + capacity_ - count_) % capacity_;
    for (std::size_t i = 0; i < count_; ++i) {
        out.push_back(ring_[(start + i) % capacity_]);
    }
    return out;
}

Hysteresis Hysteresis::update(Millimeters value, Millimeters set_at, Millimeters clear_at) const {
    if (clear_at < set_at) {
        throw std::invalid_argument("Hysteresis: clear threshold below set threshold");
    }
    if (value <= set_at) {
        return Hysteresis(true);
    }
    if (value > clear_at) {
        return Hysteresis(false);
    }
    return *this;
}

}  // namespace smartbin
