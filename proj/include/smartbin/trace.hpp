#pragma once

// Per-cycle simulation log and its two text serializations.
//
// keyvalue: one record per line, `name=value` pairs separated by spaces in
//           field order; the display text is double-quoted.
// csv:      header row of field names, then one comma-separated row per record.
//
// Absent values (no hand, NoEcho, no servo command) are written as `none`.
// Raw echoes are round-trip times in microseconds.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smartbin/controller.hpp"
#include "smartbin/sensing.hpp"

namespace smartbin {

struct TraceRecord {
    std::uint64_t cycle = 0;
    std::uint64_t t_ms = 0;
    std::optional<Millimeters> truth_hand_mm;
    Millimeters truth_bin_mm;
    EchoResult raw_hand = EchoResult::no_echo();
    EchoResult raw_bin = EchoResult::no_echo();
    Millimeters filtered_hand_mm;
    Millimeters filtered_bin_mm;
    SystemState state = SystemState::Idle;
    LidState lid = LidState::Closed;
    bool bin_full = false;
    std::optional<int> servo_command_deg;
    int servo_angle_deg = 0;
    std::string display;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

enum class TraceFormat { KeyValue, Csv };

/// Field names in serialization order.
std::span<const std::string_view> trace_field_names();

void write_trace(std::ostream& os, std::span<const TraceRecord> records, TraceFormat format);
std::string format_trace(std::span<const TraceRecord> records, TraceFormat format);

class TraceParseError : public std::runtime_error {
public:
    TraceParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Detects the format from the first non-blank line. An input without any
/// record is an error.
std::vector<TraceRecord> parse_trace(std::string_view text);

}  // namespace smartbin
