#include "smartbin/trace.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <ostream>
#include <sstream>

#include "text_util.hpp"

namespace smartbin {

namespace {

constexpr std::array<std::string_view, 14> kFields = {
    "cycle",           "t_ms",           "truth_hand_mm",   "truth_bin_mm",    "raw_hand",
    "raw_bin",         "filtered_hand_mm", "filtered_bin_mm", "state",          "lid",
    "bin_full",        "servo_command_deg", "servo_angle_deg", "display",
};

constexpr std::string_view kNone = "none";

std::string echo_text(EchoResult e) {
    return e.has_echo() ? std::to_string(e.round_trip().value()) : std::string(kNone);
}

std::array<std::string, kFields.size()> field_values(const TraceRecord& r) {
    return {
        std::to_string(r.cycle),
        std::to_string(r.t_ms),
        r.truth_hand_mm ? std::to_string(r.truth_hand_mm->value()) : std::string(kNone),
        std::to_string(r.truth_bin_mm.value()),
        echo_text(r.raw_hand),
        echo_text(r.raw_bin),
        std::to_string(r.filtered_hand_mm.value()),
        std::to_string(r.filtered_bin_mm.value()),
        std::string(to_string(r.state)),
        std::string(to_string(r.lid)),
        r.bin_full ? "true" : "false",
        r.servo_command_deg ? std::to_string(*r.servo_command_deg) : std::string(kNone),
        std::to_string(r.servo_angle_deg),
        r.display,
    };
}

}  // namespace

std::span<const std::string_view> trace_field_names() { return kFields; }

void write_trace(std::ostream& os, std::span<const TraceRecord> records, TraceFormat format) {
    if (format == TraceFormat::Csv) {
        for (std::size_t i = 0; i < kFields.size(); ++i) {
            os << (i ? "," : "") << kFields[i];
        }
        os << '\n';
    }
    for (const TraceRecord& r : records) {
        const auto values = field_values(r);
        for (std::size_t i = 0; i < kFields.size(); ++i) {
            if (format == TraceFormat::Csv) {
                os << (i ? "," : "") << values[i];
            } else {
                os << (i ? " " : "") << kFields[i] << '=';
                if (kFields[i] == "display") {
                    os << '"' << values[i] << '"';
                } else {
                    os << values[i];
                }
            }
        }
        os << '\n';
    }
}

std::string format_trace(std::span<const TraceRecord> records, TraceFormat format) {
    std::ostringstream os;
    write_trace(os, records, format);
    return os.str();
}

namespace {

using FieldMap = std::map<std::string, std::string, std::less<>>;

class RecordBuilder {
public:
    RecordBuilder(const FieldMap& fields, int line) : fields_(fields), line_(line) {}

    TraceRecord build() const {
        for (const auto& [name, _] : fields_) {
            if (std::find(kFields.begin(), kFields.end(), name) == kFields.end()) {
                fail("unknown field '" + name + "'");
            }
        }
        TraceRecord r;
        r.cycle = unsigned_field("cycle");
        r.t_ms = unsigned_field("t_ms");
        r.truth_hand_mm = optional_mm("truth_hand_mm");
        r.truth_bin_mm = mm("truth_bin_mm");
        r.raw_hand = echo("raw_hand");
        r.raw_bin = echo("raw_bin");
        r.filtered_hand_mm = mm("filtered_hand_mm");
        r.filtered_bin_mm = mm("filtered_bin_mm");
        r.state = system_state(get("state"));
        r.lid = lid_state(get("lid"));
        r.bin_full = boolean(get("bin_full"));
        const std::string& cmd = get("servo_command_deg");
        if (cmd != kNone) {
            r.servo_command_deg = integer(cmd, "servo_command_deg");
        }
        r.servo_angle_deg = integer(get("servo_angle_deg"), "servo_angle_deg");
        r.display = get("display");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw TraceParseError(line_, what); }

    const std::string& get(std::string_view name) const {
        const auto it = fields_.find(name);
        if (it == fields_.end()) {
            fail("missing field '" + std::string(name) + "'");
        }
        return it->second;
    }

    std::uint64_t unsigned_field(std::string_view name) const {
        const auto v = detail::parse_int<std::uint64_t>(get(name));
        if (!v) fail("bad value for " + std::string(name));
        return *v;
    }

    int integer(const std::string& text, std::string_view name) const {
        const auto v = detail::parse_int<int>(text);
        if (!v) fail("bad value for " + std::string(name));
        return *v;
    }

    Millimeters mm(std::string_view name) const {
        const auto v = detail::parse_int<std::uint32_t>(get(name));
        if (!v || *v > Millimeters::kMax) fail("bad distance for " + std::string(name));
        return Millimeters(*v);
    }

    std::optional<Millimeters> optional_mm(std::string_view name) const {
        if (get(name) == kNone) return std::nullopt;
        return mm(name);
    }

    EchoResult echo(std::string_view name) const {
        const std::string& text = get(name);
        if (text == kNone) return EchoResult::no_echo();
        const auto v = detail::parse_int<std::uint32_t>(text);
        if (!v || *v > Micros::kMax) fail("bad echo time for " + std::string(name));
        return EchoResult::echo(Micros(*v));
    }

    SystemState system_state(const std::string& s) const {
        if (s == "Idle") return SystemState::Idle;
        if (s == "Open") return SystemState::Open;
        if (s == "Locked") return SystemState::Locked;
        fail("bad state '" + s + "'");
    }

    LidState lid_state(const std::string& s) const {
        if (s == "Open") return LidState::Open;
        if (s == "Closed") return LidState::Closed;
        fail("bad lid '" + s + "'");
    }

    bool boolean(const std::string& s) const {
        if (s == "true") return true;
        if (s == "false") return false;
        fail("bad boolean '" + s + "'");
    }

    const FieldMap& fields_;
    int line_;
};

FieldMap parse_keyvalue_line(std::string_view line, int line_no) {
    FieldMap fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const auto eq = line.find('=', i);
        if (eq == std::string_view::npos) {
            throw TraceParseError(line_no, "expected name=value");
        }
        std::string key(line.substr(i, eq - i));
        std::string value;
        i = eq + 1;
        if (i < line.size() && line[i] == '"') {
            const auto close = line.find('"', i + 1);
            if (close == std::string_view::npos) {
                throw TraceParseError(line_no, "unterminated quote in " + key);
            }
            value = std::string(line.substr(i + 1, close - i - 1));
            i = close + 1;
        } else {
            const auto end = line.find_first_of(" \t", i);
            const auto stop = end == std::string_view::npos ? line.size() : end;
            value = std::string(line.substr(i, stop - i));
            i = stop;
        }
        if (!fields.emplace(key, std::move(value)).second) {
            throw TraceParseError(line_no, "duplicate field '" + key + "'");
        }
    }
    return fields;
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::vector<TraceRecord> parse_trace(std::string_view text) {
    std::vector<TraceRecord> records;
    std::vector<std::string> header;
    bool format_known = false;
    bool csv = false;

    int line_no = 0;
    for (std::string_view raw : detail::split_lines(text)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (detail::trim(raw).empty()) continue;

        if (!format_known) {
            format_known = true;
            csv = raw.find('=') == std::string_view::npos;
            if (csv) {
                header = split_csv(raw);
                continue;
            }
        }

        FieldMap fields;
        if (csv) {
            const auto cells = split_csv(raw);
            if (cells.size() != header.size()) {
                throw TraceParseError(line_no, "expected " + std::to_string(header.size()) + " columns, got " +
                                                   std::to_string(cells.size()));
            }
            for (std::size_t i = 0; i < cells.size(); ++i) {
                fields.emplace(header[i], cells[i]);
            }
        } else {
            fields = parse_keyvalue_line(raw, line_no);
        }
        records.push_back(RecordBuilder(fields, line_no).build());
    }
    if (records.empty()) {
        throw TraceParseError(0, "trace contains no records");
    }
    return records;
}

}  // namespace smartbin
