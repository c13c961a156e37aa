#include "smartbin/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace smartbin {

double Metrics::mean_latency_ms() const {
    if (response_latencies_ms.empty()) {
        return 0.0;
    }
    const auto sum = std::accumulate(response_latencies_ms.begin(), response_latencies_ms.end(), std::uint64_t{0});
    return static_cast<double>(sum) / static_cast<double>(response_latencies_ms.size());
}

std::uint64_t Metrics::max_latency_ms() const {
    return response_latencies_ms.empty()
               ? 0
               : *std::max_element(response_latencies_ms.begin(), response_latencies_ms.end());
}

std::uint64_t Metrics::within_budget() const {
    return static_cast<std::uint64_t>(std::count_if(response_latencies_ms.begin(), response_latencies_ms.end(),
                                                    [](std::uint64_t l) { return l <= kResponseBudgetMs; }));
}

bool Metrics::budget_pass() const { return max_latency_ms() <= kResponseBudgetMs; }

namespace {

void verify_correspondence(std::span<const TraceRecord> trace, const Scenario& scenario,
                           const ControlConfig& config) {
    const std::uint64_t expected = (std::uint64_t{scenario.duration_ms()} + config.cycle_ms - 1) / config.cycle_ms;
    if (trace.size() != expected) {
        throw TraceMismatch("trace has " + std::to_string(trace.size()) + " cycles, scenario implies " +
                            std::to_string(expected));
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceRecord& r = trace[i];
        if (r.cycle != i || r.t_ms != i * std::uint64_t{config.cycle_ms}) {
            throw TraceMismatch("cycle " + std::to_string(i) + ": timeline does not match cycle_ms=" +
                                std::to_string(config.cycle_ms));
        }
        const WorldState world = scenario.world_at(static_cast<std::uint32_t>(r.t_ms));
        if (world.hand != r.truth_hand_mm || world.bin != r.truth_bin_mm) {
            throw TraceMismatch("cycle " + std::to_string(i) + ": ground truth differs from scenario");
        }
    }
}

bool hand_in_range(const TraceRecord& r, const ControlConfig& config) {
    return r.truth_hand_mm && *r.truth_hand_mm <= config.hand_set_mm;
}

std::uint64_t hand_arrival_ms(const Scenario& scenario, std::uint64_t t_ms) {
    std::uint64_t at = 0;
    for (const ScenarioEvent& e : scenario.events()) {
        if (e.at_ms > t_ms) break;
        if (e.target == Target::Hand) at = e.at_ms;
    }
    return at;
}

}  // namespace

Metrics compute_metrics(std::span<const TraceRecord> trace, const Scenario& scenario, const ControlConfig& config) {
    config.validate();
    verify_correspondence(trace, scenario, config);

    Metrics m;
    std::vector<std::size_t> transitions;
    std::vector<std::size_t> changes;
    LidState prev_lid = LidState::Closed;
    bool prev_full = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceRecord& r = trace[i];
        if (r.lid != prev_lid) {
            (r.lid == LidState::Open ? m.open_events : m.close_events) += 1;
            transitions.push_back(i);
        }
        if (r.bin_full && !prev_full) {
            ++m.lockout_entries;
        }
        if (i == 0 || r.truth_hand_mm != trace[i - 1].truth_hand_mm || r.truth_bin_mm != trace[i - 1].truth_bin_mm) {
            changes.push_back(i);
        }
        prev_lid = r.lid;
        prev_full = r.bin_full;
    }

    for (std::size_t c : transitions) {
        const bool attributable = std::any_of(changes.begin(), changes.end(), [&](std::size_t g) {
            return g <= c && c - g <= kChatterWindowCycles;
        });
        if (!attributable) ++m.chatter_score;
    }

    std::vector<std::size_t> arrivals;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (hand_in_range(trace[i], config) && (i == 0 || !hand_in_range(trace[i - 1], config))) {
            arrivals.push_back(i);
        }
    }

    for (std::size_t k = 0; k < arrivals.size(); ++k) {
        const std::size_t a = arrivals[k];
        const std::size_t next = k + 1 < arrivals.size() ? arrivals[k + 1] : trace.size();
        const LidState lid_before = a == 0 ? LidState::Closed : trace[a - 1].lid;
        if (trace[a].state == SystemState::Locked || trace[a].truth_bin_mm <= config.full_set_mm ||
            lid_before == LidState::Open) {
            continue;
        }
        ++m.stimuli;

        std::optional<std::size_t> command;
        for (std::size_t c = a; c < next; ++c) {
            if (trace[c].servo_command_deg == config.open_angle_deg) {
                command = c;
                break;
            }
        }
        std::optional<std::size_t> reached;
        if (command) {
            for (std::size_t r = *command; r < trace.size(); ++r) {
                if (r > *command && trace[r].lid == LidState::Closed) break;
                if (trace[r].servo_angle_deg == config.open_angle_deg) {
                    reached = r;
                    break;
                }
            }
        }
        if (!reached) {
            ++m.missed_stimuli;
            continue;
        }
        const std::uint64_t done_ms = trace[*reached].t_ms + config.cycle_ms;
        m.response_latencies_ms.push_back(done_ms - hand_arrival_ms(scenario, trace[a].t_ms));
    }
    return m;
}

std::string format_metrics(const Metrics& m) {
    std::ostringstream os;
    os << "open_events=" << m.open_events << '\n'
       << "close_events=" << m.close_events << '\n'
       << "lockout_entries=" << m.lockout_entries << '\n'
       << "chatter_score=" << m.chatter_score << '\n'
       << "stimuli=" << m.stimuli << '\n'
       << "missed_stimuli=" << m.missed_stimuli << '\n'
       << "stimuli_within_budget=" << m.within_budget() << '\n'
       << "response_latencies_ms=";
    for (std::size_t i = 0; i < m.response_latencies_ms.size(); ++i) {
        os << (i ? "," : "") << m.response_latencies_ms[i];
    }
    os << '\n'
       << "mean_latency_ms=" << m.mean_latency_ms() << '\n'
       << "max_latency_ms=" << m.max_latency_ms() << '\n'
       << "budget_ms=" << kResponseBudgetMs << '\n'
       << "budget=" << (m.budget_pass() ? "pass" : "fail") << '\n';
    return os.str();
}

bool InvariantReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

const InvariantCheck* InvariantReport::find(std::string_view name) const {
    const auto it = std::find_if(checks.begin(), checks.end(), [&](const InvariantCheck& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
}

namespace {

class CheckBuilder {
public:
    explicit CheckBuilder(std::string name) { check_.name = std::move(name); }

    void fail_at(const TraceRecord& r, std::string detail) {
        if (check_.passed) {
            check_.passed = false;
            check_.first_offending_cycle = r.cycle;
            check_.detail = std::move(detail);
        }
    }
    InvariantCheck done() { return std::move(check_); }

private:
    InvariantCheck check_;
};

}  // namespace

InvariantReport check_trace(std::span<const TraceRecord> trace, const ControlConfig& config) {
    if (trace.empty()) {
        throw std::invalid_argument("check_trace: empty trace");
    }
    config.validate();

    CheckBuilder timeline("timeline");
    CheckBuilder lockout("lockout_safety");
    CheckBuilder dedup("command_dedup");
    CheckBuilder coherence("state_flag_coherence");
    CheckBuilder display("display_consistency");
    CheckBuilder motion("servo_motion_bound");

    const auto angle_for = [&](LidState lid) {
        return lid == LidState::Open ? config.open_angle_deg : config.closed_angle_deg;
    };
    const std::int64_t max_step = std::int64_t{config.servo_speed_deg_per_s} * config.cycle_ms / 1000;

    LidState prev_lid = LidState::Closed;
    int prev_angle = config.closed_angle_deg;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceRecord& r = trace[i];

        if (r.cycle != i || r.t_ms != r.cycle * config.cycle_ms) {
            timeline.fail_at(r, "expected cycle " + std::to_string(i) + " at t_ms=" +
                                    std::to_string(i * std::uint64_t{config.cycle_ms}));
        }

        if (r.bin_full && r.lid == LidState::Open) {
            lockout.fail_at(r, "bin_full=true with lid=Open");
        } else if (r.bin_full && r.servo_command_deg == config.open_angle_deg) {
            lockout.fail_at(r, "open command issued while bin_full=true");
        }

        const bool transition = r.lid != prev_lid;
        if (transition != r.servo_command_deg.has_value()) {
            dedup.fail_at(r, transition ? "lid changed without a servo command"
                                        : "servo command without a lid change");
        } else if (transition && *r.servo_command_deg != angle_for(r.lid)) {
            dedup.fail_at(r, "servo command " + std::to_string(*r.servo_command_deg) + " does not match lid " +
                                 std::string(to_string(r.lid)));
        }

        if ((r.state == SystemState::Locked) != r.bin_full) {
            coherence.fail_at(r, "state Locked must coincide with bin_full");
        } else if (r.state == SystemState::Open && r.lid != LidState::Open) {
            coherence.fail_at(r, "state Open with lid Closed");
        } else if (r.state == SystemState::Idle && r.lid != LidState::Closed) {
            coherence.fail_at(r, "state Idle with lid Open");
        }

        const std::string expected_display =
            r.bin_full ? render_display(BinFull{}) : render_display(BinDistance{r.filtered_bin_mm});
        if (r.display != expected_display) {
            display.fail_at(r, "expected \"" + expected_display + "\", got \"" + r.display + "\"");
        }

        const std::int64_t step = std::llabs(std::int64_t{r.servo_angle_deg} - prev_angle);
        if (step > max_step) {
            motion.fail_at(r, "servo moved " + std::to_string(step) + " deg in one cycle (limit " +
                                  std::to_string(max_step) + ")");
        } else if (r.servo_angle_deg < config.closed_angle_deg || r.servo_angle_deg > config.open_angle_deg) {
            motion.fail_at(r, "servo angle " + std::to_string(r.servo_angle_deg) + " outside travel range");
        }

        prev_lid = r.lid;
        prev_angle = r.servo_angle_deg;
    }

    InvariantReport report;
    for (CheckBuilder* b : {&timeline, &lockout, &dedup, &coherence, &display, &motion}) {
        report.checks.push_back(b->done());
    }
    return report;
}

std::string format_report(const InvariantReport& report) {
    std::ostringstream os;
    for (const InvariantCheck& c : report.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed) {
            os << " (first offending cycle " << *c.first_offending_cycle << "): " << c.detail;
        }
        os << '\n';
    }
    os << (report.all_passed() ? "all checks passed" : "invariant violations found") << '\n';
    return os.str();
}

}  // namespace smartbin
