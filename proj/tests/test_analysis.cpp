#include <gtest/gtest.h>

#include "oracles.hpp"
#include "smartbin/analysis.hpp"
#include "smartbin/simulation.hpp"

namespace smartbin {
namespace {

struct SimRun {
    Scenario scenario;
    ControlConfig config;
    std::vector<TraceRecord> trace;
};

SimRun simulate(std::string_view scenario_text, ControlConfig config = {}) {
    Scenario s = parse_scenario(scenario_text);
    auto trace = run_simulation(s, config, NoiseModel{});
    return {std::move(s), config, std::move(trace)};
}

constexpr std::string_view kHandStep = "0 bin 200\n1000 hand 40\nduration 3000";

TEST(Metrics, HandStepMeetsBudget) {
    const SimRun run = simulate(kHandStep);
    const auto expected = oracle::hand_step_timeline(1000, 100, 3, 180, 600);
    ASSERT_EQ(expected.latency_ms, 500);

    const Metrics m = compute_metrics(run.trace, run.scenario, run.config);
    EXPECT_EQ(m.stimuli, 1u);
    EXPECT_EQ(m.missed_stimuli, 0u);
    ASSERT_EQ(m.response_latencies_ms, std::vector<std::uint64_t>{500});
    EXPECT_DOUBLE_EQ(m.mean_latency_ms(), 500.0);
    EXPECT_EQ(m.open_events, 1u);
    EXPECT_EQ(m.close_events, 0u);
    EXPECT_EQ(m.chatter_score, 0u);
    EXPECT_TRUE(m.budget_pass());
}

TEST(Metrics, QuiescentTraceHasNoLatencies) {
    const SimRun run = simulate("duration 1000");
    const Metrics m = compute_metrics(run.trace, run.scenario, run.config);
    EXPECT_TRUE(m.response_latencies_ms.empty());
    EXPECT_EQ(m.stimuli, 0u);
    EXPECT_TRUE(m.budget_pass());
}

TEST(Metrics, SlowServoBlowsBudget) {
    ControlConfig slow;
    slow.servo_speed_deg_per_s = 200;
    const auto expected = oracle::hand_step_timeline(1000, 100, 3, 180, 200);
    ASSERT_EQ(expected.latency_ms, 1100);

    const SimRun run = simulate(kHandStep, slow);
    const Metrics m = compute_metrics(run.trace, run.scenario, run.config);
    ASSERT_EQ(m.response_latencies_ms, std::vector<std::uint64_t>{1100});
    EXPECT_FALSE(m.budget_pass());
    EXPECT_EQ(m.within_budget(), 0u);
}

TEST(Metrics, OffGridArrivalMeasuredFromEventTime) {
    // Arrival at 1050 is first sampled at 1100, so detection takes 250 ms.
    const SimRun run = simulate("0 bin 200\n1050 hand 40\nduration 3000");
    const Metrics m = compute_metrics(run.trace, run.scenario, run.config);
    ASSERT_EQ(m.response_latencies_ms, std::vector<std::uint64_t>{550});
}

TEST(Metrics, CountsEventsLockoutsAndMisses) {
    const SimRun run = simulate(
        "0 bin 200\n"
        "500 hand 40\n1500 hand none\n"     // opens and closes
        "2500 hand 40\n2600 hand none\n"    // one-sample blip, rejected by the median
        "3500 bin 20\n4000 hand 40\n"       // hand while locked is not a stimulus
        "5000 hand none\n5500 bin 300\n"
        "duration 7000");
    const Metrics m = compute_metrics(run.trace, run.scenario, run.config);
    EXPECT_EQ(m.open_events, 1u);
    EXPECT_EQ(m.close_events, 1u);
    EXPECT_EQ(m.lockout_entries, 1u);
    EXPECT_EQ(m.stimuli, 2u);
    EXPECT_EQ(m.missed_stimuli, 1u);
    EXPECT_EQ(m.chatter_score, 0u);
}

TEST(Metrics, UnattributedTransitionCountsAsChatter) {
    SimRun run = simulate("duration 2000");
    run.trace[8].lid = LidState::Open;
    run.trace[8].servo_command_deg = 180;
    run.trace[9].lid = LidState::Open;
    const Metrics m = compute_metrics(run.trace, run.scenario, run.config);
    EXPECT_EQ(m.chatter_score, 2u);  // open at 8, close at 10
}

TEST(Metrics, RejectsMismatchedScenario) {
    const SimRun run = simulate(kHandStep);
    EXPECT_THROW(compute_metrics(run.trace, parse_scenario("duration 1000"), run.config), TraceMismatch);
    EXPECT_THROW(compute_metrics(run.trace, parse_scenario("0 bin 200\n1000 hand 45\nduration 3000"), run.config),
                 TraceMismatch);
    ControlConfig other;
    other.cycle_ms = 50;
    EXPECT_THROW(compute_metrics(run.trace, run.scenario, other), TraceMismatch);
}

TEST(CheckTrace, SimulatedTracePassesEveryCheck) {
    const SimRun run = simulate("0 bin 200\n500 hand 40\n1500 bin 25\n2500 bin 300\nduration 4000");
    const InvariantReport report = check_trace(run.trace, run.config);
    EXPECT_TRUE(report.all_passed()) << format_report(report);
    EXPECT_EQ(report.checks.size(), 6u);
    for (auto name : {"timeline", "lockout_safety", "command_dedup", "state_flag_coherence", "display_consistency",
                      "servo_motion_bound"}) {
        EXPECT_NE(report.find(name), nullptr) << name;
    }
}

TEST(CheckTrace, SeededLockoutFaultNamesCycle) {
    SimRun run = simulate("0 bin 25\nduration 1500");
    ASSERT_TRUE(run.trace[7].bin_full);
    run.trace[7].lid = LidState::Open;
    const InvariantReport report = check_trace(run.trace, run.config);
    EXPECT_FALSE(report.all_passed());
    const InvariantCheck* lockout = report.find("lockout_safety");
    ASSERT_NE(lockout, nullptr);
    EXPECT_FALSE(lockout->passed);
    EXPECT_EQ(lockout->first_offending_cycle, 7u);
    EXPECT_NE(format_report(report).find("FAIL lockout_safety (first offending cycle 7)"), std::string::npos);
}

TEST(CheckTrace, DetectsDuplicateCommandsAndServoJumps) {
    SimRun run = simulate("duration 1000");
    run.trace[3].servo_command_deg = 0;
    run.trace[5].servo_angle_deg = 90;
    const InvariantReport report = check_trace(run.trace, run.config);
    EXPECT_EQ(report.find("command_dedup")->first_offending_cycle, 3u);
    EXPECT_EQ(report.find("servo_motion_bound")->first_offending_cycle, 5u);
    EXPECT_TRUE(report.find("lockout_safety")->passed);
}

TEST(CheckTrace, DetectsIncoherentStateAndDisplay) {
    SimRun run = simulate("duration 1000");
    run.trace[2].state = SystemState::Locked;
    run.trace[4].display = "Bin: 1 mm";
    run.trace[6].cycle = 60;
    const InvariantReport report = check_trace(run.trace, run.config);
    EXPECT_EQ(report.find("state_flag_coherence")->first_offending_cycle, 2u);
    EXPECT_EQ(report.find("display_consistency")->first_offending_cycle, 4u);
    EXPECT_EQ(report.find("timeline")->first_offending_cycle, 60u);
}

TEST(CheckTrace, EmptyTraceIsAnError) {
    EXPECT_THROW(check_trace({}, ControlConfig{}), std::invalid_argument);
}

}  // namespace
}  // namespace smartbin
