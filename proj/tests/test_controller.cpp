#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "random_world.hpp"
#include "smartbin/controller.hpp"

namespace smartbin {
namespace {

EchoResult at_mm(std::uint32_t d) { return EchoResult::echo(distance_to_echo(Millimeters(d))); }
EchoResult us(std::uint32_t t) { return EchoResult::echo(Micros(t)); }

ControlConfig unfiltered() {
    ControlConfig c;
    c.median_window = 1;
    c.hand_clear_mm = c.hand_set_mm;
    c.full_clear_mm = c.full_set_mm;
    return c;
}

TEST(Controller, StartsIdleClosedNotFull) {
    const Controller c{ControlConfig{}};
    EXPECT_EQ(c.state(), SystemState::Idle);
    EXPECT_EQ(c.lid(), LidState::Closed);
    EXPECT_FALSE(c.bin_full());
    EXPECT_EQ(c.cycle_count(), 0u);
}

TEST(Controller, RejectsInvalidConfig) {
    ControlConfig bad;
    bad.hand_clear_mm = Millimeters(40);
    EXPECT_THROW(Controller{bad}, ConfigError);
    bad = {};
    bad.median_window = 4;
    EXPECT_THROW(Controller{bad}, ConfigError);
}

TEST(Controller, HandOpensLidOnce) {
    Controller c{ControlConfig{}};
    std::vector<CycleOutput> out;
    for (int i = 0; i < 3; ++i) out.push_back(c.tick({us(233), us(1166)}));

    // Empty filter: the first reading is its own median.
    EXPECT_EQ(out[0].servo_command, 180);
    EXPECT_EQ(out[0].filtered_hand_mm, Millimeters(40));
    EXPECT_EQ(out[1].servo_command, std::nullopt);
    EXPECT_EQ(out[2].servo_command, std::nullopt);
    EXPECT_EQ(out[2].lid, LidState::Open);
    EXPECT_EQ(out[2].state, SystemState::Open);
    EXPECT_EQ(out[2].display, DisplayContent{BinDistance{Millimeters(200)}});
}

TEST(Controller, MedianNeedsTwoReadingsAfterNoEchoHistory) {
    Controller c{ControlConfig{}};
    EXPECT_FALSE(c.tick({EchoResult::no_echo(), us(1166)}).servo_command);
    const CycleOutput second = c.tick({us(233), us(1166)});  // median{4000, 40} -> 4000
    EXPECT_FALSE(second.servo_command);
    EXPECT_EQ(second.filtered_hand_mm, Millimeters::max_range());
    const CycleOutput third = c.tick({us(233), us(1166)});   // median{4000, 40, 40} -> 40
    EXPECT_EQ(third.servo_command, 180);
    EXPECT_EQ(third.lid, LidState::Open);
}

Controller open_controller() {
    Controller c{ControlConfig{}};
    for (int i = 0; i < 3; ++i) c.tick({us(233), us(1166)});
    EXPECT_EQ(c.lid(), LidState::Open);
    return c;
}

TEST(Controller, BinFullClosesOpenLidAndLocks) {
    Controller c = open_controller();
    std::vector<CycleOutput> out;
    for (int i = 0; i < 3; ++i) out.push_back(c.tick({us(233), us(146)}));

    EXPECT_FALSE(out[0].bin_full);  // median{200, 200, 25}
    EXPECT_TRUE(out[1].bin_full);
    EXPECT_EQ(out[1].servo_command, 0);
    EXPECT_EQ(out[1].lid, LidState::Closed);
    EXPECT_EQ(out[1].state, SystemState::Locked);
    EXPECT_EQ(out[1].display, DisplayContent{BinFull{}});
    EXPECT_EQ(out[2].servo_command, std::nullopt);
    EXPECT_EQ(out[2].state, SystemState::Locked);
}

TEST(Controller, LockedIgnoresHand) {
    Controller c{ControlConfig{}};
    for (int i = 0; i < 3; ++i) c.tick({EchoResult::no_echo(), us(146)});
    ASSERT_EQ(c.state(), SystemState::Locked);
    for (int i = 0; i < 5; ++i) {
        const CycleOutput out = c.tick({us(233), us(146)});
        EXPECT_EQ(out.lid, LidState::Closed);
        EXPECT_FALSE(out.servo_command);
    }
}

TEST(Controller, HandNoEchoClosesLid) {
    Controller c = open_controller();
    std::vector<CycleOutput> out;
    for (int i = 0; i < 3; ++i) out.push_back(c.tick({EchoResult::no_echo(), us(1166)}));
    EXPECT_FALSE(out[0].servo_command);
    EXPECT_EQ(out[1].servo_command, 0);
    EXPECT_EQ(out[2].lid, LidState::Closed);
    EXPECT_EQ(out[2].state, SystemState::Idle);
}

TEST(Controller, HandHeldInsideReleaseBand) {
    Controller c = open_controller();
    for (int i = 0; i < 10; ++i) {
        const CycleOutput out = c.tick({at_mm(55 + i % 6), us(1166)});  // 55..60 mm
        EXPECT_EQ(out.lid, LidState::Open);
        EXPECT_FALSE(out.servo_command);
    }
    c.tick({at_mm(61), us(1166)});
    EXPECT_EQ(c.tick({at_mm(61), us(1166)}).servo_command, 0);
}

TEST(Controller, TimedOutEchoReadsAsMaxRange) {
    ControlConfig cfg = unfiltered();
    cfg.echo_timeout_us = Micros(200);
    Controller c{cfg};
    const CycleOutput out = c.tick({us(233), us(1166)});
    EXPECT_EQ(out.lid, LidState::Closed);
    EXPECT_EQ(out.filtered_hand_mm, Millimeters::max_range());
    EXPECT_EQ(out.filtered_bin_mm, Millimeters::max_range());
}

TEST(Controller, ThresholdBoundariesAreInclusive) {
    {
        Controller c{unfiltered()};
        EXPECT_TRUE(c.tick({EchoResult::no_echo(), at_mm(30)}).bin_full);
    }
    {
        Controller c{unfiltered()};
        EXPECT_FALSE(c.tick({EchoResult::no_echo(), at_mm(31)}).bin_full);
    }
    {
        Controller c{unfiltered()};
        EXPECT_EQ(c.tick({at_mm(50), at_mm(200)}).lid, LidState::Open);
    }
    {
        Controller c{unfiltered()};
        EXPECT_EQ(c.tick({at_mm(51), at_mm(200)}).lid, LidState::Closed);
    }
}

TEST(Controller, BinFullTakesPriorityOverHand) {
    Controller c{unfiltered()};
    const CycleOutput out = c.tick({at_mm(40), at_mm(25)});
    EXPECT_EQ(out.state, SystemState::Locked);
    EXPECT_EQ(out.lid, LidState::Closed);
    EXPECT_FALSE(out.servo_command);
}

ControlConfig random_config(std::mt19937_64& rng) {
    ControlConfig c;
    c.median_window = 1 + 2 * testing::uniform(rng, 0, 3);
    c.hand_set_mm = Millimeters(testing::uniform(rng, 20, 80));
    c.hand_clear_mm = Millimeters(c.hand_set_mm.value() + testing::uniform(rng, 0, 20));
    c.full_set_mm = Millimeters(testing::uniform(rng, 15, 50));
    c.full_clear_mm = Millimeters(c.full_set_mm.value() + testing::uniform(rng, 0, 20));
    c.open_angle_deg = static_cast<int>(testing::uniform(rng, 60, 180));
    return c;
}

TEST(ControllerProperties, SafetyPriorityDedupCoherence) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const ControlConfig cfg = random_config(rng);
        Controller c{cfg};
        LidState prev = LidState::Closed;
        std::size_t commands = 0, transitions = 0;
        for (const CycleInput& in : testing::random_inputs(rng, 300)) {
            const CycleOutput out = c.tick(in);
            if (out.bin_full) {
                ASSERT_EQ(out.lid, LidState::Closed);
                if (out.servo_command) ASSERT_EQ(*out.servo_command, cfg.closed_angle_deg);
            }
            if (out.filtered_bin_mm <= cfg.full_set_mm) {
                ASSERT_EQ(out.state, SystemState::Locked);
            }
            ASSERT_EQ(out.state == SystemState::Locked, out.bin_full);
            if (out.state == SystemState::Open) ASSERT_EQ(out.lid, LidState::Open);
            ASSERT_EQ(out.servo_command.has_value(), out.lid != prev);
            commands += out.servo_command.has_value();
            transitions += out.lid != prev;
            prev = out.lid;
        }
        ASSERT_EQ(commands, transitions);
    }
}

TEST(ControllerProperties, ReplayIsDeterministic) {
    std::mt19937_64 rng(99);
    const auto inputs = testing::random_inputs(rng, 1000);
    Controller a{ControlConfig{}}, b{ControlConfig{}};
    for (const auto& in : inputs) ASSERT_EQ(a.tick(in), b.tick(in));
}

TEST(ReferenceOracle, Examples) {
    const ControlConfig cfg;
    const std::vector<CycleInput> hand{{at_mm(40), at_mm(200)}};
    const auto a = reference_oracle(hand, cfg);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].lid, LidState::Open);
    EXPECT_EQ(a[0].servo_command, 180);

    const std::vector<CycleInput> full{{EchoResult::no_echo(), at_mm(25)}};
    const auto b = reference_oracle(full, cfg);
    EXPECT_EQ(b[0].state, SystemState::Locked);
    EXPECT_EQ(b[0].display, DisplayContent{BinFull{}});

    EXPECT_TRUE(reference_oracle({}, cfg).empty());
}

TEST(ReferenceOracle, RejectsInvalidConfig) {
    ControlConfig bad;
    bad.median_window = 2;
    EXPECT_THROW(reference_oracle({}, bad), ConfigError);
}

TEST(ReferenceOracle, AgreesWithUnfilteredController) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inputs = testing::random_inputs(rng, 200);
        Controller c{unfiltered()};
        const auto expected = reference_oracle(inputs, unfiltered());
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const CycleOutput got = c.tick(inputs[i]);
            ASSERT_EQ(got.state, expected[i].state) << "cycle " << i;
            ASSERT_EQ(got.lid, expected[i].lid);
            ASSERT_EQ(got.display, expected[i].display);
            ASSERT_EQ(got.servo_command, expected[i].servo_command);
        }
    }
}

class RecordingPort : public HardwarePort {
public:
    std::vector<std::string> calls;
    EchoResult hand = EchoResult::no_echo();
    EchoResult bin = EchoResult::no_echo();

    void trigger_pulse(Channel c) override { calls.push_back(c == Channel::Hand ? "trigger hand" : "trigger bin"); }
    EchoResult await_echo(Channel c) override {
        calls.push_back(c == Channel::Hand ? "await hand" : "await bin");
        return c == Channel::Hand ? hand : bin;
    }
    void set_servo_pulse(Micros p) override { calls.push_back("servo " + std::to_string(p.value())); }
    void write_display(const std::string& text) override { calls.push_back("display " + text); }
};

TEST(RunCycle, DrivesPortInOrderAndOnlyCommandsOnTransitions) {
    Controller c{unfiltered()};
    RecordingPort port;
    port.bin = at_mm(200);
    port.hand = at_mm(40);

    run_cycle(c, port);
    EXPECT_EQ(port.calls, (std::vector<std::string>{"await bin", "await hand", "trigger bin", "trigger hand",
                                                    "servo 2500", "display Bin: 200 mm"}));
    port.calls.clear();
    run_cycle(c, port);
    EXPECT_EQ(port.calls.size(), 5u);  // no servo write while the lid stays open

    port.calls.clear();
    port.bin = at_mm(25);
    run_cycle(c, port);
    EXPECT_EQ(port.calls[4], "servo 500");
    EXPECT_EQ(port.calls[5], "display Bin Full");
}

}  // namespace
}  // namespace smartbin
