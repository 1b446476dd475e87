#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "rendezvous/engine.hpp"
#include "rendezvous/policies.hpp"
#include "test_support.hpp"

using namespace rendezvous;

namespace {

Observation obs(ObservationKind kind, const Rational& ped) { return Observation{kind, ped}; }

// Feeds the same observation sequence to a program and records every step.
std::vector<Step> drive(const Program& p, const std::vector<Observation>& seq) {
    std::vector<Step> out{p.start()};
    for (const auto& o : seq) out.push_back(p.react(out.back().state, o));
    return out;
}

}  // namespace

TEST_CASE("DR walks clockwise and ignores everything") {
    const Parameters params(Rational(12), Rational(2));
    const Program dr = make_dr(params);
    CHECK(dr.communication_free());
    const auto steps = drive(dr, {obs(ObservationKind::PebbleHere, Rational(3)),
                                  obs(ObservationKind::ScheduledMark, Rational(5))});
    for (const auto& s : steps) {
        CHECK(s.action.direction == Direction::Clockwise);
        CHECK_FALSE(s.action.drop_pebble);
        CHECK_FALSE(s.action.next_mark.has_value());
    }
}

TEST_CASE("two-stage turn point") {
    CHECK(two_stage_turn_point(Parameters(Rational(12), Rational(2))) == Rational(8));
    CHECK(two_stage_turn_point(Parameters(Rational(10), Rational(3))) == Rational(15, 4));
    CHECK(two_stage_turn_point(Parameters(Rational(360), Rational(10))) == Rational(400, 11));
}

TEST_CASE("two-stage schedules its single turn") {
    const Parameters params(Rational(12), Rational(2));
    const Program p = make_two_stage(params);
    CHECK(p.name() == "two-stage");
    const Step s0 = p.start();
    CHECK(s0.action.direction == Direction::Clockwise);
    REQUIRE(s0.action.next_mark.has_value());
    CHECK(*s0.action.next_mark == Rational(8));
    const Step s1 = p.react(s0.state, obs(ObservationKind::ScheduledMark, Rational(8)));
    CHECK(s1.action.direction == Direction::AntiClockwise);
    CHECK_FALSE(s1.action.next_mark.has_value());
}

TEST_CASE("a one-entry schedule behaves like two-stage") {
    const Parameters params(Rational(12), Rational(2));
    const Program a = make_two_stage(params);
    const Program b = make_turn_schedule_program(TurnSchedule({Rational(8)}));
    const std::vector<Observation> seq{obs(ObservationKind::PebbleHere, Rational(1)),
                                       obs(ObservationKind::ScheduledMark, Rational(8)),
                                       obs(ObservationKind::PebbleHere, Rational(9))};
    const auto sa = drive(a, seq);
    const auto sb = drive(b, seq);
    REQUIRE(sa.size() == sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i) CHECK(sa[i].action == sb[i].action);
}

TEST_CASE("multi-turn schedule alternates direction") {
    const Program p = make_turn_schedule_program(TurnSchedule({Rational(1), Rational(2), Rational(7, 2)}));
    CHECK(p.name() == "schedule:1,2,7/2");
    const auto steps = drive(p, {obs(ObservationKind::ScheduledMark, Rational(1)),
                                 obs(ObservationKind::ScheduledMark, Rational(2)),
                                 obs(ObservationKind::ScheduledMark, Rational(7, 2))});
    CHECK(steps[0].action.direction == Direction::Clockwise);
    CHECK(steps[1].action.direction == Direction::AntiClockwise);
    CHECK(steps[2].action.direction == Direction::Clockwise);
    CHECK(steps[3].action.direction == Direction::AntiClockwise);
    CHECK(*steps[0].action.next_mark == Rational(1));
    CHECK(*steps[1].action.next_mark == Rational(2));
    CHECK(*steps[2].action.next_mark == Rational(7, 2));
    CHECK_FALSE(steps[3].action.next_mark.has_value());
}

TEST_CASE("TurnSchedule validation") {
    CHECK_NOTHROW(TurnSchedule(std::vector<Rational>{}));
    CHECK_THROWS_AS(TurnSchedule({Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(TurnSchedule({Rational(-1)}), std::invalid_argument);
    CHECK_THROWS_AS(TurnSchedule({Rational(2), Rational(2)}), std::invalid_argument);
    CHECK_THROWS_AS(TurnSchedule({Rational(3), Rational(1)}), std::invalid_argument);
}

TEST_CASE("pebble threshold") {
    CHECK(pebble_threshold(Parameters(Rational(12), Rational(2))) == Rational(6));
    CHECK(pebble_threshold(Parameters(Rational(12), Rational(3))) == Rational(4));
    CHECK(pebble_threshold(Parameters(Rational(12), Rational(3, 2))) == Rational(6));
}

TEST_CASE("pebble turns only on a pebble strictly inside (0, tau)") {
    const Parameters params(Rational(12), Rational(3));  // tau = 4
    const Program p = make_pebble(params);
    CHECK_FALSE(p.communication_free());
    const Step s0 = p.start();
    CHECK(s0.action.drop_pebble);
    CHECK(s0.action.direction == Direction::Clockwise);

    const auto at_zero = p.react(s0.state, obs(ObservationKind::PebbleHere, Rational(0)));
    CHECK(at_zero.action.direction == Direction::Clockwise);
    const auto at_tau = p.react(s0.state, obs(ObservationKind::PebbleHere, Rational(4)));
    CHECK(at_tau.action.direction == Direction::Clockwise);
    const auto beyond = p.react(s0.state, obs(ObservationKind::PebbleHere, Rational(12)));
    CHECK(beyond.action.direction == Direction::Clockwise);

    const Rational just_below = Rational(4) - Rational(1, 1000000);
    const auto below = p.react(s0.state, obs(ObservationKind::PebbleHere, just_below));
    CHECK(below.action.direction == Direction::AntiClockwise);
    CHECK_FALSE(below.action.drop_pebble);

    // turned for good: later pebbles change nothing
    const auto again = p.react(below.state, obs(ObservationKind::PebbleHere, Rational(1)));
    CHECK(again.action.direction == Direction::AntiClockwise);
}

TEST_CASE("programs are pure functions of state and observation") {
    const Parameters params(Rational(12), Rational(3));
    std::mt19937_64 rng(3);
    for (const auto& p : {make_dr(params), make_two_stage(params), make_pebble(params)}) {
        std::vector<Observation> seq;
        for (int i = 0; i < 20; ++i) {
            const auto kind = (rng() % 2) ? ObservationKind::PebbleHere : ObservationKind::ScheduledMark;
            seq.push_back(obs(kind, testing::random_rational(rng, Rational(0), Rational(30))));
        }
        const auto first = drive(p, seq);
        const auto second = drive(p, seq);
        REQUIRE(first.size() == second.size());
        for (std::size_t i = 0; i < first.size(); ++i) {
            CHECK(first[i].action == second[i].action);
            CHECK(first[i].state == second[i].state);
        }
    }
}

TEST_CASE("program_by_name") {
    const Parameters params(Rational(12), Rational(2));
    CHECK(program_by_name("dr", params).name() == "dr");
    CHECK(program_by_name("two-stage", params).name() == "two-stage");
    CHECK(program_by_name("pebble", params).name() == "pebble");
    const Program s = program_by_name("schedule:1/2,3,4.5", params);
    const auto start = s.start();
    CHECK(*start.action.next_mark == Rational(1, 2));
    CHECK_THROWS_AS(program_by_name("zigzag", params), std::invalid_argument);
    CHECK_THROWS_AS(program_by_name("schedule:3,1", params), std::invalid_argument);
}

TEST_CASE("solo displacement of a schedule program is 1-Lipschitz in the step count") {
    const Parameters params(Rational(24), Rational(2));
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const TurnSchedule schedule = testing::random_schedule(rng, params.n());
        const Program p = make_turn_schedule_program(schedule);
        const Rational horizon(80);
        const Trajectory solo = simulate_solo(p, params, Rational(1), horizon);
        // at unit speed time equals steps, so f(s) = displacement_at(s)
        Rational prev_s(0);
        Rational prev_f(0);
        for (int k = 1; k <= 160; ++k) {
            const Rational s = Rational(k, 2);
            const Rational f = solo.displacement_at(s);
            CHECK(abs(f - prev_f) <= s - prev_s);
            prev_s = s;
            prev_f = f;
        }
        // the displacement at the turn points matches a direct walk of the schedule
        Rational pos(0);
        Rational last(0);
        int sign = 1;
        for (const auto& turn : schedule.turns()) {
            pos = pos + Rational(sign) * (turn - last);
            last = turn;
            sign = -sign;
            if (turn <= horizon) CHECK(solo.displacement_at(turn) == pos);
        }
    }
}
