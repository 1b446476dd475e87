#include <doctest.h>

#include <optional>
#include <random>
#include <stdexcept>

#include "rendezvous/errors.hpp"
#include "rendezvous/ring_kinematics.hpp"
#include "test_support.hpp"

using namespace rendezvous;

namespace {

Trajectory straight(const Rational& n, const Rational& start, const Rational& v, const Rational& span) {
    Trajectory t(n, RingPoint::wrap(start, n));
    t.append({Rational(0), span, RingPoint::wrap(start, n), v});
    return t;
}

// Enumerates every solution of  pa + va*t = pb + vb*t + k*n  for the
// integers k that can occur in [0, span] and returns the smallest t.
std::optional<Rational> brute_force_meeting(const Rational& pa, const Rational& va,
                                            const Rational& pb, const Rational& vb,
                                            const Rational& span, const Rational& n) {
    const Rational rel_v = va - vb;
    const Rational gap = pb - pa;
    if (rel_v == Rational(0)) {
        if (mod(gap, n) == Rational(0)) return Rational(0);
        return std::nullopt;
    }
    std::optional<Rational> best;
    const long reach = static_cast<long>((abs(rel_v) * span / n).to_double()) + 2;
    for (long k = -reach; k <= reach; ++k) {
        const Rational t = (gap + Rational(k) * n) / rel_v;
        if (t < Rational(0) || t > span) continue;
        if (!best || t < *best) best = t;
    }
    return best;
}

}  // namespace

TEST_CASE("Parameters validates n and c") {
    CHECK_NOTHROW(Parameters(Rational(12), Rational(2)));
    CHECK_THROWS_AS(Parameters(Rational(0), Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(Parameters(Rational(12), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(Parameters(Rational(12), Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("position_at on a single segment") {
    const Rational n(10);
    MotionSegment cw{Rational(0), Rational(5), RingPoint::wrap(Rational(0), n), Rational(2)};
    CHECK(cw.position_at(Rational(3), n).value() == Rational(6));
    CHECK(cw.position_at(Rational(0), n).value() == Rational(0));
    MotionSegment wrap{Rational(0), Rational(5), RingPoint::wrap(Rational(8), n), Rational(1)};
    CHECK(wrap.position_at(Rational(5), n).value() == Rational(3));
    MotionSegment ccw{Rational(0), Rational(5), RingPoint::wrap(Rational(1), n), Rational(-1)};
    CHECK(ccw.position_at(Rational(3), n).value() == Rational(8));
}

TEST_CASE("cw_distance") {
    const Rational n(12);
    CHECK(cw_distance(RingPoint::wrap(Rational(2), n), RingPoint::wrap(Rational(5), n), n) == Rational(3));
    CHECK(cw_distance(RingPoint::wrap(Rational(5), n), RingPoint::wrap(Rational(2), n), n) == Rational(9));
    CHECK(cw_distance(RingPoint::wrap(Rational(5), n), RingPoint::wrap(Rational(5), n), n) == Rational(0));
}

TEST_CASE("Trajectory rejects gaps, jumps and empty segments") {
    const Rational n(10);
    Trajectory t(n, RingPoint::wrap(Rational(0), n));
    t.append({Rational(0), Rational(2), RingPoint::wrap(Rational(0), n), Rational(1)});
    CHECK_THROWS_AS(t.append({Rational(3), Rational(4), RingPoint::wrap(Rational(2), n), Rational(1)}),
                    ContractViolation);
    CHECK_THROWS_AS(t.append({Rational(2), Rational(4), RingPoint::wrap(Rational(1), n), Rational(1)}),
                    ContractViolation);
    CHECK_THROWS_AS(t.append({Rational(2), Rational(2), RingPoint::wrap(Rational(2), n), Rational(1)}),
                    std::invalid_argument);
    t.append({Rational(2), Rational(4), RingPoint::wrap(Rational(2), n), Rational(-3)});
    CHECK(t.end_time() == Rational(4));
    CHECK(t.end_position().value() == Rational(6));
    CHECK(t.pedometer_at(Rational(4)) == Rational(8));
    CHECK(t.displacement_at(Rational(4)) == Rational(-4));
    CHECK_THROWS_AS(t.position_at(Rational(5)), std::out_of_range);
    CHECK_THROWS_AS(t.position_at(Rational(-1)), std::out_of_range);
}

TEST_CASE("a pause segment is representable") {
    const Rational n(10);
    Trajectory t(n, RingPoint::wrap(Rational(3), n));
    t.append({Rational(0), Rational(2), RingPoint::wrap(Rational(3), n), Rational(0)});
    CHECK(t.position_at(Rational(1)).value() == Rational(3));
    CHECK(t.pedometer_at(Rational(2)) == Rational(0));
}

TEST_CASE("first_meeting_time examples") {
    const Rational n(10);
    // chase: speed 2 from 0 catches speed 1 from 4 after 4 time units
    auto a = straight(n, Rational(0), Rational(2), Rational(10));
    auto b = straight(n, Rational(4), Rational(1), Rational(10));
    CHECK(first_meeting_time(a, b, n) == Rational(4));
    // head-on: speed 3 clockwise, speed 1 anticlockwise, 6 apart
    auto c = straight(n, Rational(0), Rational(3), Rational(10));
    auto e = straight(n, Rational(6), Rational(-1), Rational(10));
    CHECK(first_meeting_time(c, e, n) == Rational(3, 2));
    // co-located start
    auto f = straight(n, Rational(5), Rational(1), Rational(10));
    auto g = straight(n, Rational(5), Rational(-1), Rational(10));
    CHECK(first_meeting_time(f, g, n) == Rational(0));
    // parallel, never meet
    auto h = straight(n, Rational(0), Rational(1), Rational(10));
    auto i = straight(n, Rational(5), Rational(1), Rational(10));
    CHECK_FALSE(first_meeting_time(h, i, n).has_value());
}

TEST_CASE("first_meeting_time requires matching spans") {
    const Rational n(10);
    auto a = straight(n, Rational(0), Rational(2), Rational(10));
    auto b = straight(n, Rational(4), Rational(1), Rational(9));
    CHECK_THROWS_AS(first_meeting_time(a, b, n), ContractViolation);
}

TEST_CASE("first_meeting_time agrees with root enumeration") {
    std::mt19937_64 rng(2024);
    using rendezvous::testing::random_rational;
    for (int i = 0; i < 400; ++i) {
        const Rational n = random_rational(rng, Rational(1), Rational(40), 7);
        const Rational pa = random_rational(rng, Rational(0), n);
        const Rational pb = random_rational(rng, Rational(0), n);
        const Rational va = random_rational(rng, Rational(-5), Rational(5), 9);
        const Rational vb = random_rational(rng, Rational(-5), Rational(5), 9);
        const Rational span = random_rational(rng, Rational(1, 10), Rational(30), 11);
        auto a = straight(n, pa, va, span);
        auto b = straight(n, pb, vb, span);
        const auto got = first_meeting_time(a, b, n);
        const auto want = brute_force_meeting(RingPoint::wrap(pa, n).value(), va,
                                              RingPoint::wrap(pb, n).value(), vb, span, n);
        CAPTURE(i);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
            CHECK(*got == *want);
            CHECK(a.position_at(*got) == b.position_at(*got));
        }
        // meeting is symmetric in its arguments
        CHECK(first_meeting_time(b, a, n) == got);
    }
}

TEST_CASE("multi-segment trajectories stay continuous at every junction") {
    std::mt19937_64 rng(77);
    using rendezvous::testing::random_rational;
    const Rational n(12);
    for (int trial = 0; trial < 50; ++trial) {
        Trajectory t(n, RingPoint::wrap(Rational(0), n));
        Rational now(0);
        RingPoint here = RingPoint::wrap(Rational(0), n);
        for (int s = 0; s < 8; ++s) {
            const Rational len = random_rational(rng, Rational(1, 8), Rational(5), 13);
            const Rational v = random_rational(rng, Rational(-3), Rational(3), 4);
            MotionSegment seg{now, now + len, here, v};
            here = seg.end_position(n);
            now = now + len;
            t.append(seg);
        }
        const auto segs = t.segments();
        for (std::size_t s = 1; s < segs.size(); ++s) {
            CHECK(segs[s - 1].end_position(n) == segs[s].p_start);
            CHECK(t.position_at(segs[s].t_start) == segs[s].p_start);
        }
        CHECK(RingPoint::wrap(t.displacement_at(now), n) == t.end_position());
    }
}
