// Positions and piecewise-linear motion on a continuous ring of length n.
//
// Clockwise is the positive direction. All quantities are exact rationals.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rendezvous/rational.hpp"

namespace rendezvous {

/// Ring length n > 0 and speed ratio c > 1. The slow agent has speed 1.
class Parameters {
public:
    /// Throws std::invalid_argument unless n > 0 and c > 1.
    Parameters(Rational n, Rational c);

    const Rational& n() const { return n_; }
    const Rational& c() const { return c_; }

private:
    Rational n_;
    Rational c_;
};

/// A point of [0, n).
class RingPoint {
public:
    RingPoint() = default;
    /// Reduces an arbitrary (lifted) coordinate modulo n.
    static RingPoint wrap(const Rational& x, const Rational& n) { return RingPoint(mod(x, n)); }

    const Rational& value() const { return value_; }
    friend bool operator==(const RingPoint&, const RingPoint&) = default;
    friend auto operator<=>(const RingPoint& a, const RingPoint& b) { return a.value_ <=> b.value_; }

private:
    explicit RingPoint(Rational v) : value_(std::move(v)) {}
    Rational value_;
};

/// (to - from) mod n: how far `from` must travel clockwise to reach `to`.
Rational cw_distance(const RingPoint& from, const RingPoint& to, const Rational& n);

/// Constant signed velocity over [t_start, t_end].
struct MotionSegment {
    Rational t_start;
    Rational t_end;
    RingPoint p_start;
    Rational velocity;

    Rational duration() const { return t_end - t_start; }
    Rational distance() const { return abs(velocity) * duration(); }
    RingPoint position_at(const Rational& t, const Rational& n) const;
    RingPoint end_position(const Rational& n) const { return position_at(t_end, n); }
};

/// Motion of one agent from time 0. Segments are time-contiguous and
/// position-continuous; append() enforces both.
class Trajectory {
public:
    Trajectory(Rational ring_length, RingPoint origin);

    /// Throws ContractViolation if the segment does not continue the
    /// trajectory, or std::invalid_argument if t_start >= t_end.
    void append(MotionSegment segment);

    const Rational& ring_length() const { return n_; }
    const RingPoint& origin() const { return origin_; }
    std::span<const MotionSegment> segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }

    Rational end_time() const;
    RingPoint end_position() const;

    /// Throws std::out_of_range for t outside [0, end_time()].
    RingPoint position_at(const Rational& t) const;
    /// Total distance travelled by time t (the pedometer reading).
    Rational pedometer_at(const Rational& t) const;
    /// Signed clockwise displacement from the origin, not reduced mod n.
    Rational displacement_at(const Rational& t) const;

private:
    std::size_t segment_index(const Rational& t) const;

    Rational n_;
    RingPoint origin_;
    std::vector<MotionSegment> segments_;
};

RingPoint position_at(const Trajectory& traj, const Rational& t);

/// Least tau >= 0 with rel + rel_velocity * tau == 0 (mod n), where rel is the
/// clockwise offset of one agent relative to the other. Empty when the agents
/// keep a constant nonzero offset.
std::optional<Rational> closing_time(const Rational& rel, const Rational& rel_velocity,
                                     const Rational& n);

/// Earliest time both trajectories occupy the same point. The trajectories
/// must share their end time; otherwise throws ContractViolation.
std::optional<Rational> first_meeting_time(const Trajectory& a, const Trajectory& b,
                                           const Rational& n);

}  // namespace rendezvous
