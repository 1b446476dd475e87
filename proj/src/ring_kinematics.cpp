#include "rendezvous/ring_kinematics.hpp"

#include <algorithm>
#include <stdexcept>

#include "rendezvous/errors.hpp"

namespace rendezvous {

Parameters::Parameters(Rational n, Rational c) : n_(std::move(n)), c_(std::move(c)) {
    if (n_.sign() <= 0) {
        throw std::invalid_argument("ring length n must be positive (got " + n_.str() + ")");
    }
    if (c_ <= Rational(1)) {
        throw std::invalid_argument("speed ratio c must exceed 1 (got " + c_.str() + ")");
    }
}

Rational cw_distance(const RingPoint& from, const RingPoint& to, const Rational& n) {
    return mod(to.value() - from.value(), n);
}

RingPoint MotionSegment::position_at(const Rational& t, const Rational& n) const {
    return RingPoint::wrap(p_start.value() + velocity * (t - t_start), n);
}

Trajectory::Trajectory(Rational ring_length, RingPoint origin)
    : n_(std::move(ring_length)), origin_(std::move(origin)) {}

void Trajectory::append(MotionSegment segment) {
    if (segment.t_start >= segment.t_end) {
        throw std::invalid_argument("motion segment must have t_start < t_end");
    }
    const Rational expected_t = end_time();
    const RingPoint expected_p = end_position();
    if (segment.t_start != expected_t) {
        throw ContractViolation("segment starts at t=" + segment.t_start.str() +
                                " but trajectory ends at t=" + expected_t.str());
    }
    if (segment.p_start != expected_p) {
        throw ContractViolation("segment starts at " + segment.p_start.value().str() +
                                " but trajectory ends at " + expected_p.value().str());
    }
    segments_.push_back(std::move(segment));
}

Rational Trajectory::end_time() const {
    return segments_.empty() ? Rational(0) : segments_.back().t_end;
}

RingPoint Trajectory::end_position() const {
    return segments_.empty() ? origin_ : segments_.back().end_position(n_);
}

std::size_t Trajectory::segment_index(const Rational& t) const {
    if (t.sign() < 0 || t > end_time()) {
        throw std::out_of_range("time " + t.str() + " outside trajectory span [0, " +
                                end_time().str() + "]");
    }
    // First segment whose end is >= t.
    auto it = std::lower_bound(segments_.begin(), segments_.end(), t,
                               [](const MotionSegment& s, const Rational& v) { return s.t_end < v; });
    return static_cast<std::size_t>(it - segments_.begin());
}

RingPoint Trajectory::position_at(const Rational& t) const {
    const auto i = segment_index(t);
    if (segments_.empty()) {
        return origin_;
    }
    return segments_[i].position_at(t, n_);
}

Rational Trajectory::pedometer_at(const Rational& t) const {
    const auto i = segment_index(t);
    Rational total;
    for (std::size_t k = 0; k < i; ++k) {
        total += segments_[k].distance();
    }
    if (i < segments_.size()) {
        total += abs(segments_[i].velocity) * (t - segments_[i].t_start);
    }
    return total;
}

Rational Trajectory::displacement_at(const Rational& t) const {
    const auto i = segment_index(t);
    Rational total;
    for (std::size_t k = 0; k < i; ++k) {
        total += segments_[k].velocity * segments_[k].duration();
    }
    if (i < segments_.size()) {
        total += segments_[i].velocity * (t - segments_[i].t_start);
    }
    return total;
}

RingPoint position_at(const Trajectory& traj, const Rational& t) { return traj.position_at(t); }

std::optional<Rational> closing_time(const Rational& rel, const Rational& rel_velocity,
                                     const Rational& n) {
    const Rational r = mod(rel, n);
    if (r.sign() == 0) {
        return Rational(0);
    }
    const int s = rel_velocity.sign();
    if (s == 0) {
        return std::nullopt;
    }
    // Increasing offset wraps to n; decreasing offset falls to 0.
    return s > 0 ? (n - r) / rel_velocity : r / -rel_velocity;
}

std::optional<Rational> first_meeting_time(const Trajectory& a, const Trajectory& b,
                                           const Rational& n) {
    if (a.end_time() != b.end_time()) {
        throw ContractViolation("trajectory spans differ: " + a.end_time().str() + " vs " +
                                b.end_time().str());
    }
    if (a.origin() == b.origin()) {
        return Rational(0);
    }

    std::vector<Rational> cuts{Rational(0)};
    for (const auto& s : a.segments()) {
        cuts.push_back(s.t_end);
    }
    for (const auto& s : b.segments()) {
        cuts.push_back(s.t_end);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::size_t ia = 0;
    std::size_t ib = 0;
    const auto sa = a.segments();
    const auto sb = b.segments();
    for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
        const Rational& t0 = cuts[w];
        const Rational& t1 = cuts[w + 1];
        while (sa[ia].t_end <= t0) {
            ++ia;
        }
        while (sb[ib].t_end <= t0) {
            ++ib;
        }
        const Rational rel = sa[ia].position_at(t0, n).value() - sb[ib].position_at(t0, n).value();
        const Rational rel_v = sa[ia].velocity - sb[ib].velocity;
        if (auto tau = closing_time(rel, rel_v, n); tau && *tau <= t1 - t0) {
            return t0 + *tau;
        }
    }
    return std::nullopt;
}

}  // namespace rendezvous
