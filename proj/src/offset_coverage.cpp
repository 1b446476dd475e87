#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "rendezvous/analysis.hpp"
#include "rendezvous/errors.hpp"

namespace rendezvous {

OffsetTrace::OffsetTrace(Parameters params, std::vector<OffsetKnot> knots)
    : params_(std::move(params)), knots_(std::move(knots)) {
    if (knots_.empty() || knots_.front().t.sign() != 0) {
        throw std::invalid_argument("offset trace must start at t = 0");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (knots_[i].t <= knots_[i - 1].t) {
            throw std::invalid_argument("offset trace knots must be strictly increasing in t");
        }
    }
}

Rational OffsetTrace::lifted_at(const Rational& t) const {
    if (t.sign() < 0 || t > horizon()) {
        throw std::out_of_range("time " + t.str() + " outside offset trace span");
    }
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                               [](const OffsetKnot& k, const Rational& v) { return k.t < v; });
    if (it->t == t) {
        return it->lifted;
    }
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.lifted + (hi.lifted - lo.lifted) * (t - lo.t) / (hi.t - lo.t);
}

OffsetTrace offset_trace(const Program& program, const Parameters& params, const Rational& horizon) {
    if (!program.communication_free()) {
        throw ModelMismatch("offset trace requires a communication-free program; '" + program.name() +
                            "' reacts to pebbles");
    }
    if (horizon.sign() < 0) {
        throw std::invalid_argument("offset trace horizon must be nonnegative");
    }
    if (horizon.sign() == 0) {
        return OffsetTrace(params, {{Rational(0), Rational(0)}});
    }
    const Rational& c = params.c();
    // Solo walk at speed 1, so time equals steps taken.
    const Trajectory solo = simulate_solo(program, params, Rational(1), c * horizon);

    std::vector<Rational> times{Rational(0), horizon};
    for (const auto& seg : solo.segments()) {
        if (seg.t_end <= horizon) {
            times.push_back(seg.t_end);
        }
        if (seg.t_end / c <= horizon) {
            times.push_back(seg.t_end / c);
        }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<OffsetKnot> knots;
    knots.reserve(times.size());
    for (auto& t : times) {
        Rational lifted = solo.displacement_at(t) - solo.displacement_at(c * t);
        knots.push_back({std::move(t), std::move(lifted)});
    }
    return OffsetTrace(params, std::move(knots));
}

namespace {

struct Gap {
    Rational start;
    Rational length;
};

class BlackSet {
public:
    explicit BlackSet(Rational n) : n_(std::move(n)) {}

    void add_point(const Rational& lifted, const Rational& t) {
        const Rational p = mod(lifted, n_);
        insert({p, p, t, t});
    }

    /// Adds the lifted arc swept from `from` (at time t_from) to `to` (at
    /// t_to). Requires |to - from| < n.
    void add_sweep(const Rational& from, const Rational& t_from, const Rational& to, const Rational& t_to) {
        const bool up = from <= to;
        const Rational& lo = up ? from : to;
        const Rational& hi = up ? to : from;
        const Rational& t_lo = up ? t_from : t_to;
        const Rational& t_hi = up ? t_to : t_from;
        const Rational lo_ring = mod(lo, n_);
        const Rational hi_ring = lo_ring + (hi - lo);
        if (hi_ring <= n_) {
            insert({lo_ring, hi_ring, t_lo, t_hi});
            return;
        }
        // Split at the wrap point n == 0.
        const Rational wrap_lifted = lo + (n_ - lo_ring);
        const Rational t_wrap = t_from + (t_to - t_from) * (wrap_lifted - from) / (to - from);
        insert({lo_ring, n_, t_lo, t_wrap});
        insert({Rational(0), hi_ring - n_, t_wrap, t_hi});
    }

    bool complete() const {
        return parts_.size() == 1 && parts_[0].lo.sign() == 0 && parts_[0].hi == n_;
    }

    Rational measure() const {
        Rational m;
        for (const auto& p : parts_) {
            m += p.hi - p.lo;
        }
        return m;
    }

    /// Open arcs not yet colored, as (clockwise start, length).
    std::vector<Gap> gaps() const {
        std::vector<Gap> out;
        for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
            out.push_back({parts_[i].hi, parts_[i + 1].lo - parts_[i].hi});
        }
        const Rational wrap = parts_.front().lo + n_ - parts_.back().hi;
        if (wrap.sign() > 0) {
            out.push_back({mod(parts_.back().hi, n_), wrap});
        }
        return out;
    }

    const std::vector<BlackInterval>& parts() const { return parts_; }

private:
    void insert(BlackInterval iv) {
        parts_.push_back(std::move(iv));
        std::sort(parts_.begin(), parts_.end(),
                  [](const BlackInterval& a, const BlackInterval& b) { return a.lo < b.lo; });
        std::vector<BlackInterval> merged;
        for (auto& p : parts_) {
            if (!merged.empty() && p.lo <= merged.back().hi) {
                auto& m = merged.back();
                if (p.lo == m.lo && p.t_lo < m.t_lo) {
                    m.t_lo = p.t_lo;
                }
                if (p.hi > m.hi || (p.hi == m.hi && p.t_hi < m.t_hi)) {
                    m.hi = p.hi;
                    m.t_hi = p.t_hi;
                }
            } else {
                merged.push_back(std::move(p));
            }
        }
        parts_ = std::move(merged);
    }

    Rational n_;
    std::vector<BlackInterval> parts_;
};

}  // namespace

CoverageResult coverage_time(const OffsetTrace& trace) {
    const Rational& n = trace.params().n();
    const auto& knots = trace.knots();
    BlackSet black(n);
    black.add_point(knots[0].lifted, knots[0].t);

    CoverageResult result;
    result.measure_curve.emplace_back(knots[0].t, black.measure());
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const auto& k0 = knots[i];
        const auto& k1 = knots[i + 1];
        const Rational len = abs(k1.lifted - k0.lifted);
        if (len.sign() == 0) {
            result.measure_curve.emplace_back(k1.t, black.measure());
            continue;
        }
        // The current point is black, so every gap lies ahead of it in the
        // sweep direction; the sweep finishes the last gap after `needed`.
        const RingPoint here = RingPoint::wrap(k0.lifted, n);
        const bool up = k1.lifted > k0.lifted;
        Rational needed;
        for (const auto& g : black.gaps()) {
            const RingPoint g_start = RingPoint::wrap(g.start, n);
            const RingPoint g_end = RingPoint::wrap(g.start + g.length, n);
            const Rational reach = (up ? cw_distance(here, g_start, n) : cw_distance(g_end, here, n)) + g.length;
            needed = max(needed, reach);
        }
        if (needed <= len) {
            const Rational t = k0.t + (k1.t - k0.t) * needed / len;
            result.coverage_time = t;
            result.black_set = {BlackInterval{Rational(0), n, t, t}};
            result.measure_curve.emplace_back(t, n);
            return result;
        }
        black.add_sweep(k0.lifted, k0.t, k1.lifted, k1.t);
        result.measure_curve.emplace_back(k1.t, black.measure());
    }
    result.black_set = black.parts();
    return result;
}

RuleCheck check_rules(const OffsetTrace& trace) {
    RuleCheck check;
    const Rational& c = trace.params().c();
    const Rational max_slope = c + 1;
    const auto& knots = trace.knots();
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const auto& k = knots[i];
        if (abs(k.lifted) > k.t * (c - 1)) {
            check.ok = false;
            check.violations.push_back({2, k.t,
                                        "|L| = " + abs(k.lifted).str() + " exceeds t(c-1) = " +
                                            (k.t * (c - 1)).str()});
        }
        if (i + 1 < knots.size()) {
            const Rational slope = (knots[i + 1].lifted - k.lifted) / (knots[i + 1].t - k.t);
            if (abs(slope) > max_slope) {
                check.ok = false;
                check.violations.push_back({1, k.t,
                                            "slope " + slope.str() + " exceeds 1+c = " + max_slope.str()});
            }
        }
    }
    return check;
}

void write_coverage_csv(const CoverageResult& result, std::ostream& os) {
    os << "t,black_measure\n";
    for (const auto& [t, m] : result.measure_curve) {
        os << t.fraction_str() << ',' << m.fraction_str() << '\n';
    }
}

}  // namespace rendezvous
