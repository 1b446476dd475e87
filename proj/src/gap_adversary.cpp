#include <stdexcept>

#include "rendezvous/analysis.hpp"
#include "rendezvous/errors.hpp"

namespace rendezvous {

namespace {

struct Reach {
    Rational cw;   // max lifted displacement, >= 0
    Rational ccw;  // min lifted displacement, <= 0
};

// Piecewise linear, so the extremes sit on segment ends.
Reach excursion(const Trajectory& traj) {
    Reach r;
    Rational x;
    for (const auto& seg : traj.segments()) {
        x += seg.velocity * seg.duration();
        r.cw = max(r.cw, x);
        r.ccw = min(r.ccw, x);
    }
    return r;
}

}  // namespace

GapWitness gap_adversary(const Program& program, const Parameters& params, std::optional<Rational> epsilon) {
    const Rational& n = params.n();
    const Rational& c = params.c();
    const Rational eps = epsilon ? *epsilon : n / Rational(1000000);
    const Rational window = n / (c + 1) - eps;
    if (eps.sign() <= 0 || window.sign() <= 0) {
        throw std::invalid_argument("gap adversary needs 0 < epsilon < n/(c+1)");
    }

    // Alone, each agent sees only its own marks; as long as the two regions
    // stay disjoint the joint run replays these solo runs.
    const Reach a = excursion(simulate_solo(program, params, c, window));
    const Reach b = excursion(simulate_solo(program, params, Rational(1), window));

    const RingPoint r = RingPoint::wrap(a.cw, n);
    const RingPoint l = RingPoint::wrap(a.ccw, n);
    const Rational gap_length = n - (a.cw - a.ccw);
    const Rational b_extent = b.cw - b.ccw;
    if (gap_length <= b_extent) {
        throw ConstructionFailed("gap of length " + gap_length.str() + " cannot hold B's excursion of " +
                                 b_extent.str() + " for program '" + program.name() + "'");
    }
    // Centre B's excursion [d + ccw, d + cw] inside the open gap (r, n + l).
    const Rational slack = gap_length - b_extent;
    const Rational placement = mod(a.cw - b.ccw + slack / 2, n);

    SimulationResult run = simulate(program, params, PlacementSpec(placement, params));
    if (!run.met()) {
        throw ConstructionFailed("no rendezvous within the horizon from d*=" + placement.str());
    }
    const Rational t = *run.rendezvous_time;
    if (t < window) {
        throw ConstructionFailed("rendezvous at " + t.str() + " inside the window " + window.str() +
                                 " from d*=" + placement.str());
    }
    return GapWitness{window, a.cw,      a.ccw,     r, l, r.value(), gap_length, b.cw,
                      b.ccw,  placement, t,         std::move(run)};
}

}  // namespace rendezvous
