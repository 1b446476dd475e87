// Closed-form bounds, the worst-case sweep over placements, the
// communication-free offset machinery and the gap adversary.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rendezvous/engine.hpp"
#include "rendezvous/policies.hpp"
#include "rendezvous/rational.hpp"
#include "rendezvous/ring_kinematics.hpp"

namespace rendezvous {

// ---------------------------------------------------------------------------
// Bounds

struct BoundSet {
    Rational dr_supremum;    ///< n/(c-1): the distributed race time d/(c-1) as d -> n
    Rational no_comm_tight;  ///< cn/(c^2-1)
    Rational pebble_upper;   ///< max{n/(2(c-1)), n/c}
    Rational pebble_lower;   ///< max{n/(2(c-1)), n/(c+1)}
    Rational tau;            ///< min{n/2, n/c}
    Rational two_stage_k;    ///< cn/(c^2-1)
};

BoundSet bounds(const Parameters& params);

/// d/(c-1).
Rational dr_time(const Parameters& params, const Rational& d);

enum class PebbleCase {
    CoLocated,       ///< d = 0
    AtThreshold,     ///< d = tau: nobody turns
    BelowThreshold,  ///< d < tau: A turns at B's start
    MeetFirst,       ///< d > tau, they meet before B reaches A's start
    TurnAtStart,     ///< d > tau, B turns at A's start
};

std::string_view to_string(PebbleCase c);

/// Which branch of the pebble algorithm's analysis a placement falls in.
/// Throws std::out_of_range unless 0 <= d < n.
PebbleCase pebble_case(const Parameters& params, const Rational& d);

/// Closed-form rendezvous time of the pebble program from placement d.
/// Throws std::out_of_range unless 0 <= d < n.
Rational pebble_time_formula(const Parameters& params, const Rational& d);

// ---------------------------------------------------------------------------
// Offset trace and coverage

struct OffsetKnot {
    Rational t;
    Rational lifted;
};

/// Piecewise-linear lifted offset L(t) = f(t) - f(ct), where f(s) is the
/// program's clockwise displacement after s steps of solo walking. The
/// placement colored at time t is -L(t) mod n; the ring offset reported here
/// is L(t) mod n, which covers [0, n) exactly when the placements do.
class OffsetTrace {
public:
    /// Knots must start at t = 0 and be strictly increasing in t.
    OffsetTrace(Parameters params, std::vector<OffsetKnot> knots);

    const Parameters& params() const { return params_; }
    const std::vector<OffsetKnot>& knots() const { return knots_; }
    const Rational& horizon() const { return knots_.back().t; }

    Rational lifted_at(const Rational& t) const;
    Rational ring_offset_at(const Rational& t) const { return mod(lifted_at(t), params_.n()); }

private:
    Parameters params_;
    std::vector<OffsetKnot> knots_;
};

/// Throws ModelMismatch unless the program is communication-free.
OffsetTrace offset_trace(const Program& program, const Parameters& params, const Rational& horizon);

/// Closed arc [lo, hi] of [0, n] with the times its endpoints were first reached.
struct BlackInterval {
    Rational lo;
    Rational hi;
    Rational t_lo;
    Rational t_hi;
};

struct CoverageResult {
    std::optional<Rational> coverage_time;  ///< empty: incomplete by the horizon
    std::vector<BlackInterval> black_set;   ///< sorted, disjoint
    std::vector<std::pair<Rational, Rational>> measure_curve;  ///< (t, black measure)

    bool complete() const { return coverage_time.has_value(); }
};

CoverageResult coverage_time(const OffsetTrace& trace);

struct RuleViolation {
    int rule;  ///< 1: |slope| > 1 + c; 2: |L(t)| > t(c-1)
    Rational t;
    std::string detail;
};

struct RuleCheck {
    bool ok = true;
    std::vector<RuleViolation> violations;
    explicit operator bool() const { return ok; }
};

RuleCheck check_rules(const OffsetTrace& trace);

void write_coverage_csv(const CoverageResult& result, std::ostream& os);

// ---------------------------------------------------------------------------
// Worst-case sweep

struct SweepOptions {
    int grid = 64;       ///< seed placements i*n/grid
    unsigned jobs = 0;   ///< 0: one per hardware thread
    std::optional<Rational> horizon;
    bool replay = false;  ///< run replay_check on every simulation
};

/// Where the supremum (or maximum) is realised: at a placement, or as the
/// limit from one side of it.
enum class Approach { At, FromLeft, FromRight };

struct Extremum {
    Rational value;
    Rational d;
    Approach approach = Approach::At;
    bool attained() const { return approach == Approach::At; }
};

struct Regime {
    std::size_t id = 0;
    Rational lo;
    Rational hi;
    bool lo_open = false;
    bool hi_open = false;
    Rational slope;      ///< T(d) = slope * d + intercept on the regime
    Rational intercept;
    std::string signature;
    std::string signature_hash;
    std::size_t sample_count = 0;
};

struct SweepSample {
    Rational d;
    Rational time;
    std::size_t regime = 0;
    std::string signature_hash;
};

struct SweepReport {
    Extremum maximum;    ///< largest simulated time
    Extremum supremum;   ///< includes open-endpoint limits
    std::vector<Regime> regimes;
    std::vector<SweepSample> samples;
    std::size_t simulations = 0;
    std::size_t replay_failures = 0;
    std::vector<std::string> replay_diagnostics;
};

/// Exact supremum of simulate(program, d) over d in [0, n). Placements are
/// grouped into regimes by event signature; regime boundaries are located
/// exactly, and the rendezvous time is checked to be affine in d on every
/// regime. Throws RegimeRefinementError or HorizonExceeded.
SweepReport worst_case_sweep(const Program& program, const Parameters& params,
                             const SweepOptions& options = {});

/// Columns: d,time,regime_id,signature_hash (rationals as p/q).
void write_sweep_csv(const SweepReport& report, std::ostream& os);

std::string_view to_string(Approach a);

// ---------------------------------------------------------------------------
// Gap adversary

struct GapWitness {
    Rational window;        ///< n/(c+1) - epsilon
    Rational reach_cw;      ///< furthest clockwise displacement of A (lifted)
    Rational reach_ccw;     ///< furthest anti-clockwise displacement of A (lifted, <= 0)
    RingPoint r;
    RingPoint l;
    Rational gap_start;     ///< the unvisited arc runs clockwise from r ...
    Rational gap_length;    ///< ... for this length, ending at l
    Rational b_reach_cw;    ///< B's own excursion in the window, relative to its start
    Rational b_reach_ccw;
    Rational placement;     ///< d*
    Rational rendezvous_time;
    SimulationResult run;
};

/// Places B so that neither agent can see the other's region during the
/// window n/(c+1) - epsilon (default epsilon n/10^6), then simulates.
/// Throws ConstructionFailed if B's excursion does not fit in A's gap or the
/// simulated rendezvous comes earlier than the window.
GapWitness gap_adversary(const Program& program, const Parameters& params,
                         std::optional<Rational> epsilon = std::nullopt);

}  // namespace rendezvous
