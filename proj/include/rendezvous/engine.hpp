// Exact event-driven simulation of two agents running one program.
//
// Agent A (speed c) starts at point 0, agent B (speed 1) at the clockwise
// distance d from A. Between events both agents move at constant velocity;
// events are the first meeting, arrivals at pebbles and scheduled pedometer
// marks. Simultaneous events resolve as: meeting, then pebbles (A, B), then
// marks (A, B).

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rendezvous/policies.hpp"
#include "rendezvous/rational.hpp"
#include "rendezvous/ring_kinematics.hpp"

namespace rendezvous {

enum class AgentId { A, B };

enum class EventKind { Start, PebbleDrop, PebbleHere, ScheduledMark, Turn, Rendezvous, HorizonExceeded };

std::string_view to_string(AgentId agent);
std::string_view to_string(EventKind kind);

/// Clockwise distance from A's start to B's start.
class PlacementSpec {
public:
    /// Throws std::invalid_argument unless 0 <= d < n.
    PlacementSpec(Rational d, const Parameters& params);
    const Rational& d() const { return d_; }

private:
    Rational d_;
};

struct TraceEvent {
    Rational t;
    AgentId agent;
    EventKind kind;
    RingPoint pos;
    Rational pedometer;
};

struct SimulationResult {
    std::string program;
    Parameters params;
    Rational d;
    Rational horizon;
    std::optional<Rational> rendezvous_time;  ///< empty: horizon exceeded
    RingPoint meeting_point;
    std::vector<TraceEvent> trace;
    Trajectory traj_a;
    Trajectory traj_b;

    bool met() const { return rendezvous_time.has_value(); }
};

/// 4n/(c-1).
Rational default_horizon(const Parameters& params);

/// Throws std::invalid_argument if horizon <= 0, ProgramFault if the program
/// schedules a mark at or below its current pedometer reading.
SimulationResult simulate(const Program& program, const Parameters& params,
                          const PlacementSpec& placement,
                          std::optional<Rational> horizon = std::nullopt);

/// One agent alone on the ring (the other agent absent). Used by the
/// communication-free analyses and the gap adversary.
Trajectory simulate_solo(const Program& program, const Parameters& params, const Rational& speed,
                         const Rational& horizon);

struct ReplayReport {
    bool ok = true;
    std::vector<std::string> diagnostics;
    explicit operator bool() const { return ok; }
};

/// Re-evaluates a result from its trajectories alone: segment continuity,
/// speed magnitudes, trace order and positions, event completeness for
/// pebbles, 1000 grid samples, and co-location at the rendezvous time.
ReplayReport replay_check(const SimulationResult& result, const Parameters& params);

/// {params:{n,c}, placement:{d}, program, events:[...], rendezvous:{t,pos}|null}.
/// Rationals are "p/q" strings.
nlohmann::json trace_to_json(const SimulationResult& result);

/// Ordered (agent, kind) list; the worst-case sweep groups placements by it.
std::vector<std::pair<AgentId, EventKind>> event_signature(const SimulationResult& result);
std::string signature_string(const SimulationResult& result);

}  // namespace rendezvous
