// Agent programs: deterministic reactive controllers shared by both agents.
//
// A program sees only the instance (n, c), fixed at construction, and the
// observations the engine delivers. It never learns the time, its own speed
// or which agent it drives.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rendezvous/rational.hpp"
#include "rendezvous/ring_kinematics.hpp"

namespace rendezvous {

enum class Direction { Clockwise, AntiClockwise };

inline Direction reversed(Direction d) {
    return d == Direction::Clockwise ? Direction::AntiClockwise : Direction::Clockwise;
}

enum class ObservationKind { Start, PebbleHere, ScheduledMark };

struct Observation {
    ObservationKind kind;
    Rational pedometer;
};

struct Action {
    Direction direction = Direction::Clockwise;
    bool drop_pebble = false;
    /// Pedometer reading at which to deliver the next ScheduledMark. When
    /// absent, any pending mark stays in force.
    std::optional<Rational> next_mark;

    friend bool operator==(const Action&, const Action&) = default;
};

/// Per-agent controller memory. Opaque to the engine.
struct ControllerState {
    std::uint32_t phase = 0;
    friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

struct Step {
    ControllerState state;
    Action action;
};

class Program {
public:
    using Transition = std::function<Step(const ControllerState&, const Observation&)>;

    /// `communication_free` programs ignore pebbles entirely; only those can
    /// be analysed with the offset-trace machinery.
    Program(std::string name, bool communication_free, Transition transition);

    const std::string& name() const { return name_; }
    bool communication_free() const { return communication_free_; }

    /// The initial action: the response to the Start observation at pedometer 0.
    Step start() const;
    Step react(const ControllerState& state, const Observation& obs) const;

private:
    std::string name_;
    bool communication_free_;
    Transition transition_;
};

/// Strictly increasing, positive pedometer readings at which to reverse.
class TurnSchedule {
public:
    TurnSchedule() = default;
    /// Throws std::invalid_argument if not strictly increasing or not positive.
    explicit TurnSchedule(std::vector<Rational> turns);

    const std::vector<Rational>& turns() const { return turns_; }

private:
    std::vector<Rational> turns_;
};

/// Distributed race: clockwise forever.
Program make_dr(const Parameters& params);

/// Clockwise for cn/(c^2-1) steps, then anti-clockwise forever.
Program make_two_stage(const Parameters& params);
Rational two_stage_turn_point(const Parameters& params);

/// Drop a pebble at the start, walk clockwise, and reverse for good on the
/// first pebble met after 0 < travelled < min{n/2, n/c}.
Program make_pebble(const Parameters& params);
Rational pebble_threshold(const Parameters& params);

/// Observation-free program that starts clockwise and reverses at each
/// scheduled pedometer reading.
Program make_turn_schedule_program(const TurnSchedule& schedule, std::string name = {});

/// "dr", "two-stage", "pebble" or "schedule:<r1>,<r2>,..." (rationals as p/q
/// or decimals). Throws std::invalid_argument for unknown names.
Program program_by_name(std::string_view name, const Parameters& params);

}  // namespace rendezvous
