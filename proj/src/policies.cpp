#include "rendezvous/policies.hpp"

#include <stdexcept>

namespace rendezvous {

Program::Program(std::string name, bool communication_free, Transition transition)
    : name_(std::move(name)),
      communication_free_(communication_free),
      transition_(std::move(transition)) {}

Step Program::start() const {
    return transition_(ControllerState{}, Observation{ObservationKind::Start, Rational(0)});
}

Step Program::react(const ControllerState& state, const Observation& obs) const {
    return transition_(state, obs);
}

TurnSchedule::TurnSchedule(std::vector<Rational> turns) : turns_(std::move(turns)) {
    for (std::size_t i = 0; i < turns_.size(); ++i) {
        if (turns_[i].sign() <= 0) {
            throw std::invalid_argument("turn schedule entries must be positive (got " +
                                        turns_[i].str() + ")");
        }
        if (i > 0 && turns_[i] <= turns_[i - 1]) {
            throw std::invalid_argument("turn schedule must be strictly increasing (" +
                                        turns_[i - 1].str() + " then " + turns_[i].str() + ")");
        }
    }
}

Program make_dr(const Parameters& /*params*/) {
    return Program("dr", true, [](const ControllerState& s, const Observation&) {
        return Step{s, Action{Direction::Clockwise, false, std::nullopt}};
    });
}

Rational two_stage_turn_point(const Parameters& params) {
    const Rational& c = params.c();
    return c * params.n() / (c * c - 1);
}

Program make_two_stage(const Parameters& params) {
    return make_turn_schedule_program(TurnSchedule({two_stage_turn_point(params)}), "two-stage");
}

Rational pebble_threshold(const Parameters& params) {
    return min(params.n() / 2, params.n() / params.c());
}

Program make_pebble(const Parameters& params) {
    const Rational tau = pebble_threshold(params);
    // phase 0: still clockwise; phase 1: turned for good.
    return Program("pebble", false, [tau](const ControllerState& s, const Observation& obs) {
        Step out{s, Action{}};
        switch (obs.kind) {
            case ObservationKind::Start:
                out.action.drop_pebble = true;
                break;
            case ObservationKind::PebbleHere:
                if (s.phase == 0 && obs.pedometer.sign() > 0 && obs.pedometer < tau) {
                    out.state.phase = 1;
                }
                break;
            case ObservationKind::ScheduledMark:
                break;
        }
        out.action.direction = out.state.phase == 0 ? Direction::Clockwise : Direction::AntiClockwise;
        return out;
    });
}

Program make_turn_schedule_program(const TurnSchedule& schedule, std::string name) {
    if (name.empty()) {
        name = "schedule:";
        for (std::size_t i = 0; i < schedule.turns().size(); ++i) {
            name += (i ? "," : "") + schedule.turns()[i].str();
        }
    }
    auto turns = schedule.turns();
    // phase counts the reversals applied so far.
    return Program(std::move(name), true,
                   [turns = std::move(turns)](const ControllerState& s, const Observation& obs) {
                       Step out{s, Action{}};
                       if (obs.kind == ObservationKind::ScheduledMark) {
                           ++out.state.phase;
                       }
                       out.action.direction = out.state.phase % 2 == 0 ? Direction::Clockwise
                                                                       : Direction::AntiClockwise;
                       if (obs.kind != ObservationKind::PebbleHere && out.state.phase < turns.size()) {
                           out.action.next_mark = turns[out.state.phase];
                       }
                       return out;
                   });
}

Program program_by_name(std::string_view name, const Parameters& params) {
    if (name == "dr") {
        return make_dr(params);
    }
    if (name == "two-stage") {
        return make_two_stage(params);
    }
    if (name == "pebble") {
        return make_pebble(params);
    }
    constexpr std::string_view prefix = "schedule:";
    if (name.substr(0, prefix.size()) == prefix) {
        std::vector<Rational> turns;
        std::string_view rest = name.substr(prefix.size());
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            turns.push_back(Rational::parse(rest.substr(0, comma)));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        return make_turn_schedule_program(TurnSchedule(std::move(turns)), std::string(name));
    }
    throw std::invalid_argument("unknown program '" + std::string(name) +
                                "' (expected dr, two-stage, pebble or schedule:<list>)");
}

}  // namespace rendezvous
