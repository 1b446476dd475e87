#include <stdexcept>

#include "rendezvous/analysis.hpp"

namespace rendezvous {

BoundSet bounds(const Parameters& params) {
    const Rational& n = params.n();
    const Rational& c = params.c();
    const Rational half_race = n / (Rational(2) * (c - 1));
    BoundSet b;
    b.dr_supremum = n / (c - 1);
    b.no_comm_tight = c * n / (c * c - 1);
    b.pebble_upper = max(half_race, n / c);
    b.pebble_lower = max(half_race, n / (c + 1));
    b.tau = pebble_threshold(params);
    b.two_stage_k = two_stage_turn_point(params);
    return b;
}

Rational dr_time(const Parameters& params, const Rational& d) { return d / (params.c() - 1); }

std::string_view to_string(PebbleCase c) {
    switch (c) {
        case PebbleCase::CoLocated: return "co-located";
        case PebbleCase::AtThreshold: return "at-threshold";
        case PebbleCase::BelowThreshold: return "below-threshold";
        case PebbleCase::MeetFirst: return "meet-first";
        case PebbleCase::TurnAtStart: return "turn-at-start";
    }
    return "?";
}

PebbleCase pebble_case(const Parameters& params, const Rational& d) {
    if (d.sign() < 0 || d >= params.n()) {
        throw std::out_of_range("placement d=" + d.str() + " outside [0, " + params.n().str() + ")");
    }
    const Rational tau = pebble_threshold(params);
    if (d.sign() == 0) {
        return PebbleCase::CoLocated;
    }
    if (d < tau) {
        return PebbleCase::BelowThreshold;
    }
    if (d == tau) {
        return PebbleCase::AtThreshold;
    }
    return dr_time(params, d) <= params.n() - d ? PebbleCase::MeetFirst : PebbleCase::TurnAtStart;
}

Rational pebble_time_formula(const Parameters& params, const Rational& d) {
    const Rational& n = params.n();
    const Rational& c = params.c();
    switch (pebble_case(params, d)) {
        case PebbleCase::CoLocated: return Rational(0);
        case PebbleCase::BelowThreshold: return (d + n) / (c + 1);
        case PebbleCase::AtThreshold:
        case PebbleCase::MeetFirst: return dr_time(params, d);
        case PebbleCase::TurnAtStart: return (Rational(2) * n - d) / (c + 1);
    }
    return Rational(0);
}

}  // namespace rendezvous
