#include "rendezvous/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "rendezvous/errors.hpp"

namespace rendezvous {

std::string_view to_string(AgentId agent) { return agent == AgentId::A ? "A" : "B"; }

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Start: return "start";
        case EventKind::PebbleDrop: return "drop";
        case EventKind::PebbleHere: return "pebble";
        case EventKind::ScheduledMark: return "mark";
        case EventKind::Turn: return "turn";
        case EventKind::Rendezvous: return "rendezvous";
        case EventKind::HorizonExceeded: return "horizon";
    }
    return "?";
}

PlacementSpec::PlacementSpec(Rational d, const Parameters& params) : d_(std::move(d)) {
    if (d_.sign() < 0 || d_ >= params.n()) {
        throw std::invalid_argument("placement d must lie in [0, n) (got d=" + d_.str() +
                                    ", n=" + params.n().str() + ")");
    }
}

Rational default_horizon(const Parameters& params) {
    return Rational(4) * params.n() / (params.c() - 1);
}

namespace {

struct AgentRuntime {
    AgentRuntime(AgentId who, Rational v, RingPoint start, const Rational& n)
        : id(who), speed(std::move(v)), pos(start), traj(n, start) {}

    AgentId id;
    Rational speed;
    RingPoint pos;
    Trajectory traj;
    Direction dir = Direction::Clockwise;
    Rational pedometer;
    std::optional<Rational> mark;
    ControllerState ctl;

    Rational velocity() const { return dir == Direction::Clockwise ? speed : -speed; }
};

class World {
public:
    World(const Program& program, const Parameters& params, Rational horizon)
        : program_(program), n_(params.n()), horizon_(std::move(horizon)) {
        if (horizon_.sign() <= 0) {
            throw std::invalid_argument("simulation horizon must be positive");
        }
    }

    void add_agent(AgentId id, Rational speed, RingPoint start) {
        agents_.emplace_back(id, std::move(speed), start, n_);
    }

    /// Runs to rendezvous (when `detect_meeting`) or to the horizon.
    std::optional<Rational> run(bool detect_meeting) {
        for (auto& a : agents_) {
            record(a, EventKind::Start);
            apply(a, program_.start(), ObservationKind::Start);
        }
        if (detect_meeting && co_located()) {
            record_rendezvous();
            return now_;
        }

        while (true) {
            std::optional<Rational> next;
            auto consider = [&next](const Rational& tau) {
                if (!next || tau < *next) {
                    next = tau;
                }
            };
            if (detect_meeting) {
                const auto& a = agents_[0];
                const auto& b = agents_[1];
                if (auto tau = closing_time(a.pos.value() - b.pos.value(), a.velocity() - b.velocity(), n_)) {
                    consider(*tau);
                }
            }
            for (const auto& a : agents_) {
                for (const auto& p : pebbles_) {
                    Rational gap = a.dir == Direction::Clockwise ? cw_distance(a.pos, p, n_)
                                                                 : cw_distance(p, a.pos, n_);
                    if (gap.sign() == 0) {
                        gap = n_;
                    }
                    consider(gap / a.speed);
                }
                if (a.mark) {
                    consider((*a.mark - a.pedometer) / a.speed);
                }
            }

            const Rational remaining = horizon_ - now_;
            if (!next || *next > remaining) {
                if (remaining.sign() > 0) {
                    advance(remaining);
                }
                for (const auto& a : agents_) {
                    record(a, EventKind::HorizonExceeded);
                }
                return std::nullopt;
            }

            advance(*next);
            if (detect_meeting && co_located()) {
                record_rendezvous();
                return now_;
            }
            for (auto& a : agents_) {
                if (std::find(pebbles_.begin(), pebbles_.end(), a.pos) != pebbles_.end()) {
                    record(a, EventKind::PebbleHere);
                    apply(a, program_.react(a.ctl, {ObservationKind::PebbleHere, a.pedometer}),
                          ObservationKind::PebbleHere);
                }
            }
            for (auto& a : agents_) {
                if (a.mark && *a.mark == a.pedometer) {
                    a.mark.reset();
                    record(a, EventKind::ScheduledMark);
                    apply(a, program_.react(a.ctl, {ObservationKind::ScheduledMark, a.pedometer}),
                          ObservationKind::ScheduledMark);
                }
            }
        }
    }

    const Rational& now() const { return now_; }
    std::vector<TraceEvent>& trace() { return trace_; }
    std::vector<AgentRuntime>& agents() { return agents_; }

private:
    bool co_located() const { return agents_[0].pos == agents_[1].pos; }

    void record(const AgentRuntime& a, EventKind kind) {
        trace_.push_back(TraceEvent{now_, a.id, kind, a.pos, a.pedometer});
    }

    void record_rendezvous() {
        for (const auto& a : agents_) {
            record(a, EventKind::Rendezvous);
        }
    }

    void apply(AgentRuntime& a, const Step& step, ObservationKind cause) {
        a.ctl = step.state;
        const Action& act = step.action;
        if (act.next_mark) {
            if (*act.next_mark <= a.pedometer) {
                std::ostringstream msg;
                msg << "program '" << program_.name() << "' (agent " << to_string(a.id) << ", t=" << now_
                    << ", event #" << trace_.size() << ") scheduled mark " << *act.next_mark
                    << " not above pedometer " << a.pedometer;
                throw ProgramFault(msg.str());
            }
            a.mark = act.next_mark;
        }
        if (act.drop_pebble) {
            if (std::find(pebbles_.begin(), pebbles_.end(), a.pos) == pebbles_.end()) {
                pebbles_.push_back(a.pos);
            }
            record(a, EventKind::PebbleDrop);
        }
        if (cause != ObservationKind::Start && act.direction != a.dir) {
            record(a, EventKind::Turn);
        }
        a.dir = act.direction;
    }

    void advance(const Rational& tau) {
        const Rational t_end = now_ + tau;
        for (auto& a : agents_) {
            MotionSegment seg{now_, t_end, a.pos, a.velocity()};
            a.pos = seg.end_position(n_);
            a.traj.append(std::move(seg));
            a.pedometer += a.speed * tau;
        }
        now_ = t_end;
    }

    const Program& program_;
    Rational n_;
    Rational horizon_;
    Rational now_;
    std::vector<AgentRuntime> agents_;
    std::vector<RingPoint> pebbles_;
    std::vector<TraceEvent> trace_;
};

}  // namespace

SimulationResult simulate(const Program& program, const Parameters& params,
                          const PlacementSpec& placement, std::optional<Rational> horizon) {
    const Rational h = horizon ? *horizon : default_horizon(params);
    World world(program, params, h);
    world.add_agent(AgentId::A, params.c(), RingPoint::wrap(0, params.n()));
    world.add_agent(AgentId::B, Rational(1), RingPoint::wrap(placement.d(), params.n()));
    const auto met = world.run(true);

    auto& agents = world.agents();
    SimulationResult result{program.name(),
                            params,
                            placement.d(),
                            h,
                            met,
                            met ? agents[0].pos : RingPoint{},
                            std::move(world.trace()),
                            std::move(agents[0].traj),
                            std::move(agents[1].traj)};
    return result;
}

Trajectory simulate_solo(const Program& program, const Parameters& params, const Rational& speed,
                         const Rational& horizon) {
    World world(program, params, horizon);
    world.add_agent(AgentId::A, speed, RingPoint::wrap(0, params.n()));
    world.run(false);
    return std::move(world.agents()[0].traj);
}

ReplayReport replay_check(const SimulationResult& result, const Parameters& params) {
    ReplayReport report;
    auto fail = [&report](std::string msg) {
        report.ok = false;
        report.diagnostics.push_back(std::move(msg));
    };
    const Rational& n = params.n();
    const Trajectory* trajs[2] = {&result.traj_a, &result.traj_b};
    const Rational speeds[2] = {params.c(), Rational(1)};

    if (result.traj_a.origin() != RingPoint::wrap(0, n)) {
        fail("agent A does not start at point 0");
    }
    if (result.traj_b.origin() != RingPoint::wrap(result.d, n)) {
        fail("agent B does not start at d=" + result.d.str());
    }
    if (result.traj_a.end_time() != result.traj_b.end_time()) {
        fail("trajectory spans differ");
        return report;
    }
    const Rational end = result.traj_a.end_time();

    for (int k = 0; k < 2; ++k) {
        const auto segs = trajs[k]->segments();
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const Rational v = abs(segs[i].velocity);
            if (v.sign() != 0 && v != speeds[k]) {
                fail("agent " + std::string(k == 0 ? "A" : "B") + " segment " + std::to_string(i) +
                     " has speed " + v.str());
            }
            if (i + 1 < segs.size() && (segs[i].t_end != segs[i + 1].t_start ||
                                        segs[i].end_position(n) != segs[i + 1].p_start)) {
                fail("discontinuity after segment " + std::to_string(i));
            }
        }
    }

    std::vector<RingPoint> pebbles;
    std::vector<Rational> drop_times;
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const auto& ev = result.trace[i];
        if (i > 0 && ev.t < result.trace[i - 1].t) {
            fail("trace time decreases at event " + std::to_string(i));
        }
        if (ev.t.sign() < 0 || ev.t > end) {
            fail("trace event " + std::to_string(i) + " outside trajectory span");
            continue;
        }
        const Trajectory& tr = *trajs[ev.agent == AgentId::A ? 0 : 1];
        if (tr.position_at(ev.t) != ev.pos) {
            fail("trace event " + std::to_string(i) + " position mismatch");
        }
        if (tr.pedometer_at(ev.t) != ev.pedometer) {
            fail("trace event " + std::to_string(i) + " pedometer mismatch");
        }
        if (ev.kind == EventKind::PebbleDrop) {
            pebbles.push_back(ev.pos);
            drop_times.push_back(ev.t);
        }
    }

    // No pebble may be passed strictly inside a segment: that would be a
    // missed observation.
    for (std::size_t p = 0; p < pebbles.size(); ++p) {
        for (int k = 0; k < 2; ++k) {
            for (const auto& seg : trajs[k]->segments()) {
                if (seg.t_start < drop_times[p] || seg.velocity.sign() == 0) {
                    continue;
                }
                Rational gap = seg.velocity.sign() > 0 ? cw_distance(seg.p_start, pebbles[p], n)
                                                       : cw_distance(pebbles[p], seg.p_start, n);
                if (gap.sign() == 0) {
                    gap = n;
                }
                if (gap < seg.distance()) {
                    fail("pebble at " + pebbles[p].value().str() + " crossed inside a segment at t=" +
                         seg.t_start.str());
                }
            }
        }
    }

    // Grid pass: one cursor per agent walks the segments forward. Within a
    // segment consecutive grid samples differ by a fixed increment, so the
    // pedometer and lifted displacement are only recomputed on entry.
    constexpr int kGrid = 1000;
    struct Cursor {
        std::size_t idx = 0;
        Rational seg_ped;   // at the start of segment idx
        Rational seg_disp;
        Rational ped;       // at the current grid time
        Rational disp;
        Rational ped_step;
        Rational disp_step;
        bool fresh = true;
    };
    Cursor cur[2];
    const Rational step = end / Rational(kGrid);
    Rational t;
    for (int i = 0; i <= kGrid; ++i, t += step) {
        for (int k = 0; k < 2; ++k) {
            const auto segs = trajs[k]->segments();
            Cursor& c = cur[k];
            while (c.idx + 1 < segs.size() && segs[c.idx].t_end < t) {
                c.seg_ped += segs[c.idx].distance();
                c.seg_disp += segs[c.idx].velocity * segs[c.idx].duration();
                ++c.idx;
                c.fresh = true;
            }
            if (c.idx >= segs.size()) {
                continue;  // empty trajectory: stays at its origin
            }
            const MotionSegment& seg = segs[c.idx];
            if (c.fresh) {
                const Rational dt = t - seg.t_start;
                c.ped = c.seg_ped + abs(seg.velocity) * dt;
                c.disp = c.seg_disp + seg.velocity * dt;
                c.ped_step = abs(seg.velocity) * step;
                c.disp_step = seg.velocity * step;
                c.fresh = false;
            } else {
                c.ped += c.ped_step;
                c.disp += c.disp_step;
            }
            if (c.ped > speeds[k] * t || abs(c.disp) > c.ped) {
                fail("pedometer inconsistent at t=" + t.str());
            }
        }
        // same ring point <=> lifted positions differ by a multiple of n
        const bool together = ((cur[0].disp - cur[1].disp - result.d) / n).is_integer();
        if ((!result.rendezvous_time || t < *result.rendezvous_time) && together) {
            fail("agents co-located before the reported rendezvous, at t=" + t.str());
        }
    }

    const auto first = first_meeting_time(result.traj_a, result.traj_b, n);
    if (result.rendezvous_time) {
        const Rational& t = *result.rendezvous_time;
        if (t != end) {
            fail("trajectories do not end at the rendezvous time");
        } else {
            if (result.traj_a.position_at(t) != result.meeting_point ||
                result.traj_b.position_at(t) != result.meeting_point) {
                fail("agents not co-located at the meeting point at t=" + t.str());
            }
        }
        if (!first || *first != t) {
            fail("independent meeting computation gives " + (first ? first->str() : std::string("none")) +
                 ", reported " + t.str());
        }
    } else {
        if (first) {
            fail("agents meet at t=" + first->str() + " but the result reports no rendezvous");
        }
        if (end != result.horizon) {
            fail("run without rendezvous stops before its horizon");
        }
    }
    return report;
}

std::vector<std::pair<AgentId, EventKind>> event_signature(const SimulationResult& result) {
    std::vector<std::pair<AgentId, EventKind>> sig;
    sig.reserve(result.trace.size());
    for (const auto& ev : result.trace) {
        sig.emplace_back(ev.agent, ev.kind);
    }
    return sig;
}

std::string signature_string(const SimulationResult& result) {
    std::string s;
    for (const auto& ev : result.trace) {
        if (!s.empty()) {
            s += ' ';
        }
        s += to_string(ev.agent);
        s += ':';
        s += to_string(ev.kind);
    }
    return s;
}

}  // namespace rendezvous
