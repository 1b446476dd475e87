#include "rendezvous/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rendezvous/analysis.hpp"
#include "rendezvous/engine.hpp"
#include "rendezvous/errors.hpp"

namespace rendezvous::cli {

namespace {

std::string decimal(const Rational& x) {
    std::ostringstream os;
    os << std::setprecision(12) << x.to_double();
    return os.str();
}

std::string exact_and_decimal(const Rational& x) {
    if (x.is_integer()) {
        return x.str();
    }
    return x.str() + " (" + decimal(x) + ")";
}

Rational parse_field(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string("--") + flag + ": '" + text +
                                    "' is not an exact rational (use p/q or a terminating decimal)");
    }
}

Parameters parse_params(const RunConfig& cfg) {
    if (cfg.n.empty() || cfg.c.empty()) {
        throw std::invalid_argument("--n and --c are required");
    }
    return Parameters(parse_field(cfg.n, "n"), parse_field(cfg.c, "c"));
}

std::optional<Rational> parse_optional(const std::optional<std::string>& text, const char* flag) {
    if (!text) {
        return std::nullopt;
    }
    return parse_field(*text, flag);
}

/// Runs `body`, mapping validation failures to exit code 1.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ModelMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

void with_output(const RunConfig& cfg, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
    if (!cfg.out) {
        write(fallback);
        return;
    }
    std::ofstream file(*cfg.out);
    if (!file) {
        throw std::invalid_argument("--out: cannot open '" + *cfg.out + "' for writing");
    }
    write(file);
}

void write_events_csv(const SimulationResult& res, std::ostream& os) {
    os << "t,agent,kind,pos,pedometer\n";
    for (const auto& ev : res.trace) {
        os << ev.t.fraction_str() << ',' << to_string(ev.agent) << ',' << to_string(ev.kind) << ','
           << ev.pos.value().fraction_str() << ',' << ev.pedometer.fraction_str() << '\n';
    }
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Parameters params = parse_params(cfg);
        if (!cfg.d) {
            throw std::invalid_argument("simulate requires --d");
        }
        const PlacementSpec placement(parse_field(*cfg.d, "d"), params);
        const auto horizon = parse_optional(cfg.horizon, "horizon");
        if (horizon && horizon->sign() <= 0) {
            throw std::invalid_argument("--horizon must be positive");
        }
        const Program program = program_by_name(cfg.program, params);
        const SimulationResult res = simulate(program, params, placement, horizon);

        if (cfg.out) {
            with_output(cfg, out, [&](std::ostream& os) {
                if (cfg.format == "csv") {
                    write_events_csv(res, os);
                } else {
                    os << trace_to_json(res).dump(2) << '\n';
                }
            });
        }
        if (!res.met()) {
            out << "horizon exceeded at t=" << res.horizon << " (" << decimal(res.horizon)
                << "), no rendezvous\n";
            return int{kHorizonExceeded};
        }
        out << "rendezvous " << *res.rendezvous_time << " (" << decimal(*res.rendezvous_time) << ") at "
            << res.meeting_point.value() << '\n';
        return int{kOk};
    });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Parameters params = parse_params(cfg);
        const Program program = program_by_name(cfg.program, params);
        SweepOptions opts;
        opts.grid = cfg.grid;
        opts.jobs = cfg.jobs;
        opts.horizon = parse_optional(cfg.horizon, "horizon");
        if (opts.grid < 1) {
            throw std::invalid_argument("--grid must be at least 1");
        }

        SweepReport rep;
        try {
            rep = worst_case_sweep(program, params, opts);
        } catch (const HorizonExceeded& e) {
            err << "error: " << e.what() << '\n';
            return int{kHorizonExceeded};
        }
        with_output(cfg, out, [&](std::ostream& os) { write_sweep_csv(rep, os); });

        const Rational& sup = rep.supremum.value;
        out << "supremum " << exact_and_decimal(sup) << ", " << to_string(rep.supremum.approach)
            << " at d=" << rep.supremum.d << "; attained max " << exact_and_decimal(rep.maximum.value)
            << " at d=" << rep.maximum.d << "; " << rep.regimes.size() << " regimes, "
            << rep.simulations << " runs\n";

        const auto epsilon = parse_optional(cfg.epsilon, "epsilon");
        try {
            const GapWitness gap = gap_adversary(program, params, epsilon);
            out << "gap witness d*=" << gap.placement << " rendezvous " << exact_and_decimal(gap.rendezvous_time)
                << " >= window " << exact_and_decimal(gap.window) << '\n';
        } catch (const ConstructionFailed& e) {
            out << "gap witness failed: " << e.what() << '\n';
        }

        const BoundSet b = bounds(params);
        bool pass = false;
        std::ostringstream verdict;
        const std::string& name = program.name();
        auto equal_to = [&](const Rational& bound) {
            pass = sup == bound;
            verdict << "max " << sup << (pass ? " = " : " != ") << "bound " << bound;
        };
        if (name == "dr") {
            equal_to(b.dr_supremum);
        } else if (name == "two-stage") {
            equal_to(b.no_comm_tight);
        } else if (name == "pebble") {
            if (params.c() <= Rational(2)) {
                equal_to(b.pebble_upper);
            } else {
                pass = sup <= b.pebble_upper && sup >= b.pebble_lower;
                const bool floor_is_meeting = b.pebble_lower == params.n() / (params.c() + 1);
                verdict << "max " << sup << " <= " << b.pebble_upper << " (n/c), >= " << b.pebble_lower
                        << (floor_is_meeting ? " (n/(c+1))" : " (n/(2(c-1)))");
            }
        } else {
            pass = sup >= b.no_comm_tight;
            verdict << "max " << sup << " >= bound " << b.no_comm_tight;
        }
        out << verdict.str() << (pass ? " PASS" : " FAIL") << '\n';
        return pass ? int{kOk} : int{kBoundFailed};
    });
}

int cmd_coverage(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Parameters params = parse_params(cfg);
        const Program program = program_by_name(cfg.program, params);
        if (!program.communication_free()) {
            throw ModelMismatch("coverage analysis requires a communication-free program");
        }
        const auto horizon_opt = parse_optional(cfg.horizon, "horizon");
        const Rational horizon = horizon_opt ? *horizon_opt : default_horizon(params);
        if (horizon.sign() < 0) {
            throw std::invalid_argument("--horizon must be nonnegative");
        }
        const OffsetTrace trace = offset_trace(program, params, horizon);
        const CoverageResult cov = coverage_time(trace);
        const RuleCheck rules = check_rules(trace);

        if (cfg.out) {
            with_output(cfg, out, [&](std::ostream& os) { write_coverage_csv(cov, os); });
        }
        if (cov.coverage_time) {
            out << "coverage " << exact_and_decimal(*cov.coverage_time);
        } else {
            Rational black;
            for (const auto& iv : cov.black_set) {
                black += iv.hi - iv.lo;
            }
            out << "incomplete (black measure " << exact_and_decimal(black) << " of " << params.n() << ")";
        }
        if (rules) {
            out << ", rules OK\n";
        } else {
            out << ", rules violated:";
            for (const auto& v : rules.violations) {
                out << " [rule " << v.rule << " at t=" << v.t << ": " << v.detail << ']';
            }
            out << '\n';
        }
        return int{kOk};
    });
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Parameters params = parse_params(cfg);
        const BoundSet b = bounds(params);
        out << "no_comm_tight " << exact_and_decimal(b.no_comm_tight) << '\n'
            << "pebble_upper " << exact_and_decimal(b.pebble_upper) << '\n'
            << "pebble_lower " << exact_and_decimal(b.pebble_lower) << '\n'
            << "tau " << exact_and_decimal(b.tau) << '\n'
            << "two_stage_k " << exact_and_decimal(b.two_stage_k) << '\n'
            << "dr_supremum " << exact_and_decimal(b.dr_supremum) << '\n';
        return int{kOk};
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact two-agent rendezvous on a ring with speeds 1 and c"};
    app.require_subcommand(1);
    app.footer(
        "Rationals are exact: p/q or terminating decimals.\n"
        "Exit codes: 0 ok, 1 usage/validation, 2 horizon exceeded, 3 sweep bound check failed.\n"
        "CSV formats:\n"
        "  sweep:    d,time,regime_id,signature_hash\n"
        "  coverage: t,black_measure\n"
        "  simulate: t,agent,kind,pos,pedometer (with --format csv)\n"
        "All rationals in CSV and JSON are written as p/q.");

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App* sub, bool with_program) {
        sub->add_option("--n", cfg.n, "ring length")->required();
        sub->add_option("--c", cfg.c, "speed ratio, > 1")->required();
        if (with_program) {
            sub->add_option("--program", cfg.program, "dr | two-stage | pebble | schedule:<r1>,<r2>,...")
                ->capture_default_str();
        }
    };

    auto* sim = app.add_subcommand("simulate", "run one placement and report the rendezvous time");
    add_common(sim, true);
    sim->add_option("--d", cfg.d, "clockwise distance from A's start to B's start")->required();
    sim->add_option("--horizon", cfg.horizon, "time limit (default 4n/(c-1))");
    sim->add_option("--format", cfg.format, "trace format for --out: json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sim->add_option("--out", cfg.out, "write the event trace here");

    auto* sweep = app.add_subcommand("sweep", "exact worst case over all placements");
    add_common(sweep, true);
    sweep->add_option("--grid", cfg.grid, "number of seed placements")->capture_default_str();
    sweep->add_option("--jobs", cfg.jobs, "worker threads (0: all cores)")->capture_default_str();
    sweep->add_option("--horizon", cfg.horizon, "per-run time limit (default 4n/(c-1))");
    sweep->add_option("--format", cfg.format, "output format (csv)");
    sweep->add_option("--out", cfg.out, "write the sample CSV here instead of stdout");

    auto* cov = app.add_subcommand("coverage", "offset-coverage time of a communication-free program");
    add_common(cov, true);
    cov->add_option("--horizon", cfg.horizon, "analysis horizon (default 4n/(c-1))");
    cov->add_option("--format", cfg.format, "output format (csv)");
    cov->add_option("--out", cfg.out, "write the black-measure CSV here");

    auto* bnd = app.add_subcommand("bounds", "closed-form bounds for (n, c)");
    add_common(bnd, false);

    sweep->add_option("--epsilon", cfg.epsilon, "gap-adversary window slack (default n/10^6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int{kOk} : int{kUsage};
    }

    if (sim->parsed()) {
        return cmd_simulate(cfg, out, err);
    }
    if (sweep->parsed()) {
        return cmd_sweep(cfg, out, err);
    }
    if (cov->parsed()) {
        return cmd_coverage(cfg, out, err);
    }
    return cmd_bounds(cfg, out, err);
}

}  // namespace rendezvous::cli
