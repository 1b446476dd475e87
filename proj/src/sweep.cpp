// Exact worst case over the adversary's placement d in [0, n).
//
// Every event time of a run is affine in d as long as the order of events
// (the signature) does not change, so the rendezvous time is piecewise
// affine. The sweep seeds a grid, then resolves every pair of neighbouring
// samples whose signatures differ down to an exact cut point, and finally
// reads the supremum off the regime endpoints.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "rendezvous/analysis.hpp"
#include "rendezvous/errors.hpp"

namespace rendezvous {

std::string_view to_string(Approach a) {
    switch (a) {
        case Approach::At: return "attained";
        case Approach::FromLeft: return "limit from the left";
        case Approach::FromRight: return "limit from the right";
    }
    return "?";
}

namespace {

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct Run {
    Rational time;
    std::string sig;
    std::vector<Rational> event_times;
};

struct Affine {
    Rational slope;
    Rational intercept;
    Rational at(const Rational& d) const { return slope * d + intercept; }
};

/// A resolved signature change: `left` holds on [.., x), `right` on (x, ..].
struct Cut {
    Rational x;
    std::string left;
    std::string right;
};

constexpr int kProbeExponents[] = {1, 3, 10, 30, 60};
constexpr int kSimplestAfterHalvings = 40;
constexpr int kMaxHalvings = 200;
constexpr std::size_t kMaxSteps = 200000;

class Sweeper {
public:
    Sweeper(const Program& program, const Parameters& params, const SweepOptions& opts)
        : program_(program),
          params_(params),
          opts_(opts),
          horizon_(opts.horizon ? *opts.horizon : default_horizon(params)) {
        if (opts_.grid < 1) {
            throw std::invalid_argument("sweep grid must be at least 1");
        }
        const Rational& n = params_.n();
        tiny_ = n;
        for (int i = 0; i < kSimplestAfterHalvings; ++i) {
            tiny_ /= 2;
        }
        floor_width_ = tiny_;
        for (int i = kSimplestAfterHalvings; i < kMaxHalvings; ++i) {
            floor_width_ /= 2;
        }
    }

    SweepReport run() {
        const Rational& n = params_.n();
        std::vector<Rational> seeds;
        for (int i = 0; i < opts_.grid; ++i) {
            seeds.push_back(n * Rational(i, opts_.grid));
        }
        eval_parallel(seeds);

        // Probe towards the open end d -> n.
        const Rational last = runs_.rbegin()->first;
        std::vector<Rational> tail;
        for (int j : kProbeExponents) {
            tail.push_back(n - (n - last) / pow2(j));
        }
        eval_parallel(tail);

        while (true) {
            resolve_all();
            if (!densify()) {
                break;
            }
        }
        return build_report();
    }

private:
    static Rational pow2(int j) {
        Rational p(1);
        for (int i = 0; i < j; ++i) {
            p *= 2;
        }
        return p;
    }

    Run simulate_one(const Rational& d) {
        SimulationResult res = simulate(program_, params_, PlacementSpec(d, params_), horizon_);
        if (!res.met()) {
            throw HorizonExceeded("no rendezvous by horizon " + horizon_.str() + " for program '" +
                                      program_.name() + "' at d=" + d.str(),
                                  d);
        }
        if (opts_.replay) {
            if (auto rep = replay_check(res, params_); !rep) {
                std::lock_guard lock(mutex_);
                ++replay_failures_;
                for (auto& msg : rep.diagnostics) {
                    replay_diagnostics_.push_back("d=" + d.str() + ": " + msg);
                }
            }
        }
        Run r{*res.rendezvous_time, signature_string(res), {}};
        r.event_times.reserve(res.trace.size());
        for (const auto& ev : res.trace) {
            r.event_times.push_back(ev.t);
        }
        return r;
    }

    const Run& eval(const Rational& d) {
        if (auto it = runs_.find(d); it != runs_.end()) {
            return it->second;
        }
        ++simulations_;
        return runs_.emplace(d, simulate_one(d)).first->second;
    }

    void eval_parallel(const std::vector<Rational>& ds) {
        std::vector<Rational> todo;
        for (const auto& d : ds) {
            if (!runs_.count(d)) {
                todo.push_back(d);
            }
        }
        std::sort(todo.begin(), todo.end());
        todo.erase(std::unique(todo.begin(), todo.end()), todo.end());

        unsigned jobs = opts_.jobs ? opts_.jobs : std::max(1u, std::thread::hardware_concurrency());
        jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(todo.size(), 1)));
        std::vector<std::optional<Run>> out(todo.size());
        std::vector<std::exception_ptr> errors(todo.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next++; i < todo.size(); i = next++) {
                try {
                    out[i] = simulate_one(todo[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        if (jobs <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned j = 0; j < jobs; ++j) {
                pool.emplace_back(worker);
            }
            for (auto& t : pool) {
                t.join();
            }
        }
        // Report the failure at the smallest d so the outcome does not depend
        // on thread scheduling.
        for (std::size_t i = 0; i < todo.size(); ++i) {
            if (errors[i]) {
                std::rethrow_exception(errors[i]);
            }
        }
        for (std::size_t i = 0; i < todo.size(); ++i) {
            runs_.emplace(todo[i], std::move(*out[i]));
            ++simulations_;
        }
    }

    bool cut_at_left(const Rational& u, const std::string& right_sig) const {
        return std::any_of(cuts_.begin(), cuts_.end(),
                           [&](const Cut& c) { return c.x == u && c.right == right_sig; });
    }

    bool cut_at_right(const Rational& v, const std::string& left_sig) const {
        return std::any_of(cuts_.begin(), cuts_.end(),
                           [&](const Cut& c) { return c.x == v && c.left == left_sig; });
    }

    std::vector<std::pair<Rational, Rational>> unresolved_pairs() const {
        std::vector<std::pair<Rational, Rational>> out;
        for (auto it = runs_.begin(); std::next(it) != runs_.end(); ++it) {
            auto nx = std::next(it);
            if (it->second.sig == nx->second.sig) {
                continue;
            }
            if (cut_at_left(it->first, nx->second.sig) || cut_at_right(nx->first, it->second.sig)) {
                continue;
            }
            out.emplace_back(it->first, nx->first);
        }
        return out;
    }

    /// Affine fits of every event time, from `d` and its nearest neighbour on
    /// side `step` (-1 left, +1 right) carrying the same signature.
    std::vector<Affine> event_fits(const Rational& d, int step) const {
        auto it = runs_.find(d);
        auto other = it;
        if (step < 0) {
            if (it == runs_.begin()) {
                return {};
            }
            --other;
        } else {
            ++other;
            if (other == runs_.end()) {
                return {};
            }
        }
        if (other->second.sig != it->second.sig) {
            return {};
        }
        const Rational dd = other->first - it->first;
        std::vector<Affine> fits;
        const auto& t0 = it->second.event_times;
        const auto& t1 = other->second.event_times;
        for (std::size_t i = 0; i < t0.size(); ++i) {
            const Rational slope = (t1[i] - t0[i]) / dd;
            fits.push_back({slope, t0[i] - slope * it->first});
        }
        return fits;
    }

    std::vector<Rational> tie_candidates(const Rational& a, const Rational& b) const {
        std::vector<Affine> fits = event_fits(a, -1);
        const auto right = event_fits(b, +1);
        fits.insert(fits.end(), right.begin(), right.end());
        std::vector<Rational> out;
        for (std::size_t i = 0; i < fits.size(); ++i) {
            for (std::size_t j = i + 1; j < fits.size(); ++j) {
                const Rational ds = fits[i].slope - fits[j].slope;
                if (ds.sign() == 0) {
                    continue;
                }
                Rational x = (fits[j].intercept - fits[i].intercept) / ds;
                if (a <= x && x <= b) {
                    out.push_back(std::move(x));
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Accepts x as the exact cut between the signatures at a and b if probes
    /// at geometrically shrinking offsets on both sides agree.
    bool try_accept(const Rational& x, const Rational& a, const Rational& b) {
        const std::string sig_a = eval(a).sig;
        const std::string sig_b = eval(b).sig;
        eval(x);
        for (int j : kProbeExponents) {
            if (x > a && eval(x - (x - a) / pow2(j)).sig != sig_a) {
                return false;
            }
            if (x < b && eval(x + (b - x) / pow2(j)).sig != sig_b) {
                return false;
            }
        }
        cuts_.push_back({x, sig_a, sig_b});
        return true;
    }

    void step(const Rational& a, const Rational& b) {
        const Rational width = b - a;
        if (width < floor_width_) {
            throw RegimeRefinementError("could not locate the signature change between d=" + a.str() +
                                        " and d=" + b.str() + "; try a finer --grid");
        }
        std::vector<Rational> cands = tie_candidates(a, b);
        if (width < tiny_) {
            cands.push_back(simplest_between(a, b));
            cands.push_back(a);
            cands.push_back(b);
        }
        if (cands.size() <= 6) {
            for (const auto& x : cands) {
                if (try_accept(x, a, b)) {
                    return;
                }
                // A failed probe may have split the bracket; let the caller
                // recompute the neighbouring pairs.
                if (std::next(runs_.find(a))->first != b) {
                    return;
                }
            }
        }
        eval((a + b) / 2);
    }

    void resolve_all() {
        while (true) {
            const auto pairs = unresolved_pairs();
            if (pairs.empty()) {
                return;
            }
            for (const auto& [a, b] : pairs) {
                if (++steps_ > kMaxSteps) {
                    throw RegimeRefinementError("sweep did not converge; try a finer --grid");
                }
                // Earlier steps in this pass may have inserted samples into
                // this bracket.
                if (std::next(runs_.find(a))->first == b) {
                    step(a, b);
                }
            }
        }
    }

    struct Span {
        std::vector<Rational> ds;  // samples in the regime, ascending
        Rational lo;
        Rational hi;
        bool lo_open = false;
        bool hi_open = false;
    };

    std::vector<Span> spans() const {
        std::vector<Span> out;
        const Rational& n = params_.n();
        for (auto it = runs_.begin(); it != runs_.end(); ++it) {
            if (it == runs_.begin() || std::prev(it)->second.sig != it->second.sig) {
                Span s;
                s.lo = it->first;
                if (it != runs_.begin()) {
                    const auto& [u, ru] = *std::prev(it);
                    if (cut_at_left(u, it->second.sig)) {
                        s.lo = u;
                        s.lo_open = true;
                    }
                }
                out.push_back(std::move(s));
            }
            Span& s = out.back();
            s.ds.push_back(it->first);
            auto nx = std::next(it);
            if (nx == runs_.end()) {
                s.hi = n;
                s.hi_open = true;
            } else if (nx->second.sig != it->second.sig) {
                s.hi = it->first;
                if (!cut_at_left(it->first, nx->second.sig) && cut_at_right(nx->first, it->second.sig)) {
                    s.hi = nx->first;
                    s.hi_open = true;
                }
            }
        }
        return out;
    }

    /// Ensures each regime with positive width has three samples for the
    /// collinearity check. Returns true if new samples were added.
    bool densify() {
        std::vector<Rational> extra;
        for (const auto& s : spans()) {
            if (s.lo == s.hi || s.ds.size() >= 3) {
                continue;
            }
            for (int q = 1; q <= 3; ++q) {
                Rational x = s.lo + (s.hi - s.lo) * Rational(q, 4);
                if (!runs_.count(x)) {
                    extra.push_back(std::move(x));
                }
            }
        }
        if (extra.empty()) {
            return false;
        }
        eval_parallel(extra);
        return true;
    }

    SweepReport build_report() {
        SweepReport rep;
        std::map<Rational, std::size_t> regime_of;
        const auto all = spans();
        for (std::size_t id = 0; id < all.size(); ++id) {
            const Span& s = all[id];
            const Run& first = runs_.at(s.ds.front());
            Regime g;
            g.id = id;
            g.lo = s.lo;
            g.hi = s.hi;
            g.lo_open = s.lo_open;
            g.hi_open = s.hi_open;
            g.signature = first.sig;
            g.signature_hash = fnv1a_hex(first.sig);
            g.sample_count = s.ds.size();
            if (s.ds.size() == 1) {
                g.intercept = first.time;
            } else {
                const Rational& d0 = s.ds[0];
                const Rational& d1 = s.ds[1];
                g.slope = (runs_.at(d1).time - first.time) / (d1 - d0);
                g.intercept = first.time - g.slope * d0;
                for (const auto& d : s.ds) {
                    if (g.slope * d + g.intercept != runs_.at(d).time) {
                        throw RegimeRefinementError("rendezvous time is not affine on the regime [" +
                                                    s.lo.str() + ", " + s.hi.str() + "] (sample d=" +
                                                    d.str() + "); try a finer --grid");
                    }
                }
            }
            for (const auto& d : s.ds) {
                regime_of[d] = id;
            }
            rep.regimes.push_back(std::move(g));
        }

        bool have = false;
        auto offer = [&rep, &have](Extremum e) {
            auto better = [](const Extremum& x, const Extremum& y) {
                if (x.value != y.value) {
                    return x.value > y.value;
                }
                if (x.attained() != y.attained()) {
                    return x.attained();
                }
                return x.d < y.d;
            };
            if (!have || better(e, rep.supremum)) {
                rep.supremum = std::move(e);
                have = true;
            }
        };
        bool have_max = false;
        for (const auto& [d, r] : runs_) {
            rep.samples.push_back({d, r.time, regime_of.at(d), fnv1a_hex(r.sig)});
            if (!have_max || r.time > rep.maximum.value) {
                rep.maximum = {r.time, d, Approach::At};
                have_max = true;
            }
            offer({r.time, d, Approach::At});
        }
        for (const auto& g : rep.regimes) {
            const Affine fit{g.slope, g.intercept};
            if (g.lo_open) {
                offer({fit.at(g.lo), g.lo, Approach::FromRight});
            }
            if (g.hi_open) {
                offer({fit.at(g.hi), g.hi, Approach::FromLeft});
            }
        }
        rep.simulations = simulations_;
        rep.replay_failures = replay_failures_;
        rep.replay_diagnostics = std::move(replay_diagnostics_);
        return rep;
    }

    const Program& program_;
    Parameters params_;
    SweepOptions opts_;
    Rational horizon_;
    Rational tiny_;
    Rational floor_width_;
    std::map<Rational, Run> runs_;
    std::vector<Cut> cuts_;
    std::size_t simulations_ = 0;
    std::size_t steps_ = 0;
    std::mutex mutex_;
    std::size_t replay_failures_ = 0;
    std::vector<std::string> replay_diagnostics_;
};

}  // namespace

SweepReport worst_case_sweep(const Program& program, const Parameters& params, const SweepOptions& options) {
    return Sweeper(program, params, options).run();
}

void write_sweep_csv(const SweepReport& report, std::ostream& os) {
    os << "d,time,regime_id,signature_hash\n";
    for (const auto& s : report.samples) {
        os << s.d.fraction_str() << ',' << s.time.fraction_str() << ',' << s.regime << ','
           << s.signature_hash << '\n';
    }
}

}  // namespace rendezvous
