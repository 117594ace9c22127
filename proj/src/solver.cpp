#include "shockfront/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace shockfront {

double chord_speed(const Flux& flux, double a, double b) {
    return (flux(a) - flux(b)) / (a - b);
}

bool front_is_entropy_admissible(const Flux& flux, double ul, double ur) {
    if (ul > ur) return true;  // downward jump: shock, admissible for convex flux
    if (ul == ur) return false;
    const auto& x = flux.nodes().x;
    const double scale = std::max(1.0, std::abs(flux(ul)) + std::abs(flux(ur)));
    for (double node : x) {
        if (node <= ul || node >= ur) continue;
        if (chord_speed(flux, node, ur) - chord_speed(flux, ul, node) > 1e-12 * scale) {
            return false;  // strict kink inside the jump: should have fanned
        }
    }
    return true;
}

RiemannFan solve_riemann(const Flux& flux, double ul, double ur, bool require_lattice) {
    if (!flux.is_piecewise_linear()) {
        throw std::invalid_argument("solve_riemann: piecewise-linear flux required");
    }
    if (ul == ur) throw std::invalid_argument("solve_riemann: states must differ");
    const auto& nd = flux.nodes();
    const double tol = 1e-9 * std::max(1.0, std::abs(nd.x.front()) + std::abs(nd.x.back()));
    const double lo = std::min(ul, ur), hi = std::max(ul, ur);
    if (lo < nd.x.front() - tol || hi > nd.x.back() + tol) {
        throw std::invalid_argument("solve_riemann: states outside the flux node range");
    }
    if (require_lattice) {
        for (double u : {ul, ur}) {
            const auto it = std::lower_bound(nd.x.begin(), nd.x.end(), u - tol);
            if (it == nd.x.end() || std::abs(*it - u) > tol) {
                throw std::invalid_argument("solve_riemann: state off the flux node lattice");
            }
        }
    }

    RiemannFan fan;
    if (ul > ur) {  // lower state on the right: single shock at the chord speed
        fan.states = {ul, ur};
        fan.speeds = {chord_speed(flux, ul, ur)};
        return fan;
    }
    // Rarefaction resolved along the flux graph: one front per node interval.
    fan.states.push_back(ul);
    for (double node : nd.x) {
        if (node > ul + tol && node < ur - tol) fan.states.push_back(node);
    }
    fan.states.push_back(ur);
    double slope_scale = 1.0;
    for (std::size_t s = 0; s < nd.segment_count(); ++s) {
        slope_scale = std::max(slope_scale, std::abs(nd.slope(s)));
    }
    const double stol = 1e-13 * slope_scale;
    for (std::size_t i = 0; i + 1 < fan.states.size();) {
        const double sp = chord_speed(flux, fan.states[i], fan.states[i + 1]);
        if (!fan.speeds.empty() && sp <= fan.speeds.back() + stol) {
            // equal chord slopes (flux affine across): merge into one front
            fan.states.erase(fan.states.begin() + static_cast<std::ptrdiff_t>(i));
            fan.speeds.back() = chord_speed(flux, fan.states[i - 1], fan.states[i]);
            continue;
        }
        fan.speeds.push_back(sp);
        ++i;
    }
    return fan;
}

namespace {

struct Collision {
    double time;
    std::size_t left, right;
    bool operator<(const Collision& o) const { return time > o.time; }  // min-heap
};

}  // namespace

FrontTrackingRun run_front_tracking(const PiecewiseConstantFn& u0, const Flux& flux,
                                    double t_end, const RunOptions& opts) {
    if (!flux.is_piecewise_linear()) {
        throw std::invalid_argument("run_front_tracking: piecewise-linear flux required");
    }
    if (!(t_end >= 0.0)) throw std::invalid_argument("run_front_tracking: t_end must be >= 0");

    FrontTrackingRun run;
    run.flux_ = flux;
    run.initial_ = u0;
    run.t_end_ = t_end;
    if (u0.is_zero()) return run;

    const auto& nd = flux.nodes();
    double speed_scale = 1.0;
    for (std::size_t s = 0; s < nd.segment_count(); ++s) {
        speed_scale = std::max(speed_scale, std::abs(nd.slope(s)));
    }
    const double x_scale =
        std::max({1.0, std::abs(u0.support_lo()), std::abs(u0.support_hi())}) +
        speed_scale * t_end;
    const double pos_tol = 1e-12 * x_scale;

    auto& fronts = run.fronts_;
    std::vector<std::ptrdiff_t> next, prev;
    std::priority_queue<Collision> queue;

    auto schedule = [&](std::ptrdiff_t i, std::ptrdiff_t k, double t_now) {
        if (i < 0 || k < 0) return;
        const auto fi = static_cast<std::size_t>(i), fk = static_cast<std::size_t>(k);
        const double closing = fronts[fi].speed - fronts[fk].speed;
        if (closing <= 0.0) return;
        double gap = fronts[fk].position(t_now) - fronts[fi].position(t_now);
        if (gap < 0.0) gap = 0.0;
        const double tc = t_now + gap / closing;
        if (tc <= t_end) queue.push({tc, fi, fk});
    };

    auto emit = [&](double t, double x, double ul, double ur) {
        std::vector<std::size_t> ids;
        if (ul == ur) return ids;
        const RiemannFan fan = solve_riemann(flux, ul, ur, false);
        for (std::size_t j = 0; j < fan.speeds.size(); ++j) {
            Front f;
            f.birth_time = t;
            f.birth_pos = x;
            f.speed = fan.speeds[j];
            f.u_left = fan.states[j];
            f.u_right = fan.states[j + 1];
            ids.push_back(fronts.size());
            fronts.push_back(f);
            next.push_back(-1);
            prev.push_back(-1);
        }
        for (std::size_t j = 0; j + 1 < ids.size(); ++j) {
            next[ids[j]] = static_cast<std::ptrdiff_t>(ids[j + 1]);
            prev[ids[j + 1]] = static_cast<std::ptrdiff_t>(ids[j]);
        }
        return ids;
    };

    // Initial Riemann problems at every jump of u0.
    const auto& b = u0.breakpoints();
    const auto& v = u0.values();
    std::ptrdiff_t tail = -1;
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double ul = (j == 0) ? 0.0 : v[j - 1];
        const double ur = (j == v.size()) ? 0.0 : v[j];
        const auto ids = emit(0.0, b[j], ul, ur);
        if (ids.empty()) continue;
        if (tail >= 0) {
            next[static_cast<std::size_t>(tail)] = static_cast<std::ptrdiff_t>(ids.front());
            prev[ids.front()] = tail;
        }
        tail = static_cast<std::ptrdiff_t>(ids.back());
    }
    for (std::size_t i = 0; i < fronts.size(); ++i) {
        schedule(prev[i], static_cast<std::ptrdiff_t>(i), 0.0);
    }

    const auto wall_start = std::chrono::steady_clock::now();
    long long processed = 0;
    std::vector<char> alive(fronts.size(), 1);

    while (!queue.empty()) {
        const Collision c = queue.top();
        queue.pop();
        if (c.time > t_end) break;
        if (!alive[c.left] || !alive[c.right]) continue;
        if (next[c.left] != static_cast<std::ptrdiff_t>(c.right)) continue;

        if (++processed > opts.event_cap) {
            throw std::runtime_error("run_front_tracking: event cap exceeded");
        }
        if ((processed & 63) == 0 && std::isfinite(opts.max_seconds)) {
            const std::chrono::duration<double> el = std::chrono::steady_clock::now() - wall_start;
            if (el.count() > opts.max_seconds) {
                throw std::runtime_error("run_front_tracking: wall-clock budget exceeded");
            }
        }

        const double t = c.time;
        const double xc = 0.5 * (fronts[c.left].position(t) + fronts[c.right].position(t));

        // Gather every front converging into this point; fronts merely passing
        // nearby (diverging speeds) stay untouched.
        std::vector<std::size_t> chain{c.left, c.right};
        while (true) {
            const std::ptrdiff_t p = prev[chain.front()];
            if (p < 0) break;
            const auto fp = static_cast<std::size_t>(p);
            if (std::abs(fronts[fp].position(t) - xc) > pos_tol) break;
            if (fronts[fp].speed <= fronts[chain.front()].speed) break;
            chain.insert(chain.begin(), fp);
        }
        while (true) {
            const std::ptrdiff_t nx = next[chain.back()];
            if (nx < 0) break;
            const auto fn = static_cast<std::size_t>(nx);
            if (std::abs(fronts[fn].position(t) - xc) > pos_tol) break;
            if (fronts[fn].speed >= fronts[chain.back()].speed) break;
            chain.push_back(fn);
        }

        const std::ptrdiff_t out_prev = prev[chain.front()];
        const std::ptrdiff_t out_next = next[chain.back()];
        for (std::size_t id : chain) {
            fronts[id].death_time = t;
            alive[id] = 0;
        }

        InteractionEvent ev;
        ev.time = t;
        ev.pos = xc;
        ev.absorbed = chain;
        const double ul = fronts[chain.front()].u_left;
        const double ur = fronts[chain.back()].u_right;
        ev.emitted = emit(t, xc, ul, ur);
        alive.resize(fronts.size(), 1);
        if (!ev.emitted.empty()) {
            prev[ev.emitted.front()] = out_prev;
            if (out_prev >= 0) next[static_cast<std::size_t>(out_prev)] = static_cast<std::ptrdiff_t>(ev.emitted.front());
            next[ev.emitted.back()] = out_next;
            if (out_next >= 0) prev[static_cast<std::size_t>(out_next)] = static_cast<std::ptrdiff_t>(ev.emitted.back());
            schedule(out_prev, static_cast<std::ptrdiff_t>(ev.emitted.front()), t);
            schedule(static_cast<std::ptrdiff_t>(ev.emitted.back()), out_next, t);
        } else {
            if (out_prev >= 0) next[static_cast<std::size_t>(out_prev)] = out_next;
            if (out_next >= 0) prev[static_cast<std::size_t>(out_next)] = out_prev;
            schedule(out_prev, out_next, t);
        }
        run.events_.push_back(std::move(ev));
    }
    return run;
}

std::vector<std::size_t> FrontTrackingRun::active_at(double t) const {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < fronts_.size(); ++i) {
        if (fronts_[i].alive_at(t)) ids.push_back(i);
    }
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        const double pa = fronts_[a].position(t), pb = fronts_[b].position(t);
        if (pa != pb) return pa < pb;
        return fronts_[a].speed < fronts_[b].speed;
    });
    return ids;
}

PiecewiseConstantFn snapshot(const FrontTrackingRun& run, double t) {
    const double tol = 1e-12 * std::max(1.0, run.t_end());
    if (t < -tol || t > run.t_end() + tol) {
        throw std::out_of_range("snapshot: time outside [0, t_end]");
    }
    t = std::clamp(t, 0.0, run.t_end());
    const auto ids = run.active_at(t);
    if (ids.empty()) return {};

    const auto& fr = run.fronts();
    double state_scale = 1.0, pos_scale = 1.0;
    for (std::size_t id : ids) {
        state_scale = std::max(state_scale, std::abs(fr[id].u_left));
        pos_scale = std::max(pos_scale, std::abs(fr[id].position(t)));
    }
    const double state_tol = 1e-12 * state_scale;
    const double pos_tol = 1e-11 * pos_scale;

    // Fronts at coincident positions (births and mid-interaction ties) form a
    // cluster whose interior cells have zero width; only the net jump across
    // the cluster matters for the profile.
    std::vector<double> breaks;
    std::vector<double> values;
    double state = 0.0;
    std::size_t j = 0;
    while (j < ids.size()) {
        const double x = fr[ids[j]].position(t);
        double jump = 0.0;
        std::size_t cluster = 0;
        while (j + cluster < ids.size() && fr[ids[j + cluster]].position(t) - x <= pos_tol) {
            const Front& f = fr[ids[j + cluster]];
            jump += f.u_right - f.u_left;
            ++cluster;
        }
        if (cluster == 1 && std::abs(fr[ids[j]].u_left - state) > state_tol) {
            throw std::logic_error("snapshot: inconsistent state chain");
        }
        state += jump;
        breaks.push_back(x);
        values.push_back(state);
        j += cluster;
    }
    if (std::abs(values.back()) > state_tol) {
        throw std::logic_error("snapshot: rightmost front must fall to zero");
    }
    values.pop_back();  // beyond the last cluster the profile is zero
    if (values.empty()) return {};
    return make_step(std::move(breaks), std::move(values));
}

double hopf_lax_primitive(const PiecewiseLinearFn& U0, const ConjugatePair& cp, double x,
                          double t) {
    if (t < 0.0) throw std::invalid_argument("hopf_lax_primitive: t must be >= 0");
    if (t == 0.0) return U0(x);

    std::vector<double> ys;
    ys.reserve(U0.x.size() + 8);
    if (cp.piecewise) {
        const double y_lo = x - cp.sigma_max * t;
        const double y_hi = x - cp.sigma_min * t;
        ys.push_back(y_lo);
        ys.push_back(y_hi);
        for (double s : cp.conj_pl.x) ys.push_back(x - s * t);
        for (double bx : U0.x) {
            if (bx > y_lo && bx < y_hi) ys.push_back(bx);
        }
    } else {
        for (double bx : U0.x) ys.push_back(bx);
        ys.push_back(x);
        if (cp.flux_derivative) {
            // stationary point inside each affine piece of U0: y = x - t f'(slope)
            auto push_stationary = [&](double slope) {
                ys.push_back(x - t * cp.flux_derivative(slope));
            };
            push_stationary(U0.slope_left);
            push_stationary(U0.slope_right);
            for (std::size_t s = 0; s < U0.segment_count(); ++s) push_stationary(U0.slope(s));
        }
    }

    double best = kInf;
    for (double y : ys) {
        double p = (x - y) / t;
        if (cp.piecewise) p = std::clamp(p, cp.sigma_min, cp.sigma_max);
        const double val = t * cp.conj(p) + U0(x - p * t);
        best = std::min(best, val);
    }
    return best;
}

double inverse_primitive_formula(const QuantileFn& Q0, const ConjugatePair& cp, double gamma,
                                 double t) {
    const double m = Q0.total_mass();
    const double tol = 1e-12 * std::max(1.0, m);
    if (gamma < -tol || gamma > m + tol) {
        throw std::invalid_argument("inverse_primitive_formula: gamma outside [0, mass]");
    }
    if (!(t > 0.0)) throw std::invalid_argument("inverse_primitive_formula: t must be positive");
    gamma = std::clamp(gamma, 0.0, m);

    std::vector<double> omegas{0.0, gamma};
    for (double xi : Q0.xi) {
        if (xi > 0.0 && xi < gamma) omegas.push_back(xi);
    }
    if (cp.piecewise) {
        for (double q : cp.ftilde_pl.x) {
            const double w = gamma - t * q;
            if (w > 0.0 && w < gamma) omegas.push_back(w);
        }
    } else if (cp.ftilde_slope_inv) {
        for (std::size_t k = 0; k < Q0.segment_count(); ++k) {
            const double b = (Q0.x_hi[k] - Q0.x_lo[k]) / (Q0.xi[k + 1] - Q0.xi[k]);
            if (!(b > 0.0)) continue;
            const double w = gamma - t * cp.ftilde_slope_inv(b);
            if (w > 0.0 && w < gamma) omegas.push_back(w);
        }
    }

    double best = -kInf;
    for (double w : omegas) {
        const double q = std::max(0.0, (gamma - w) / t);
        best = std::max(best, t * cp.ftilde(q) + Q0(w));
    }
    return best;
}

}  // namespace shockfront
