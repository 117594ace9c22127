#pragma once

// Exact event-driven front tracking for u_t + f(u)_x = 0 with a
// piecewise-linear convex flux and piecewise-constant initial data, plus the
// Hopf-Lax oracle for the primitive and the quantile-side inverse formula.

#include <cstddef>
#include <vector>

#include "shockfront/flux.hpp"
#include "shockfront/piecewise.hpp"

namespace shockfront {

struct Front {
    double birth_time = 0.0;
    double death_time = kInf;
    double birth_pos = 0.0;
    double speed = 0.0;  // Rankine-Hugoniot chord slope
    double u_left = 0.0;
    double u_right = 0.0;

    double position(double t) const { return birth_pos + speed * (t - birth_time); }
    bool alive_at(double t) const { return birth_time <= t && t < death_time; }
};

// Fronts emitted from a single discontinuity; speeds strictly increasing,
// states traverse every flux node between u_left and u_right.
struct RiemannFan {
    std::vector<double> states;  // size speeds.size()+1; front() = u_l, back() = u_r
    std::vector<double> speeds;
};

struct InteractionEvent {
    double time = 0.0;
    double pos = 0.0;
    std::vector<std::size_t> absorbed;
    std::vector<std::size_t> emitted;
};

struct RunOptions {
    long long event_cap = 10'000'000;
    double max_seconds = kInf;  // wall-clock budget per run
};

class FrontTrackingRun {
public:
    const Flux& flux() const { return flux_; }
    const PiecewiseConstantFn& initial() const { return initial_; }
    double t_end() const { return t_end_; }
    const std::vector<Front>& fronts() const { return fronts_; }
    const std::vector<InteractionEvent>& events() const { return events_; }

    // Indices of fronts alive at time t, sorted left to right. Fronts dying
    // exactly at t are excluded, fronts born exactly at t included
    // (right-continuity in time).
    std::vector<std::size_t> active_at(double t) const;
    std::size_t final_front_count() const { return active_at(t_end_).size(); }

private:
    friend FrontTrackingRun run_front_tracking(const PiecewiseConstantFn&, const Flux&, double,
                                               const RunOptions&);
    Flux flux_ = Flux::burgers();
    PiecewiseConstantFn initial_;
    double t_end_ = 0.0;
    std::vector<Front> fronts_;
    std::vector<InteractionEvent> events_;
};

double chord_speed(const Flux& flux, double a, double b);

// Entropy admissibility of a single front under a convex piecewise-linear
// flux: downward jumps are always admissible, upward jumps only where the
// flux is affine across [u_l, u_r] (single-cell rarefaction fronts).
bool front_is_entropy_admissible(const Flux& flux, double ul, double ur);

// Riemann fan for states u_l != u_r inside the flux node range. With
// require_lattice the states must sit on the node lattice; the engine itself
// also accepts cell averages that fall between nodes.
RiemannFan solve_riemann(const Flux& flux, double ul, double ur, bool require_lattice = true);

// Runs the event loop up to t_end. Throws std::runtime_error if the event
// cap or wall-clock budget is exceeded.
FrontTrackingRun run_front_tracking(const PiecewiseConstantFn& u0, const Flux& flux,
                                    double t_end, const RunOptions& opts = {});

// Canonical step-function profile at time t (post-event at event times).
PiecewiseConstantFn snapshot(const FrontTrackingRun& run, double t);

// min_y { t f*((x-y)/t) + U0(y) } with y restricted to the cone
// [x - sigma_max t, x - sigma_min t]; exact over the finite candidate set of
// U0 breakpoints and conjugate kinks. At t = 0 returns U0(x).
double hopf_lax_primitive(const PiecewiseLinearFn& U0, const ConjugatePair& cp, double x,
                          double t);

// max over omega in [0, gamma] of { t f~((gamma-omega)/t) + Q0(omega) };
// exact over the candidate set of Q0 breakpoints and f~ kink preimages.
// Requires t > 0 and gamma in [0, mass].
double inverse_primitive_formula(const QuantileFn& Q0, const ConjugatePair& cp, double gamma,
                                 double t);

}  // namespace shockfront
