#pragma once

// Exact Wasserstein distances between piecewise-constant densities via the
// one-dimensional quantile representation, plus the stability and
// contraction diagnostics.

#include <map>
#include <vector>

#include "shockfront/piecewise.hpp"
#include "shockfront/solver.hpp"

namespace shockfront {

// W1(u, v) = integral |U - V| dx. Requires equal masses (1e-10 relative) but
// tolerates signed densities; computed from the primitive form directly.
double w1(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v);

// Wp(u, v) = || U^{-1} - V^{-1} ||_{L^p([0, m])}, exact segment-wise
// integration with closed-form |a + b xi|^p antiderivatives. Requires
// nonnegative densities, equal masses, p >= 1.
double wp(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v, double p);

// W_inf: sup of |U^{-1} - V^{-1}| including both one-sided limits at jumps.
double winf(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v);

// Returns (Wp, W1^{1/p} * Winf^{1-1/p}); the first never exceeds the second.
struct InterpolationCheck {
    double wp_value;
    double bound;
};
InterpolationCheck interpolation_check(const PiecewiseConstantFn& u,
                                       const PiecewiseConstantFn& v, double p);

// sup_x |U - V| over merged breakpoints (the primitive-difference diagnostic).
double primitive_sup(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v);

struct DistanceReport {
    double l1 = 0.0;
    double w1 = 0.0;
    double winf = 0.0;
    double primitive_sup = 0.0;
    std::map<double, double> wp;  // p -> value
    bool masses_equal = false;
    bool nonnegative = false;  // needed for Wp / W_inf
};
DistanceReport distance_report(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v,
                               const std::vector<double>& ps);

struct BoundPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

// Gronwall factor C(t) = exp(||f'||_Lip * C * t) of the W1 stability bound.
double gronwall_factor(double lip_fprime, double lip_plus_c, double t);

// Support bound K(t) = |supp(u0)| + 2 dx + ||f||_Lip t.
double support_bound(double supp0, double dx, double lip_f, double t);

// W1 stability: lhs = W1(u(t), v(t)),
// rhs = C(t) [ W1(u0, v0) + t K(t) sup|f - g| ].
struct W1StabilityParams {
    double lip_fprime;  // Lipschitz constant of f' (sup f'' of the smooth flux)
    double lip_plus_c;  // Lip+ constant of the initial data
    double dx;          // grid size entering K(t)
};
BoundPair stability_bound_check(const FrontTrackingRun& ru, const FrontTrackingRun& rv,
                                double t, const W1StabilityParams& prm);

// W_inf contraction for two runs sharing one flux:
// lhs = W_inf(u(t), v(t)), rhs = W_inf(u0, v0).
BoundPair winf_contraction_check(const FrontTrackingRun& ru, const FrontTrackingRun& rv,
                                 double t);

// t * sup_{gamma in [0, m]} |f~ - g~|(gamma / t), kink preimages included.
double winf_flux_rhs(const ConjugatePair& a, const ConjugatePair& b, double t, double mass);

// W_inf flux stability for two runs sharing the initial data:
// lhs = W_inf(u(t), v(t)), rhs = t sup |f~ - g~|(gamma/t).
BoundPair winf_flux_stability_check(const FrontTrackingRun& ru, const FrontTrackingRun& rv,
                                    double t);

}  // namespace shockfront
