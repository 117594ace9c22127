#pragma once

// Closed-form reference solutions represented through piecewise-quadratic
// primitives, and exact distances between a step function and such a
// reference. Keeping the reference analytic keeps its error out of the
// measured convergence rates.

#include <vector>

#include "shockfront/piecewise.hpp"

namespace shockfront {

// U(x) = a x^2 + b x + c on [prev_hi, x_hi]; pieces are contiguous and U is
// continuous, 0 left of x_lo and equal to mass right of the last piece.
struct AnalyticProfile {
    struct Piece {
        double x_hi;
        double a, b, c;
    };
    double x_lo = 0.0;
    std::vector<Piece> pieces;
    double mass = 0.0;

    double support_hi() const { return pieces.back().x_hi; }
    double primitive(double x) const;
    double density(double x) const;   // dU/dx inside the pieces, 0 outside
    double quantile(double xi) const; // inverse of the primitive on [0, mass]
};

// Entropy solution of Burgers with wedge data u0(x) = 2x on [0,1]:
// u = 2x/(1+2t) up to the shock s(t) = sqrt(1+2t).
AnalyticProfile wedge_profile(double t);
double exact_wedge_burgers(double x, double t);

// Entropy solution of Burgers with u0 = 1 on [-1, 0): rarefaction fan from
// the left edge, shock on the right at speed 1/2 until the fan catches up at
// t = 2, then s(t) = sqrt(2t) - 1.
AnalyticProfile decreasing_step_profile(double t);
double exact_shock_burgers(double x, double t);

// Primitive of the upward-ramp regularization of grid data: every increasing
// value pair (u_i < u_{i+1}) at centers i dx, (i+1) dx is replaced by the
// linear ramp across [i dx, (i+1) dx]; elsewhere the step function is kept.
AnalyticProfile upward_ramp_regularization(const PiecewiseConstantFn& u, double dx);

// Exact distances between a step function and an analytic profile.
double l1_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref);
double w1_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref);
double wp_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref, double p);
double winf_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref);
double primitive_sup_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref);

}  // namespace shockfront
