#pragma once

// Convex flux algebra: analytic fluxes, piecewise-linear interpolation,
// Legendre conjugates, restricted inverses, and the flux-side constants used
// by the convergence bounds.

#include <functional>
#include <string>

#include "shockfront/piecewise.hpp"

namespace shockfront {

class Flux {
public:
    static Flux burgers();                 // u^2/2
    static Flux power(int exponent);       // u^p/p, p even, p >= 2
    static Flux piecewise_linear(PiecewiseLinearFn nodes, double spacing = 0.0);

    // Custom analytic flux for tests and user extensions. Conjugate callables
    // may be left empty, in which case legendre_transform rejects the flux.
    static Flux analytic(std::string name,
                         std::function<double(double)> f,
                         std::function<double(double)> df,
                         std::function<double(double)> d2f,
                         std::function<double(double)> conj = {},
                         std::function<double(double)> ftilde = {},
                         std::function<double(double)> ftilde_slope_inv = {},
                         bool min_at_zero = false);

    const std::string& name() const { return name_; }
    bool is_piecewise_linear() const { return is_pl_; }
    bool min_at_zero() const { return min_at_zero_; }

    double operator()(double u) const;
    // f' (analytic) or the a.e. segment slope (piecewise linear).
    double derivative(double u) const;
    // sup of f'' on [lo, hi]; analytic fluxes only.
    double second_derivative_sup(double lo, double hi) const;
    // max |f'| on [lo, hi].
    double lipschitz(double lo, double hi) const;

    const PiecewiseLinearFn& nodes() const;  // piecewise-linear fluxes only
    double node_spacing() const;             // delta; 0 if irregular/unknown

    bool same_as(const Flux& other) const;

    // internal accessors used by legendre_transform
    const std::function<double(double)>& conj_fn() const { return conj_; }
    const std::function<double(double)>& ftilde_fn() const { return ftilde_; }
    const std::function<double(double)>& ftilde_slope_inv_fn() const { return ftilde_slope_inv_; }

private:
    std::string name_;
    bool is_pl_ = false;
    bool min_at_zero_ = false;
    PiecewiseLinearFn nodes_;
    double spacing_ = 0.0;
    std::function<double(double)> f_, df_, d2f_;
    std::function<double(double)> conj_, ftilde_, ftilde_slope_inv_;
};

// Conjugate f* together with its restricted inverse f~ on [0, inf).
struct ConjugatePair {
    bool piecewise = false;
    bool min_at_zero = false;

    // piecewise case: breakpoints of conj_pl are the chord slopes sigma_j
    PiecewiseLinearFn conj_pl;
    PiecewiseLinearFn ftilde_pl;  // on [0, q_max]; constant sigma_max above
    double sigma_min = -kInf;
    double sigma_max = kInf;
    double q_max = kInf;

    // analytic case
    std::function<double(double)> conj_fn;
    std::function<double(double)> ftilde_fn;
    std::function<double(double)> ftilde_slope_inv;  // q with ftilde'(q) = s; may be empty
    std::function<double(double)> flux_derivative;   // f'; minimizer seed for Hopf-Lax

    // f*(p); +inf outside [sigma_min, sigma_max] in the piecewise case.
    double conj(double p) const;
    // f~(q) = sup{ p >= 0 : f*(p) <= q }; clamps to sigma_max above q_max.
    double ftilde(double q) const;
};

// Piecewise linear interpolation of an analytic convex flux with nodes at
// j*delta covering [-(M+delta), M+delta]. The result dominates f pointwise.
Flux interpolate_flux(const Flux& f, double delta, double M);

// f*(p) = sup_u { pu - f(u) }. Analytic fluxes must supply the conjugate in
// closed form; piecewise-linear fluxes get the exact piecewise-linear
// conjugate with breakpoints at the chord slopes.
ConjugatePair legendre_transform(const Flux& f);

// f~(q) for q >= 0. Requires f(0) = 0 to be the minimum of the flux.
double restricted_inverse(const ConjugatePair& cp, double q);

// sup over v in (0, M] of a(v) = (f'(v) v - f(v)) / v^2; analytic for the
// shipped closed-form fluxes, dense sampling with refinement otherwise.
double oleinik_a_sup(const Flux& f, double M);

// sup of |f - g| on [-M, M] over a merged lattice of uniform samples plus
// all piecewise-linear nodes and chord midpoints.
double flux_gap(const Flux& f, const Flux& g, double M);

// Conjugate of a piecewise-linear convex function given by its nodes;
// breakpoints of the result are the input's chord slopes.
PiecewiseLinearFn conjugate_of_nodes(const PiecewiseLinearFn& f);

}  // namespace shockfront
