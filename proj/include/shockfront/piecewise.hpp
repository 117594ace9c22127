#pragma once

// Exact representation and algebra of piecewise-constant and piecewise-linear
// functions on the line: evaluation, primitives, pseudo-inverses, variation,
// grid projection. All values are immutable after construction.

#include <cstddef>
#include <limits>
#include <vector>

namespace shockfront {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Absolute tolerance for breakpoint comparisons, scaled by the extent of the
// data (1e-12 * support width, floored at 1e-12).
inline double scaled_eps(double width) {
    return 1e-12 * (width > 1.0 ? width : 1.0);
}

// Compactly supported step function in canonical form: strictly increasing
// breakpoints x_0 < ... < x_n, value v_i on [x_{i-1}, x_i), zero outside
// [x_0, x_n). Canonical means no two adjacent values are equal, no
// zero-width cells, and no zero-valued leading/trailing cells.
class PiecewiseConstantFn {
public:
    PiecewiseConstantFn() = default;  // the zero function
    PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<double> values);

    bool is_zero() const { return values_.empty(); }
    std::size_t cell_count() const { return values_.size(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }

    double support_lo() const { return is_zero() ? 0.0 : breakpoints_.front(); }
    double support_hi() const { return is_zero() ? 0.0 : breakpoints_.back(); }
    double width() const { return support_hi() - support_lo(); }

    // Pointwise value; cells are closed left, open right; 0 outside.
    double operator()(double x) const;

    double min_value() const;
    double max_value() const;
    double sup_norm() const;
    bool nonnegative() const { return min_value() >= 0.0; }

    PiecewiseConstantFn shifted(double h) const;
    PiecewiseConstantFn value_scaled(double a) const;

    bool operator==(const PiecewiseConstantFn&) const = default;

private:
    std::vector<double> breakpoints_;  // size values_.size()+1 (empty if zero fn)
    std::vector<double> values_;
};

// Continuous broken line: node values y_i at breakpoints x_i, affine between
// nodes, affine extensions with the given slopes outside [x_0, x_n].
struct PiecewiseLinearFn {
    std::vector<double> x;  // strictly increasing, size >= 1
    std::vector<double> y;  // same size as x
    double slope_left = 0.0;
    double slope_right = 0.0;
    bool nondecreasing = false;

    double operator()(double q) const;
    std::size_t segment_count() const { return x.size() - 1; }
    double slope(std::size_t seg) const { return (y[seg + 1] - y[seg]) / (x[seg + 1] - x[seg]); }

    bool operator==(const PiecewiseLinearFn&) const = default;
};

// Right-continuous generalized inverse of a nondecreasing CDF-like function,
// defined on [0, m]: xi |-> inf{ x : U(x) > xi }. Piecewise affine with
// explicit jumps: segment k maps [xi[k], xi[k+1]] affinely onto
// [x_lo[k], x_hi[k]]; a jump sits at xi[k] whenever x_hi[k-1] < x_lo[k].
// By convention the value at xi = m is the left limit (sup of the support).
struct QuantileFn {
    std::vector<double> xi;    // size K+1, 0 = xi[0] < ... < xi[K] = m
    std::vector<double> x_lo;  // size K
    std::vector<double> x_hi;  // size K

    double total_mass() const { return xi.back(); }
    std::size_t segment_count() const { return x_lo.size(); }

    double operator()(double q) const;   // right-continuous value
    double left_limit(double q) const;   // limit from below (value itself at q=0)
};

// integral u dx
double mass(const PiecewiseConstantFn& u);

// Sum of |jump| over all jumps including the two boundary jumps to zero.
double total_variation(const PiecewiseConstantFn& u);

// Smallest C with (u(x+z)-u(x))/z <= C for x, x+z inside the support hull.
// Jumps to the implicit zero extension at the support edges are not counted,
// so a decreasing staircase reports 0 while any interior upward jump reports
// +inf. For the continuous broken-line type this is the largest positive
// slope (extensions included).
double lip_plus(const PiecewiseConstantFn& u);
double lip_plus(const PiecewiseLinearFn& u);

// U(x) = integral_{-inf}^x u; continuous, slope v_i on cell i, constant
// outside the support (0 on the left, mass(u) on the right).
PiecewiseLinearFn primitive(const PiecewiseConstantFn& u);

// Pseudo-inverse of a nondecreasing bounded U with U(-inf) = 0. Flat pieces
// of U become jumps of the result. Throws on non-monotone input or zero
// total mass.
QuantileFn pseudo_inverse(const PiecewiseLinearFn& U);

// Exact integral |u - v| dx over merged breakpoints.
double l1_distance(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v);

// Builds a step function from raw data: sorts out zero-width cells, merges
// equal adjacent values, trims zero edges. Used by the solver where raw
// breakpoints may carry coincident positions.
PiecewiseConstantFn make_step(std::vector<double> breakpoints, std::vector<double> values);

// Exact integral of |w(s)| over a segment of length L where w is affine with
// endpoint values w1 and w2. Stable for w1 == w2 up to rounding.
double integrate_abs_affine(double w1, double w2, double L);

// Exact integral of |w(s)|^p on the same segment, p >= 1.
double integrate_abs_pow(double w1, double w2, double L, double p);

}  // namespace shockfront
