#include "shockfront/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace shockfront {

namespace {

void canonicalize(std::vector<double>& b, std::vector<double>& v) {
    if (b.size() != v.size() + 1) {
        throw std::invalid_argument("step function: need one more breakpoint than values");
    }
    if (v.empty()) {
        b.clear();
        return;
    }
    const double eps = scaled_eps(b.back() - b.front());
    // Drop zero-width cells.
    std::vector<double> bb{b.front()};
    std::vector<double> vv;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (b[i + 1] - bb.back() <= eps) continue;
        bb.push_back(b[i + 1]);
        vv.push_back(v[i]);
    }
    // Merge adjacent equal values.
    std::vector<double> mb{};
    std::vector<double> mv;
    for (std::size_t i = 0; i < vv.size(); ++i) {
        if (!mv.empty() && vv[i] == mv.back()) {
            mb.back() = bb[i + 1];
            continue;
        }
        if (mb.empty()) mb.push_back(bb[i]);
        mb.push_back(bb[i + 1]);
        mv.push_back(vv[i]);
    }
    // Trim zero-valued edges.
    std::size_t lo = 0, hi = mv.size();
    while (lo < hi && mv[lo] == 0.0) ++lo;
    while (hi > lo && mv[hi - 1] == 0.0) --hi;
    if (lo == hi) {
        b.clear();
        v.clear();
        return;
    }
    b.assign(mb.begin() + static_cast<std::ptrdiff_t>(lo),
             mb.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    v.assign(mv.begin() + static_cast<std::ptrdiff_t>(lo),
             mv.begin() + static_cast<std::ptrdiff_t>(hi));
}

}  // namespace

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<double> breakpoints,
                                         std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() && values_.empty()) return;
    if (breakpoints_.size() != values_.size() + 1) {
        throw std::invalid_argument("step function: need one more breakpoint than values");
    }
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1])) {
            throw std::invalid_argument("step function: breakpoints must be strictly increasing");
        }
    }
    canonicalize(breakpoints_, values_);
}

PiecewiseConstantFn make_step(std::vector<double> breakpoints, std::vector<double> values) {
    if (values.empty()) return {};
    canonicalize(breakpoints, values);
    if (values.empty()) return {};
    PiecewiseConstantFn out;
    // Already canonical; reuse the validating constructor.
    return PiecewiseConstantFn(std::move(breakpoints), std::move(values));
}

double PiecewiseConstantFn::operator()(double x) const {
    if (is_zero() || x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const auto idx = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return values_[idx];
}

double PiecewiseConstantFn::min_value() const {
    double m = 0.0;  // the implicit zero outside the support
    for (double v : values_) m = std::min(m, v);
    return m;
}

double PiecewiseConstantFn::max_value() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
}

double PiecewiseConstantFn::sup_norm() const {
    return std::max(max_value(), -min_value());
}

PiecewiseConstantFn PiecewiseConstantFn::shifted(double h) const {
    auto b = breakpoints_;
    for (double& x : b) x += h;
    return PiecewiseConstantFn(std::move(b), values_);
}

PiecewiseConstantFn PiecewiseConstantFn::value_scaled(double a) const {
    auto v = values_;
    for (double& y : v) y *= a;
    return PiecewiseConstantFn(breakpoints_, std::move(v));
}

double PiecewiseLinearFn::operator()(double q) const {
    if (q <= x.front()) return y.front() + slope_left * (q - x.front());
    if (q >= x.back()) return y.back() + slope_right * (q - x.back());
    const auto it = std::upper_bound(x.begin(), x.end(), q);
    const auto i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double w = (q - x[i]) / (x[i + 1] - x[i]);
    return y[i] + w * (y[i + 1] - y[i]);
}

double QuantileFn::operator()(double q) const {
    const auto it = std::upper_bound(xi.begin(), xi.end(), q);
    std::size_t k = static_cast<std::size_t>(it - xi.begin());
    if (k == 0) return x_lo.front();
    if (k > x_lo.size()) return x_hi.back();  // q >= m: left-limit convention
    --k;
    const double w = (q - xi[k]) / (xi[k + 1] - xi[k]);
    return x_lo[k] + w * (x_hi[k] - x_lo[k]);
}

double QuantileFn::left_limit(double q) const {
    const auto it = std::lower_bound(xi.begin(), xi.end(), q);
    const auto k = static_cast<std::size_t>(it - xi.begin());
    if (k < xi.size() && xi[k] == q && k > 0) return x_hi[k - 1];
    return (*this)(q);
}

double mass(const PiecewiseConstantFn& u) {
    double s = 0.0;
    const auto& b = u.breakpoints();
    const auto& v = u.values();
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * (b[i + 1] - b[i]);
    return s;
}

double total_variation(const PiecewiseConstantFn& u) {
    if (u.is_zero()) return 0.0;
    const auto& v = u.values();
    double tv = std::abs(v.front()) + std::abs(v.back());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) tv += std::abs(v[i + 1] - v[i]);
    return tv;
}

double lip_plus(const PiecewiseConstantFn& u) {
    const auto& v = u.values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1] > v[i]) return kInf;
    }
    return 0.0;
}

double lip_plus(const PiecewiseLinearFn& u) {
    double c = std::max({0.0, u.slope_left, u.slope_right});
    for (std::size_t s = 0; s < u.segment_count(); ++s) c = std::max(c, u.slope(s));
    return c;
}

PiecewiseLinearFn primitive(const PiecewiseConstantFn& u) {
    PiecewiseLinearFn U;
    if (u.is_zero()) {
        U.x = {0.0};
        U.y = {0.0};
        U.nondecreasing = true;
        return U;
    }
    const auto& b = u.breakpoints();
    const auto& v = u.values();
    U.x = b;
    U.y.resize(b.size());
    U.y[0] = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        U.y[i + 1] = U.y[i] + v[i] * (b[i + 1] - b[i]);
    }
    U.nondecreasing = u.nonnegative();
    return U;
}

QuantileFn pseudo_inverse(const PiecewiseLinearFn& U) {
    if (U.slope_left != 0.0 || U.slope_right != 0.0) {
        throw std::invalid_argument("pseudo_inverse: input must be constant outside its nodes");
    }
    const double m = U.y.back();
    if (!(m > 0.0)) throw std::invalid_argument("pseudo_inverse: total mass must be positive");
    const double tol = 1e-12 * m;
    if (std::abs(U.y.front()) > tol) {
        throw std::invalid_argument("pseudo_inverse: U must start at 0");
    }

    QuantileFn Q;
    Q.xi.push_back(0.0);
    double level = 0.0;
    for (std::size_t s = 0; s < U.segment_count(); ++s) {
        const double dy = U.y[s + 1] - U.y[s];
        if (dy < -tol) throw std::invalid_argument("pseudo_inverse: input not nondecreasing");
        if (dy <= 0.0) continue;  // flat piece: becomes a jump of the inverse
        level += dy;
        Q.xi.push_back(level);
        Q.x_lo.push_back(U.x[s]);
        Q.x_hi.push_back(U.x[s + 1]);
    }
    if (Q.x_lo.empty()) throw std::invalid_argument("pseudo_inverse: total mass must be positive");
    Q.xi.back() = m;  // absorb rounding drift in the accumulated levels
    return Q;
}

double integrate_abs_affine(double w1, double w2, double L) {
    if (L <= 0.0) return 0.0;
    if ((w1 >= 0.0) == (w2 >= 0.0)) {
        return 0.5 * (std::abs(w1) + std::abs(w2)) * L;  // trapezoid, exact without a crossing
    }
    const double a1 = std::abs(w1), a2 = std::abs(w2);
    const double z = a1 / (a1 + a2);  // relative crossing position
    return 0.5 * L * (a1 * z + a2 * (1.0 - z));
}

double integrate_abs_pow(double w1, double w2, double L, double p) {
    if (L <= 0.0) return 0.0;
    const double a1 = std::abs(w1), a2 = std::abs(w2);
    if ((w1 >= 0.0) != (w2 >= 0.0)) {
        // split at the zero crossing; each side is a pure power ramp
        const double z = a1 / (a1 + a2);
        return (std::pow(a1, p) * z + std::pow(a2, p) * (1.0 - z)) * L / (p + 1.0);
    }
    const double scale = a1 + a2;
    if (scale == 0.0) return 0.0;
    if (std::abs(w2 - w1) <= 1e-4 * scale) {
        // nearly constant: Simpson on the smooth integrand, error O((dw/w)^4)
        const double mid = std::pow(std::abs(0.5 * (w1 + w2)), p);
        return L * (std::pow(a1, p) + 4.0 * mid + std::pow(a2, p)) / 6.0;
    }
    // antiderivative |w|^{p+1} sign(w) / (b (p+1)) is well conditioned here
    const double b = (w2 - w1) / L;
    auto F = [&](double w) {
        return std::copysign(std::pow(std::abs(w), p + 1.0), w) / (b * (p + 1.0));
    };
    return F(w2) - F(w1);
}

double l1_distance(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
    if (u.is_zero() && v.is_zero()) return 0.0;
    std::vector<double> grid;
    grid.insert(grid.end(), u.breakpoints().begin(), u.breakpoints().end());
    grid.insert(grid.end(), v.breakpoints().begin(), v.breakpoints().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double midpoint = 0.5 * (grid[i] + grid[i + 1]);
        s += std::abs(u(midpoint) - v(midpoint)) * (grid[i + 1] - grid[i]);
    }
    return s;
}

}  // namespace shockfront
