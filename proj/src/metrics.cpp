#include "shockfront/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shockfront {

namespace {

void require_equal_masses(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
    const double mu = mass(u), mv = mass(v);
    const double scale = std::max({1e-30, std::abs(mu), std::abs(mv)});
    if (std::abs(mu - mv) > 1e-10 * scale) {
        throw std::invalid_argument("wasserstein: masses differ");
    }
}

void require_nonnegative(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
    if (!u.nonnegative() || !v.nonnegative()) {
        throw std::invalid_argument("wasserstein: densities must be nonnegative");
    }
}

std::vector<double> merged_grid(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> g;
    g.reserve(a.size() + b.size());
    g.insert(g.end(), a.begin(), a.end());
    g.insert(g.end(), b.begin(), b.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

struct QuantilePair {
    QuantileFn qu, qv;
    double m;
    std::vector<double> grid;
};

QuantilePair quantile_pair(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
    QuantilePair qp;
    qp.qu = pseudo_inverse(primitive(u));
    qp.qv = pseudo_inverse(primitive(v));
    qp.m = std::min(qp.qu.total_mass(), qp.qv.total_mass());
    qp.grid = merged_grid(qp.qu.xi, qp.qv.xi);
    while (!qp.grid.empty() && qp.grid.back() > qp.m) qp.grid.pop_back();
    if (qp.grid.empty() || qp.grid.back() < qp.m) qp.grid.push_back(qp.m);
    return qp;
}

}  // namespace

double w1(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
    require_equal_masses(u, v);
    if (u.is_zero() && v.is_zero()) return 0.0;
    const PiecewiseLinearFn U = primitive(u), V = primitive(v);
    const auto grid = merged_grid(U.x, V.x);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double w1v = U(grid[i]) - V(grid[i]);
        const double w2v = U(grid[i + 1]) - V(grid[i + 1]);
        s += integrate_abs_affine(w1v, w2v, grid[i + 1] - grid[i]);
    }
    return s;
}

double wp(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("wp: p must be >= 1");
    require_equal_masses(u, v);
    require_nonnegative(u, v);
    if (u.is_zero() && v.is_zero()) return 0.0;
    const auto qp = quantile_pair(u, v);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < qp.grid.size(); ++i) {
        const double a = qp.grid[i], b = qp.grid[i + 1];
        // right value at the left end, left limit at the right end: the open
        // segment is affine for both quantiles
        const double w1v = qp.qu(a) - qp.qv(a);
        const double w2v = qp.qu.left_limit(b) - qp.qv.left_limit(b);
        s += integrate_abs_pow(w1v, w2v, b - a, p);
    }
    return std::pow(s, 1.0 / p);
}

double winf(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
    require_equal_masses(u, v);
    require_nonnegative(u, v);
    if (u.is_zero() && v.is_zero()) return 0.0;
    const auto qp = quantile_pair(u, v);
    double s = 0.0;
    for (double xi : qp.grid) {
        s = std::max(s, std::abs(qp.qu(xi) - qp.qv(xi)));
        s = std::max(s, std::abs(qp.qu.left_limit(xi) - qp.qv.left_limit(xi)));
    }
    return s;
}

InterpolationCheck interpolation_check(const PiecewiseConstantFn& u,
                                       const PiecewiseConstantFn& v, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("interpolation_check: p must exceed 1");
    const double w1v = w1(u, v);
    const double wiv = winf(u, v);
    InterpolationCheck ic;
    ic.wp_value = wp(u, v, p);
    ic.bound = std::pow(w1v, 1.0 / p) * std::pow(wiv, 1.0 - 1.0 / p);
    return ic;
}

double primitive_sup(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
    require_equal_masses(u, v);
    if (u.is_zero() && v.is_zero()) return 0.0;
    const PiecewiseLinearFn U = primitive(u), V = primitive(v);
    const auto grid = merged_grid(U.x, V.x);
    double s = 0.0;
    for (double x : grid) s = std::max(s, std::abs(U(x) - V(x)));
    return s;
}

DistanceReport distance_report(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v,
                               const std::vector<double>& ps) {
    DistanceReport r;
    const double mu = mass(u), mv = mass(v);
    const double scale = std::max({1e-30, std::abs(mu), std::abs(mv)});
    r.masses_equal = std::abs(mu - mv) <= 1e-10 * scale;
    r.nonnegative = u.nonnegative() && v.nonnegative();
    r.l1 = l1_distance(u, v);
    if (!r.masses_equal) return r;
    r.w1 = w1(u, v);
    r.primitive_sup = primitive_sup(u, v);
    if (!r.nonnegative) return r;
    r.winf = winf(u, v);
    for (double p : ps) {
        if (p >= 1.0 && std::isfinite(p)) r.wp[p] = wp(u, v, p);
    }
    return r;
}

double gronwall_factor(double lip_fprime, double lip_plus_c, double t) {
    return std::exp(lip_fprime * lip_plus_c * t);
}

double support_bound(double supp0, double dx, double lip_f, double t) {
    return supp0 + 2.0 * dx + lip_f * t;
}

BoundPair stability_bound_check(const FrontTrackingRun& ru, const FrontTrackingRun& rv,
                                double t, const W1StabilityParams& prm) {
    BoundPair bp;
    bp.lhs = w1(snapshot(ru, t), snapshot(rv, t));
    const double M = std::max(ru.initial().sup_norm(), rv.initial().sup_norm());
    const double gap = flux_gap(ru.flux(), rv.flux(), M);
    const double supp0 = std::max(ru.initial().width(), rv.initial().width());
    const double lip_f = std::max(ru.flux().lipschitz(-M, M), rv.flux().lipschitz(-M, M));
    const double kt = support_bound(supp0, prm.dx, lip_f, t);
    const double ct = gronwall_factor(prm.lip_fprime, prm.lip_plus_c, t);
    bp.rhs = ct * (w1(ru.initial(), rv.initial()) + t * kt * gap);
    return bp;
}

BoundPair winf_contraction_check(const FrontTrackingRun& ru, const FrontTrackingRun& rv,
                                 double t) {
    if (!ru.flux().same_as(rv.flux())) {
        throw std::invalid_argument("winf_contraction_check: runs must share the flux");
    }
    BoundPair bp;
    bp.lhs = winf(snapshot(ru, t), snapshot(rv, t));
    bp.rhs = winf(ru.initial(), rv.initial());
    return bp;
}

double winf_flux_rhs(const ConjugatePair& a, const ConjugatePair& b, double t, double mass) {
    if (!(t > 0.0)) return 0.0;
    std::vector<double> gammas;
    const std::size_t n = 1u << 12;
    gammas.reserve(n + 64);
    for (std::size_t k = 0; k <= n; ++k) {
        gammas.push_back(mass * static_cast<double>(k) / static_cast<double>(n));
    }
    auto add_kinks = [&](const ConjugatePair& cp, const ConjugatePair& other) {
        if (cp.piecewise) {
            for (double q : cp.ftilde_pl.x) {
                const double g = t * q;
                if (g >= 0.0 && g <= mass) gammas.push_back(g);
            }
            // analytic-vs-piecewise: per segment of the pl inverse, the gap
            // is extremal where the analytic inverse matches the segment slope
            if (!other.piecewise && other.ftilde_slope_inv) {
                const auto& ft = cp.ftilde_pl;
                for (std::size_t s = 0; s < ft.segment_count(); ++s) {
                    const double sl = ft.slope(s);
                    if (!(sl > 0.0)) continue;
                    const double g = t * other.ftilde_slope_inv(sl);
                    if (g >= 0.0 && g <= mass) gammas.push_back(g);
                }
            }
        }
    };
    add_kinks(a, b);
    add_kinks(b, a);
    double s = 0.0;
    for (double g : gammas) {
        s = std::max(s, std::abs(a.ftilde(g / t) - b.ftilde(g / t)));
    }
    return t * s;
}

BoundPair winf_flux_stability_check(const FrontTrackingRun& ru, const FrontTrackingRun& rv,
                                    double t) {
    if (!(ru.initial() == rv.initial())) {
        throw std::invalid_argument("winf_flux_stability_check: runs must share the initial data");
    }
    BoundPair bp;
    bp.lhs = winf(snapshot(ru, t), snapshot(rv, t));
    const ConjugatePair ca = legendre_transform(ru.flux());
    const ConjugatePair cb = legendre_transform(rv.flux());
    bp.rhs = winf_flux_rhs(ca, cb, t, mass(ru.initial()));
    return bp;
}

}  // namespace shockfront
