#include "shockfront/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shockfront {

namespace {

// 32-point Gauss-Legendre rule on [-1, 1] (positive nodes; symmetric).
constexpr int kGlPoints = 16;
constexpr double kGlNode[kGlPoints] = {
    0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
    0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
    0.5877157572407623290, 0.6630442669302152009, 0.7321821187402896804,
    0.7944837959679424070, 0.8493676137325699701, 0.8963211557660521240,
    0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
    0.9972638618494815635};
constexpr double kGlWeight[kGlPoints] = {
    0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
    0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
    0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
    0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
    0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
    0.0070186100094700966};

double gl_integrate(double lo, double hi, const auto& f) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < kGlPoints; ++i) {
        s += kGlWeight[i] * (f(c - h * kGlNode[i]) + f(c + h * kGlNode[i]));
    }
    return s * h;
}

std::vector<double> merged(std::vector<double> g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// roots of A x^2 + B x + C inside (lo, hi)
void quadratic_roots_inside(double A, double B, double C, double lo, double hi,
                            std::vector<double>& out) {
    if (A == 0.0) {
        if (B != 0.0) {
            const double r = -C / B;
            if (r > lo && r < hi) out.push_back(r);
        }
        return;
    }
    const double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) return;
    const double sq = std::sqrt(disc);
    // numerically stable pair
    const double q = -0.5 * (B + std::copysign(sq, B));
    const double r1 = q / A;
    const double r2 = (q != 0.0) ? C / q : -B / A - r1;
    for (double r : {r1, r2}) {
        if (r > lo && r < hi) out.push_back(r);
    }
}

double integrate_abs_quadratic(double A, double B, double C, double lo, double hi) {
    if (hi <= lo) return 0.0;
    std::vector<double> cuts{lo, hi};
    quadratic_roots_inside(A, B, C, lo, hi, cuts);
    std::sort(cuts.begin(), cuts.end());
    auto F = [&](double x) { return A * x * x * x / 3.0 + B * x * x / 2.0 + C * x; };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += std::abs(F(cuts[i + 1]) - F(cuts[i]));
    }
    return total;
}

struct PieceView {
    double lo, hi, a, b, c;
};

// Contiguous cover of the whole line: constant tails plus the pieces.
std::vector<PieceView> piece_cover(const AnalyticProfile& ref, double lo, double hi) {
    std::vector<PieceView> cover;
    cover.push_back({lo, ref.x_lo, 0.0, 0.0, 0.0});
    double prev = ref.x_lo;
    for (const auto& p : ref.pieces) {
        cover.push_back({prev, p.x_hi, p.a, p.b, p.c});
        prev = p.x_hi;
    }
    cover.push_back({prev, hi, 0.0, 0.0, ref.mass});
    return cover;
}

}  // namespace

double AnalyticProfile::primitive(double x) const {
    if (x <= x_lo) return 0.0;
    double prev = x_lo;
    for (const auto& p : pieces) {
        if (x <= p.x_hi) return p.a * x * x + p.b * x + p.c;
        prev = p.x_hi;
    }
    (void)prev;
    return mass;
}

double AnalyticProfile::density(double x) const {
    if (x <= x_lo || x >= support_hi()) return 0.0;
    for (const auto& p : pieces) {
        if (x <= p.x_hi) return 2.0 * p.a * x + p.b;
    }
    return 0.0;
}

double AnalyticProfile::quantile(double xi) const {
    const double tol = 1e-12 * std::max(1.0, mass);
    if (xi < -tol || xi > mass + tol) {
        throw std::invalid_argument("AnalyticProfile::quantile: xi outside [0, mass]");
    }
    xi = std::clamp(xi, 0.0, mass);
    double lo = x_lo;
    for (const auto& p : pieces) {
        const double level = p.a * p.x_hi * p.x_hi + p.b * p.x_hi + p.c;
        if (xi <= level || &p == &pieces.back()) {
            if (p.a == 0.0) {
                if (p.b == 0.0) return lo;  // flat piece: jump, take its start
                return std::clamp((xi - p.c) / p.b, lo, p.x_hi);
            }
            const double disc = p.b * p.b - 4.0 * p.a * (p.c - xi);
            const double sq = std::sqrt(std::max(0.0, disc));
            for (double r : {(-p.b + sq) / (2.0 * p.a), (-p.b - sq) / (2.0 * p.a)}) {
                if (r >= lo - tol && r <= p.x_hi + tol) return std::clamp(r, lo, p.x_hi);
            }
            return std::clamp((-p.b + sq) / (2.0 * p.a), lo, p.x_hi);
        }
        lo = p.x_hi;
    }
    return support_hi();
}

AnalyticProfile wedge_profile(double t) {
    if (t < 0.0) throw std::invalid_argument("wedge_profile: t must be >= 0");
    AnalyticProfile pr;
    pr.x_lo = 0.0;
    pr.mass = 1.0;
    const double s = std::sqrt(1.0 + 2.0 * t);
    pr.pieces.push_back({s, 1.0 / (1.0 + 2.0 * t), 0.0, 0.0});
    return pr;
}

double exact_wedge_burgers(double x, double t) {
    const double s = std::sqrt(1.0 + 2.0 * t);
    if (x < 0.0 || x >= s) return 0.0;
    return 2.0 * x / (1.0 + 2.0 * t);
}

AnalyticProfile decreasing_step_profile(double t) {
    if (t < 0.0) throw std::invalid_argument("decreasing_step_profile: t must be >= 0");
    AnalyticProfile pr;
    pr.x_lo = -1.0;
    pr.mass = 1.0;
    if (t == 0.0) {
        pr.pieces.push_back({0.0, 0.0, 1.0, 1.0});  // U = x + 1 on [-1, 0]
        return pr;
    }
    if (t < 2.0) {
        // fan on [-1, -1+t], plateau u = 1 up to the shock at t/2
        pr.pieces.push_back({-1.0 + t, 1.0 / (2.0 * t), 1.0 / t, 1.0 / (2.0 * t)});
        pr.pieces.push_back({0.5 * t, 0.0, 1.0, 1.0 - 0.5 * t});
        return pr;
    }
    // fan all the way to the shock at sqrt(2t) - 1
    pr.pieces.push_back({std::sqrt(2.0 * t) - 1.0, 1.0 / (2.0 * t), 1.0 / t, 1.0 / (2.0 * t)});
    return pr;
}

double exact_shock_burgers(double x, double t) {
    if (t == 0.0) return (x >= -1.0 && x < 0.0) ? 1.0 : 0.0;
    const double fan_hi = (t < 2.0) ? -1.0 + t : std::sqrt(2.0 * t) - 1.0;
    const double shock = (t < 2.0) ? 0.5 * t : std::sqrt(2.0 * t) - 1.0;
    if (x < -1.0 || x >= shock) return 0.0;
    if (x <= fan_hi) return (x + 1.0) / t;
    return 1.0;
}

AnalyticProfile upward_ramp_regularization(const PiecewiseConstantFn& u, double dx) {
    if (u.is_zero()) throw std::invalid_argument("upward_ramp_regularization: zero data");
    // Recover per-cell values at centers i dx; cells may have been merged.
    const auto i_lo = static_cast<long long>(std::llround(u.support_lo() / dx + 0.5));
    const auto i_hi = static_cast<long long>(std::llround(u.support_hi() / dx - 0.5));
    std::vector<double> vals;  // extended by one zero cell on each side
    vals.push_back(0.0);
    for (long long i = i_lo; i <= i_hi; ++i) vals.push_back(u(static_cast<double>(i) * dx));
    vals.push_back(0.0);

    AnalyticProfile pr;
    pr.x_lo = (static_cast<double>(i_lo) - 1.0) * dx;
    double U = 0.0;
    double x = pr.x_lo;
    auto push_const = [&](double hi, double v) {
        if (hi <= x) return;
        // U = v (x - x0) + U0  ->  a=0, b=v, c = U0 - v x
        pr.pieces.push_back({hi, 0.0, v, U - v * x});
        U += v * (hi - x);
        x = hi;
    };
    auto push_ramp = [&](double hi, double v_lo, double v_hi) {
        // u = v_lo + (v_hi - v_lo)(y - x)/dx on [x, hi]; primitive quadratic
        const double slope = (v_hi - v_lo) / dx;
        const double a = 0.5 * slope;
        const double b = v_lo - slope * x;
        const double c = U - (a * x * x + b * x);
        pr.pieces.push_back({hi, a, b, c});
        U = a * hi * hi + b * hi + c;
        x = hi;
    };
    // Walk center-to-center intervals [i dx, (i+1) dx]; the first half-cell
    // of the support and the last are handled by the extended zero cells.
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
        const double c_lo = (static_cast<double>(i_lo) + static_cast<double>(k) - 1.0) * dx;
        const double c_hi = c_lo + dx;
        if (vals[k + 1] > vals[k]) {
            push_ramp(c_hi, vals[k], vals[k + 1]);
        } else {
            push_const(c_lo + 0.5 * dx, vals[k]);
            push_const(c_hi, vals[k + 1]);
        }
    }
    pr.mass = U;
    return pr;
}

namespace {

std::vector<double> merged_x_grid(const PiecewiseConstantFn& u, const AnalyticProfile& ref) {
    std::vector<double> g(u.breakpoints());
    g.push_back(ref.x_lo);
    for (const auto& p : ref.pieces) g.push_back(p.x_hi);
    return merged(std::move(g));
}

}  // namespace

double l1_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref) {
    const auto grid = merged_x_grid(u, ref);
    double total = 0.0;
    for (const auto& pv : piece_cover(ref, grid.front(), grid.back())) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double lo = std::max(grid[i], pv.lo), hi = std::min(grid[i + 1], pv.hi);
            if (hi <= lo) continue;
            const double v = u(0.5 * (lo + hi));
            // |v - (2a x + b)| is affine in x
            const double w1v = v - (2.0 * pv.a * lo + pv.b);
            const double w2v = v - (2.0 * pv.a * hi + pv.b);
            total += integrate_abs_affine(w1v, w2v, hi - lo);
        }
    }
    return total;
}

double w1_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref) {
    const PiecewiseLinearFn U = primitive(u);
    const auto grid = merged_x_grid(u, ref);
    double total = 0.0;
    for (const auto& pv : piece_cover(ref, grid.front(), grid.back())) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double lo = std::max(grid[i], pv.lo), hi = std::min(grid[i + 1], pv.hi);
            if (hi <= lo) continue;
            const double v = u(0.5 * (lo + hi));
            // G = U_pc - U_ref = -a x^2 + (v - b) x + C
            const double A = -pv.a;
            const double B = v - pv.b;
            const double C = (U(lo) - v * lo) - pv.c;
            total += integrate_abs_quadratic(A, B, C, lo, hi);
        }
    }
    return total;
}

double primitive_sup_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref) {
    const PiecewiseLinearFn U = primitive(u);
    const auto grid = merged_x_grid(u, ref);
    double sup = 0.0;
    for (const auto& pv : piece_cover(ref, grid.front(), grid.back())) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double lo = std::max(grid[i], pv.lo), hi = std::min(grid[i + 1], pv.hi);
            if (hi <= lo) continue;
            const double v = u(0.5 * (lo + hi));
            const double A = -pv.a;
            const double B = v - pv.b;
            const double C = (U(lo) - v * lo) - pv.c;
            auto G = [&](double x) { return std::abs(A * x * x + B * x + C); };
            sup = std::max({sup, G(lo), G(hi)});
            if (A != 0.0) {
                const double vx = -B / (2.0 * A);
                if (vx > lo && vx < hi) sup = std::max(sup, G(vx));
            }
        }
    }
    return sup;
}

namespace {

struct MixedQuantiles {
    QuantileFn q;           // quantile of the step function
    std::vector<double> grid;  // merged xi grid
    double m;
};

MixedQuantiles mixed_quantiles(const PiecewiseConstantFn& u, const AnalyticProfile& ref) {
    const double mu = mass(u);
    const double scale = std::max({1e-30, mu, ref.mass});
    if (std::abs(mu - ref.mass) > 1e-10 * scale) {
        throw std::invalid_argument("profile distance: masses differ");
    }
    if (!u.nonnegative()) {
        throw std::invalid_argument("profile distance: density must be nonnegative");
    }
    MixedQuantiles mq;
    mq.q = pseudo_inverse(primitive(u));
    mq.m = std::min(mq.q.total_mass(), ref.mass);
    std::vector<double> g(mq.q.xi);
    for (const auto& p : ref.pieces) {
        g.push_back(std::clamp(ref.primitive(p.x_hi), 0.0, mq.m));
    }
    g.push_back(0.0);
    g.push_back(mq.m);
    mq.grid = merged(std::move(g));
    while (!mq.grid.empty() && mq.grid.back() > mq.m) mq.grid.pop_back();
    if (mq.grid.back() < mq.m) mq.grid.push_back(mq.m);
    return mq;
}

}  // namespace

double winf_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref) {
    const auto mq = mixed_quantiles(u, ref);
    std::vector<double> cand(mq.grid);
    // stationary points of (affine quantile segment) - (profile quantile):
    // density of the profile equals the reciprocal segment slope
    for (std::size_t k = 0; k < mq.q.segment_count(); ++k) {
        const double dxi = mq.q.xi[k + 1] - mq.q.xi[k];
        const double slope = (mq.q.x_hi[k] - mq.q.x_lo[k]) / dxi;
        if (!(slope > 0.0)) continue;
        for (const auto& p : ref.pieces) {
            if (p.a == 0.0) continue;
            const double xstar = (1.0 / slope - p.b) / (2.0 * p.a);
            const double xi = ref.primitive(xstar);
            if (xi > mq.q.xi[k] && xi < mq.q.xi[k + 1] && xi >= 0.0 && xi <= mq.m) {
                cand.push_back(xi);
            }
        }
    }
    // dense safety net; every sample is a genuine value of |D|
    for (int i = 0; i <= 4096; ++i) cand.push_back(mq.m * i / 4096.0);
    double sup = 0.0;
    for (double xi : cand) {
        const double qr = ref.quantile(std::clamp(xi, 0.0, mq.m));
        sup = std::max(sup, std::abs(mq.q(xi) - qr));
        sup = std::max(sup, std::abs(mq.q.left_limit(xi) - qr));
    }
    return sup;
}

double wp_vs_profile(const PiecewiseConstantFn& u, const AnalyticProfile& ref, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("wp_vs_profile: p must be >= 1");
    const auto mq = mixed_quantiles(u, ref);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < mq.grid.size(); ++i) {
        const double lo = mq.grid[i], hi = mq.grid[i + 1];
        if (hi <= lo) continue;
        const double q_lo = mq.q(lo);
        const double q_hi = mq.q.left_limit(hi);
        const double qb = (q_hi - q_lo) / (hi - lo);
        const double qa = q_lo - qb * lo;
        auto D = [&](double xi) { return qa + qb * xi - ref.quantile(xi); };
        // sign changes: a + b xi = Q_ref(xi)  <=>  U_ref(a + b xi) = xi;
        // Q_ref maps into the support, so only genuine pieces can host roots
        std::vector<double> cuts{lo, hi};
        double piece_lo = ref.x_lo;
        for (const auto& pc : ref.pieces) {
            const double A = pc.a * qb * qb;
            const double B = 2.0 * pc.a * qa * qb + pc.b * qb - 1.0;
            const double C = pc.a * qa * qa + pc.b * qa + pc.c;
            std::vector<double> roots;
            quadratic_roots_inside(A, B, C, lo, hi, roots);
            for (double r : roots) {
                const double xr = qa + qb * r;
                if (xr >= piece_lo - 1e-12 && xr <= pc.x_hi + 1e-12) cuts.push_back(r);
            }
            piece_lo = pc.x_hi;
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
            if (cuts[j + 1] <= cuts[j]) continue;
            total += gl_integrate(cuts[j], cuts[j + 1],
                                  [&](double xi) { return std::pow(std::abs(D(xi)), p); });
        }
    }
    return std::pow(total, 1.0 / p);
}

}  // namespace shockfront
