#include "shockfront/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace shockfront {

namespace {

void validate_convex_nodes(const PiecewiseLinearFn& nodes) {
    if (nodes.x.size() < 2) throw std::invalid_argument("flux nodes: need at least one segment");
    double scale = 1.0;
    for (std::size_t s = 0; s < nodes.segment_count(); ++s) {
        scale = std::max(scale, std::abs(nodes.slope(s)));
    }
    for (std::size_t s = 0; s + 1 < nodes.segment_count(); ++s) {
        if (nodes.slope(s + 1) < nodes.slope(s) - 1e-12 * scale) {
            throw std::invalid_argument("flux nodes: not convex (decreasing chord slopes)");
        }
    }
}

bool detect_min_at_zero(const PiecewiseLinearFn& nodes) {
    if (0.0 < nodes.x.front() || 0.0 > nodes.x.back()) return false;
    const double scale = std::max(1.0, std::abs(nodes.y.front()) + std::abs(nodes.y.back()));
    if (std::abs(nodes(0.0)) > 1e-12 * scale) return false;
    // slope just left of zero <= 0 <= slope just right of zero
    double slope_before = 0.0, slope_after = 0.0;
    for (std::size_t s = 0; s < nodes.segment_count(); ++s) {
        if (nodes.x[s + 1] <= 0.0) {
            slope_before = nodes.slope(s);
        } else if (nodes.x[s] < 0.0) {
            slope_before = slope_after = nodes.slope(s);  // zero interior to this segment
            break;
        } else {
            slope_after = nodes.slope(s);
            break;
        }
    }
    return slope_before <= 1e-12 && slope_after >= -1e-12;
}

}  // namespace

Flux Flux::burgers() {
    Flux fl;
    fl.name_ = "burgers";
    fl.min_at_zero_ = true;
    fl.f_ = [](double u) { return 0.5 * u * u; };
    fl.df_ = [](double u) { return u; };
    fl.d2f_ = [](double) { return 1.0; };
    fl.conj_ = [](double p) { return 0.5 * p * p; };
    fl.ftilde_ = [](double q) { return std::sqrt(2.0 * q); };
    fl.ftilde_slope_inv_ = [](double s) { return 0.5 / (s * s); };
    return fl;
}

Flux Flux::power(int exponent) {
    if (exponent < 2 || exponent % 2 != 0) {
        throw std::invalid_argument("power flux: exponent must be an even integer >= 2");
    }
    const double p = exponent;
    const double pc = p / (p - 1.0);  // conjugate exponent
    Flux fl;
    fl.name_ = "power" + std::to_string(exponent);
    fl.min_at_zero_ = true;
    fl.f_ = [p](double u) { return std::pow(u, p) / p; };
    fl.df_ = [p](double u) { return std::pow(u, p - 1.0); };
    fl.d2f_ = [p](double u) { return (p - 1.0) * std::pow(std::abs(u), p - 2.0); };
    fl.conj_ = [pc](double v) { return std::pow(std::abs(v), pc) / pc; };
    fl.ftilde_ = [pc](double q) { return std::pow(pc * q, 1.0 / pc); };
    fl.ftilde_slope_inv_ = [pc](double s) { return std::pow(s, pc / (1.0 - pc)) / pc; };
    return fl;
}

Flux Flux::piecewise_linear(PiecewiseLinearFn nodes, double spacing) {
    validate_convex_nodes(nodes);
    Flux fl;
    fl.name_ = "pl";
    fl.is_pl_ = true;
    fl.min_at_zero_ = detect_min_at_zero(nodes);
    fl.spacing_ = spacing;
    // Extend with the end-segment slopes so evaluation slightly outside the
    // node range stays continuous and convex.
    nodes.slope_left = nodes.slope(0);
    nodes.slope_right = nodes.slope(nodes.segment_count() - 1);
    fl.nodes_ = std::move(nodes);
    return fl;
}

Flux Flux::analytic(std::string name, std::function<double(double)> f,
                    std::function<double(double)> df, std::function<double(double)> d2f,
                    std::function<double(double)> conj, std::function<double(double)> ftilde,
                    std::function<double(double)> ftilde_slope_inv, bool min_at_zero) {
    Flux fl;
    fl.name_ = std::move(name);
    fl.f_ = std::move(f);
    fl.df_ = std::move(df);
    fl.d2f_ = std::move(d2f);
    fl.conj_ = std::move(conj);
    fl.ftilde_ = std::move(ftilde);
    fl.ftilde_slope_inv_ = std::move(ftilde_slope_inv);
    fl.min_at_zero_ = min_at_zero;
    return fl;
}

double Flux::operator()(double u) const { return is_pl_ ? nodes_(u) : f_(u); }

double Flux::derivative(double u) const {
    if (!is_pl_) return df_(u);
    const auto& x = nodes_.x;
    if (u <= x.front()) return nodes_.slope(0);
    if (u >= x.back()) return nodes_.slope(nodes_.segment_count() - 1);
    const auto it = std::upper_bound(x.begin(), x.end(), u);
    return nodes_.slope(static_cast<std::size_t>(it - x.begin()) - 1);
}

double Flux::second_derivative_sup(double lo, double hi) const {
    if (is_pl_) {
        throw std::invalid_argument("second_derivative_sup: defined for analytic fluxes only");
    }
    double m = std::max(d2f_(lo), d2f_(hi));
    if (lo < 0.0 && hi > 0.0) m = std::max(m, d2f_(0.0));
    for (int k = 1; k < 64; ++k) m = std::max(m, d2f_(lo + (hi - lo) * k / 64.0));
    return m;
}

double Flux::lipschitz(double lo, double hi) const {
    if (!is_pl_) return std::max(std::abs(df_(lo)), std::abs(df_(hi)));  // f' monotone (convex f)
    double m = 0.0;
    for (std::size_t s = 0; s < nodes_.segment_count(); ++s) {
        if (nodes_.x[s + 1] < lo || nodes_.x[s] > hi) continue;
        m = std::max(m, std::abs(nodes_.slope(s)));
    }
    m = std::max({m, std::abs(derivative(lo)), std::abs(derivative(hi))});
    return m;
}

const PiecewiseLinearFn& Flux::nodes() const {
    if (!is_pl_) throw std::invalid_argument("nodes: flux is not piecewise linear");
    return nodes_;
}

double Flux::node_spacing() const {
    if (!is_pl_) throw std::invalid_argument("node_spacing: flux is not piecewise linear");
    return spacing_;
}

bool Flux::same_as(const Flux& other) const {
    if (is_pl_ != other.is_pl_) return false;
    if (is_pl_) return nodes_ == other.nodes_;
    return name_ == other.name_;
}

Flux interpolate_flux(const Flux& f, double delta, double M) {
    if (!(delta > 0.0)) throw std::invalid_argument("interpolate_flux: delta must be positive");
    if (f.is_piecewise_linear()) {
        throw std::invalid_argument("interpolate_flux: input must be an analytic flux");
    }
    const auto J = static_cast<long long>(std::ceil(M / delta - 1e-9)) + 1;
    PiecewiseLinearFn nodes;
    nodes.x.reserve(static_cast<std::size_t>(2 * J + 1));
    nodes.y.reserve(static_cast<std::size_t>(2 * J + 1));
    for (long long j = -J; j <= J; ++j) {
        const double u = static_cast<double>(j) * delta;
        nodes.x.push_back(u);
        nodes.y.push_back(f(u));
    }
    return Flux::piecewise_linear(std::move(nodes), delta);
}

PiecewiseLinearFn conjugate_of_nodes(const PiecewiseLinearFn& f) {
    validate_convex_nodes(f);
    const std::size_t n = f.segment_count();
    double scale = 1.0;
    for (std::size_t s = 0; s < n; ++s) scale = std::max(scale, std::abs(f.slope(s)));
    PiecewiseLinearFn conj;
    for (std::size_t s = 0; s < n; ++s) {
        const double p = f.slope(s);
        const double val = f.x[s] * p - f.y[s];  // equals f.x[s+1]*p - f.y[s+1]
        if (!conj.x.empty() && p - conj.x.back() <= 1e-14 * scale) continue;
        conj.x.push_back(p);
        conj.y.push_back(val);
    }
    if (conj.x.size() == 1) {
        throw std::invalid_argument("conjugate_of_nodes: input is affine, conjugate degenerate");
    }
    return conj;
}

ConjugatePair legendre_transform(const Flux& f) {
    ConjugatePair cp;
    cp.min_at_zero = f.min_at_zero();
    if (!f.is_piecewise_linear()) {
        if (!f.conj_fn()) {
            throw std::invalid_argument("legendre_transform: analytic flux lacks a closed-form conjugate");
        }
        cp.piecewise = false;
        cp.conj_fn = f.conj_fn();
        cp.ftilde_fn = f.ftilde_fn();
        cp.ftilde_slope_inv = f.ftilde_slope_inv_fn();
        cp.flux_derivative = [fl = f](double u) { return fl.derivative(u); };
        return cp;
    }

    cp.piecewise = true;
    cp.conj_pl = conjugate_of_nodes(f.nodes());
    cp.sigma_min = cp.conj_pl.x.front();
    cp.sigma_max = cp.conj_pl.x.back();

    if (cp.min_at_zero) {
        // Build the restricted inverse on [0, q_max]. f* restricted to
        // [0, sigma_max] is nondecreasing with f*(0) = 0; flat pieces of f*
        // collapse to the largest p (sup convention).
        const double q_scale = std::max(1.0, std::abs(cp.conj_pl.y.back()));
        std::vector<std::pair<double, double>> pq;  // (p, q = f*(p))
        pq.emplace_back(0.0, 0.0);
        for (std::size_t i = 0; i < cp.conj_pl.x.size(); ++i) {
            const double p = cp.conj_pl.x[i];
            if (p <= 0.0) continue;
            pq.emplace_back(p, std::max(0.0, cp.conj_pl.y[i]));
        }
        PiecewiseLinearFn ft;
        for (const auto& [p, q] : pq) {
            if (!ft.x.empty() && q - ft.x.back() <= 1e-15 * q_scale) {
                ft.y.back() = p;  // flat run of f*: keep the largest p
                continue;
            }
            ft.x.push_back(q);
            ft.y.push_back(p);
        }
        if (ft.x.size() == 1) {
            ft.x.push_back(ft.x[0] + 1.0);
            ft.y.push_back(ft.y[0]);
        }
        ft.slope_left = 0.0;
        ft.slope_right = 0.0;  // clamp at sigma_max above q_max
        ft.nondecreasing = true;
        cp.ftilde_pl = std::move(ft);
        cp.q_max = cp.ftilde_pl.x.back();
    }
    return cp;
}

double ConjugatePair::conj(double p) const {
    if (!piecewise) return conj_fn(p);
    const double eps = 1e-12 * std::max(1.0, std::abs(sigma_min) + std::abs(sigma_max));
    if (p < sigma_min - eps || p > sigma_max + eps) return kInf;
    return conj_pl(std::clamp(p, sigma_min, sigma_max));
}

double ConjugatePair::ftilde(double q) const {
    if (q < 0.0) throw std::invalid_argument("ftilde: argument must be nonnegative");
    if (!min_at_zero) throw std::invalid_argument("ftilde: flux must have its minimum f(0) = 0");
    if (!piecewise) return ftilde_fn(q);
    return ftilde_pl(q);
}

double restricted_inverse(const ConjugatePair& cp, double q) { return cp.ftilde(q); }

double oleinik_a_sup(const Flux& f, double M) {
    if (!(M > 0.0)) throw std::invalid_argument("oleinik_a_sup: M must be positive");
    if (f.name() == "burgers") return 0.5;
    if (f.name().rfind("power", 0) == 0) {
        const double p = std::stod(f.name().substr(5));
        return (1.0 - 1.0 / p) * std::pow(M, p - 2.0);
    }
    auto a = [&](double v) { return (f.derivative(v) * v - f(v)) / (v * v); };
    auto sup_at = [&](std::size_t n) {
        double s = 0.0;
        for (std::size_t k = 1; k <= n; ++k) s = std::max(s, a(M * static_cast<double>(k) / static_cast<double>(n)));
        if (f.is_piecewise_linear()) {
            for (double u : f.nodes().x) {
                if (u > 0.0 && u <= M) s = std::max(s, a(u));
            }
        }
        return s;
    };
    std::size_t n = 1u << 12;
    double prev = sup_at(n);
    for (int it = 0; it < 4; ++it) {
        n *= 2;
        const double cur = sup_at(n);
        if (std::abs(cur - prev) <= 1e-6) return std::max(0.0, cur);
        prev = cur;
    }
    return std::max(0.0, prev);
}

double flux_gap(const Flux& f, const Flux& g, double M) {
    std::vector<double> pts;
    const std::size_t n = 1u << 12;
    pts.reserve(n + 64);
    for (std::size_t k = 0; k <= n; ++k) {
        pts.push_back(-M + 2.0 * M * static_cast<double>(k) / static_cast<double>(n));
    }
    auto add_nodes = [&](const Flux& fl) {
        if (!fl.is_piecewise_linear()) return;
        const auto& x = fl.nodes().x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] >= -M && x[i] <= M) pts.push_back(x[i]);
            if (i + 1 < x.size()) {
                const double mid = 0.5 * (x[i] + x[i + 1]);
                if (mid >= -M && mid <= M) pts.push_back(mid);
            }
        }
    };
    add_nodes(f);
    add_nodes(g);
    double gap = 0.0;
    for (double u : pts) gap = std::max(gap, std::abs(f(u) - g(u)));
    return gap;
}

}  // namespace shockfront
