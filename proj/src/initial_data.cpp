#include "shockfront/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace shockfront {

InitialData wedge_data() {
    InitialData d;
    d.name = "wedge";
    d.support_lo = 0.0;
    d.support_hi = 1.0;
    d.mass = 1.0;
    d.sup_norm = 2.0;
    d.total_variation = 4.0;  // continuous rise by 2, jump down by 2
    d.lip_plus = 2.0;
    d.primitive = [](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return x * x;
    };
    d.eval = [](double x) { return (x >= 0.0 && x < 1.0) ? 2.0 * x : 0.0; };
    return d;
}

InitialData decreasing_step_data() {
    InitialData d;
    d.name = "decreasing_step";
    d.support_lo = -1.0;
    d.support_hi = 0.0;
    d.mass = 1.0;
    d.sup_norm = 1.0;
    d.total_variation = 2.0;
    // the rise from the zero extension at x = -1 violates the one-sided
    // Lipschitz condition, so the second-order W1 theory does not apply
    d.lip_plus = kInf;
    d.primitive = [](double x) {
        if (x <= -1.0) return 0.0;
        if (x >= 0.0) return 1.0;
        return x + 1.0;
    };
    d.eval = [](double x) { return (x >= -1.0 && x < 0.0) ? 1.0 : 0.0; };
    return d;
}

InitialData staircase_data(int steps) {
    if (steps < 1) throw std::invalid_argument("staircase_data: need at least one step");
    const int s = steps;
    const double w = 1.0 / s;
    std::vector<double> b(static_cast<std::size_t>(s) + 1);
    std::vector<double> v(static_cast<std::size_t>(s));
    for (int i = 0; i <= s; ++i) b[static_cast<std::size_t>(i)] = i * w;
    // v_i = 2(i+1)/(s+1): sum v_i * w = 2/(s+1) * (s+1)s/2 / s = 1
    for (int i = 0; i < s; ++i) v[static_cast<std::size_t>(i)] = 2.0 * (i + 1) / (s + 1);
    auto d = samples_data(PiecewiseConstantFn(std::move(b), std::move(v)), "staircase");
    return d;
}

InitialData samples_data(PiecewiseConstantFn u0, std::string name) {
    InitialData d;
    d.name = std::move(name);
    d.support_lo = u0.support_lo();
    d.support_hi = u0.support_hi();
    d.mass = mass(u0);
    d.sup_norm = u0.sup_norm();
    d.total_variation = total_variation(u0);
    // descriptor carries the full one-sided Lipschitz constant including the
    // jumps against the zero extension at the support edges
    d.lip_plus = lip_plus(u0);
    if (!u0.is_zero() && (u0.values().front() > 0.0 || u0.values().back() < 0.0)) {
        d.lip_plus = kInf;
    }
    auto U = std::make_shared<PiecewiseLinearFn>(primitive(u0));
    auto fn = std::make_shared<PiecewiseConstantFn>(std::move(u0));
    d.primitive = [U](double x) { return (*U)(x); };
    d.eval = [fn](double x) { return (*fn)(x); };
    return d;
}

PiecewiseConstantFn project_to_grid(const InitialData& u0, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("project_to_grid: dx must be positive");
    const auto i_lo = static_cast<long long>(std::floor(u0.support_lo / dx + 0.5));
    const auto i_hi = static_cast<long long>(std::floor(u0.support_hi / dx + 0.5));
    std::vector<double> b;
    std::vector<double> v;
    b.reserve(static_cast<std::size_t>(i_hi - i_lo) + 2);
    b.push_back((i_lo - 0.5) * dx);
    for (long long i = i_lo; i <= i_hi; ++i) {
        const double lo = (i - 0.5) * dx;
        const double hi = (i + 0.5) * dx;
        b.push_back(hi);
        v.push_back((u0.primitive(hi) - u0.primitive(lo)) / dx);
    }
    auto out = make_step(std::move(b), std::move(v));
    const double drift = std::abs(mass(out) - u0.mass);
    if (drift > 1e-13 * std::max(1.0, std::abs(u0.mass))) {
        throw std::runtime_error("project_to_grid: projection failed to preserve mass");
    }
    return out;
}

SnapResult snap_to_lattice(const PiecewiseConstantFn& u, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("snap_to_lattice: delta must be positive");
    SnapResult res;
    if (u.is_zero()) return res;

    const double target = mass(u);
    const auto& b = u.breakpoints();
    const auto& vals = u.values();

    // Work on the cell list as given; each cell carries its own width.
    struct Cell {
        double lo, hi, value;
        long long n;       // snapped value in lattice units
        double residual;   // value/delta - n, in [-1/2, 1/2]
    };
    std::vector<Cell> cells;
    cells.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        Cell c{b[i], b[i + 1], vals[i], 0, 0.0};
        c.n = std::llround(c.value / delta);
        c.residual = c.value / delta - static_cast<double>(c.n);
        cells.push_back(c);
    }

    auto snapped_mass = [&] {
        double s = 0.0;
        for (const auto& c : cells) s += static_cast<double>(c.n) * delta * (c.hi - c.lo);
        return s;
    };

    // Largest-remainder repair: push whole lattice units into the cells whose
    // rounding lost (or gained) the most, until the mass deficit cannot be
    // reduced further. Cells of equal width make the repair exact whenever
    // the target mass is representable on the lattice.
    double deficit = target - snapped_mass();
    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), 0);
    const double unit_tol = 1e-12 * std::max(1.0, std::abs(target));
    for (int pass = 0; pass < 4 && std::abs(deficit) > unit_tol; ++pass) {
        if (deficit > 0.0) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
                return cells[a].residual > cells[c].residual;
            });
        } else {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
                return cells[a].residual < cells[c].residual;
            });
        }
        for (std::size_t idx : order) {
            Cell& c = cells[idx];
            const double unit = delta * (c.hi - c.lo);
            if (deficit > unit_tol && deficit + 1e-15 >= unit - unit_tol) {
                c.n += 1;
                c.residual -= 1.0;
                deficit -= unit;
            } else if (deficit < -unit_tol && -deficit + 1e-15 >= unit - unit_tol && c.n >= 1) {
                c.n -= 1;
                c.residual += 1.0;
                deficit += unit;
            }
            if (std::abs(deficit) <= unit_tol) break;
        }
    }

    std::vector<double> nb;
    std::vector<double> nv;
    nb.push_back(cells.front().lo);
    for (const auto& c : cells) {
        nb.push_back(c.hi);
        nv.push_back(static_cast<double>(c.n) * delta);
        res.max_shift = std::max(res.max_shift, std::abs(c.value - static_cast<double>(c.n) * delta));
    }
    res.fn = make_step(std::move(nb), std::move(nv));
    res.mass_drift = std::abs(mass(res.fn) - target);
    return res;
}

}  // namespace shockfront
