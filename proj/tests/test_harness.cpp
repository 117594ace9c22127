#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "shockfront/harness.hpp"
#include "shockfront/json_io.hpp"
#include "shockfront/solver.hpp"

using namespace shockfront;

namespace {

// classic RK4 for a scalar ODE ds/dt = f(t, s)
double rk4(double t0, double t1, double s0, int steps, const auto& f) {
    const double h = (t1 - t0) / steps;
    double t = t0, s = s0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(t, s);
        const double k2 = f(t + 0.5 * h, s + 0.5 * h * k1);
        const double k3 = f(t + 0.5 * h, s + 0.5 * h * k2);
        const double k4 = f(t + h, s + h * k3);
        s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return s;
}

}  // namespace

TEST_CASE("wedge solution validated by characteristics and shock ODE") {
    // t = 0 reproduces the initial data
    for (double x : {0.0, 0.25, 0.7, 0.999}) {
        CHECK(exact_wedge_burgers(x, 0.0) == doctest::Approx(2.0 * x));
    }
    CHECK(exact_wedge_burgers(-0.1, 0.0) == 0.0);
    CHECK(exact_wedge_burgers(1.0, 0.0) == 0.0);

    // shock position: s(0) = 1, s(4) = 3, and the Rankine-Hugoniot ODE
    // ds/dt = u(s-, t)/2 = s/(1+2t) integrated with RK4 stays within 1e-10
    CHECK(std::sqrt(1.0 + 2.0 * 0.0) == doctest::Approx(1.0));
    CHECK(std::sqrt(1.0 + 2.0 * 4.0) == doctest::Approx(3.0));
    for (double t : {0.3, 0.5, 1.0, 1.7, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0}) {
        const double s_ode =
            rk4(0.0, t, 1.0, 4096, [](double tt, double ss) { return ss / (1.0 + 2.0 * tt); });
        CHECK(std::abs(s_ode - std::sqrt(1.0 + 2.0 * t)) <= 1e-10);
    }

    // characteristics: u(x0 (1+2t), t) = 2 x0 while the characteristic is
    // still ahead of the shock, i.e. x0 < 1/sqrt(1+2t)
    for (double t : {0.4, 1.3, 2.6}) {
        for (double frac : {0.2, 0.5, 0.9}) {
            const double x0 = frac / std::sqrt(1.0 + 2.0 * t);
            CHECK(exact_wedge_burgers(x0 * (1.0 + 2.0 * t), t) == doctest::Approx(2.0 * x0));
        }
    }

    // mass is conserved: the primitive reaches 1 at the shock
    for (double t : {0.5, 2.0, 7.0}) {
        const auto pr = wedge_profile(t);
        CHECK(pr.primitive(pr.support_hi()) == doctest::Approx(1.0).epsilon(1e-12));
        // independent Riemann sum of the density
        double s = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double x = pr.x_lo + (pr.support_hi() - pr.x_lo) * (i + 0.5) / n;
            s += exact_wedge_burgers(x, t);
        }
        s *= (pr.support_hi() - pr.x_lo) / n;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("decreasing-step solution validated across the fan merge") {
    CHECK(exact_shock_burgers(-0.5, 0.0) == 1.0);
    CHECK(exact_shock_burgers(0.1, 0.0) == 0.0);
    // before t = 2 the shock travels at speed 1/2
    CHECK(exact_shock_burgers(0.49, 1.0) == doctest::Approx(1.0));
    CHECK(exact_shock_burgers(0.51, 1.0) == 0.0);
    // after the fan catches up: s(t) = sqrt(2t) - 1, RK4 cross-check
    for (double t : {2.5, 3.0, 4.0, 6.0}) {
        const double s_ode =
            rk4(2.0, t, 1.0, 4096, [](double tt, double ss) { return (ss + 1.0) / (2.0 * tt); });
        CHECK(std::abs(s_ode - (std::sqrt(2.0 * t) - 1.0)) <= 1e-10);
    }
    for (double t : {0.5, 1.9, 2.0, 2.1, 5.0}) {
        const auto pr = decreasing_step_profile(t);
        CHECK(pr.primitive(pr.support_hi()) == doctest::Approx(1.0).epsilon(1e-12));
        // the fan region matches (x+1)/t
        if (t > 0.0) {
            const double xf = -1.0 + 0.25 * std::min(t, 2.0);
            CHECK(exact_shock_burgers(xf, t) == doctest::Approx((xf + 1.0) / t));
        }
    }
}

TEST_CASE("eoc sequences") {
    CHECK(eoc_sequence({4.0, 1.0})[0] == doctest::Approx(2.0));
    CHECK(eoc_sequence({0.3, 0.15})[0] == doctest::Approx(1.0));
    CHECK(eoc_sequence({0.7, 0.7})[0] == doctest::Approx(0.0));
    CHECK(std::isnan(eoc_sequence({0.5, 0.0})[0]));
    const std::vector<double> dx{0.25, 0.125, 0.0625, 0.03125};
    std::vector<double> e;
    for (double d : dx) e.push_back(3.7 * std::pow(d, 1.7));
    CHECK(least_squares_slope(dx, e, 4) == doctest::Approx(1.7).epsilon(1e-10));
}

TEST_CASE("theorem constants assemble as stated") {
    const double t = 0.5, dx = 0.125, delta = dx;
    const double ct = gronwall_factor(1.0, 2.0, t);
    CHECK(ct == doctest::Approx(std::exp(1.0)));
    const double kt = support_bound(1.0, dx, 2.0 + delta, t);
    CHECK(kt == doctest::Approx(1.0 + 2.0 * dx + (2.0 + delta) * t));
    const double c = w1_rate_constant(t, 2.0, 1.0, 1.0, ct, kt, 2.0);
    CHECK(c == doctest::Approx(ct * (2.0 + t * kt) + kt * 2.0 / 8.0));
}

TEST_CASE("small wedge study converges and is deterministic") {
    StudyConfig cfg;
    cfg.k_min = 3;
    cfg.k_max = 6;
    cfg.times = {0.5};
    cfg.p_list = {2.0};
    const auto res = run_study(cfg);
    REQUIRE(res.tables.size() == 1);
    const auto& tb = res.tables[0];
    CHECK_FALSE(res.any_failed);
    CHECK(tb.reference_mode == "analytic");
    CHECK_FALSE(tb.outside_hypotheses);
    REQUIRE(tb.rows.size() == 4);
    for (std::size_t i = 0; i < tb.rows.size(); ++i) {
        CHECK(tb.rows[i].k == 3 + static_cast<int>(i));
        for (double e : tb.rows[i].err) {
            CHECK(e > 0.0);
        }
        if (i > 0) {
            // errors decrease under refinement in every metric
            for (std::size_t c = 0; c < tb.columns.size(); ++c) {
                CHECK(tb.rows[i].err[c] < tb.rows[i - 1].err[c]);
            }
        }
    }

    // byte-identical emission across repeated runs
    const auto res2 = run_study(cfg);
    std::ostringstream a, b;
    emit_csv(tb, a);
    emit_csv(res2.tables[0], b);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("k,dx,l1,w1,wp_2,winf,eoc_l1,eoc_w1,eoc_wp_2,eoc_winf\n", 0) == 0);

    // single-threaded execution gives the same bytes
    setenv("SHOCKFRONT_THREADS", "1", 1);
    const auto res3 = run_study(cfg);
    unsetenv("SHOCKFRONT_THREADS");
    std::ostringstream c;
    emit_csv(res3.tables[0], c);
    CHECK(a.str() == c.str());
}

TEST_CASE("fine front-tracking reference stays close to the analytic one") {
    StudyConfig cfg;
    cfg.k_min = 3;
    cfg.k_max = 5;
    cfg.times = {0.5};
    cfg.p_list = {2.0};
    cfg.reference = "fine";
    const auto res = run_study(cfg);
    CHECK_FALSE(res.any_failed);
    CHECK(res.tables[0].reference_mode == "fine");

    // the k_max+3 reference differs from the analytic solution by far less
    // than the coarsest measured error
    const auto data = wedge_data();
    const double dxr = std::ldexp(1.0, -(cfg.k_max + 3));
    const auto u0 = snap_to_lattice(project_to_grid(data, dxr), dxr).fn;
    const auto run = run_front_tracking(u0, interpolate_flux(Flux::burgers(), dxr, 2.0), 0.5);
    const double ref_err = w1_vs_profile(snapshot(run, 0.5), wedge_profile(0.5));
    const double coarse = res.tables[0].rows[0].err[1];  // w1 column
    CHECK(ref_err < coarse / 10.0);

    // the two reference modes produce nearly identical W1 error columns
    StudyConfig acfg = cfg;
    acfg.reference = "analytic";
    const auto ares = run_study(acfg);
    for (std::size_t i = 0; i < ares.tables[0].rows.size(); ++i) {
        const double ea = ares.tables[0].rows[i].err[1];
        const double ef = res.tables[0].rows[i].err[1];
        CHECK(std::abs(ea - ef) <= 0.2 * ea);
    }
}

TEST_CASE("doubling lambda keeps the W1 order") {
    StudyConfig cfg;
    cfg.k_min = 4;
    cfg.k_max = 7;
    cfg.times = {0.5};
    cfg.p_list = {};
    cfg.lambda = 2.0;
    const auto res = run_study(cfg);
    CHECK_FALSE(res.any_failed);
    const auto& tb = res.tables[0];
    const double slope = tb.ls_slope[1];  // w1 column
    CHECK(slope > 1.5);
    CHECK(slope < 2.5);
}

TEST_CASE("decreasing step: sharp shock heuristic at t = 0, first order evolved") {
    const auto data = decreasing_step_data();
    const auto ref0 = decreasing_step_profile(0.0);
    // the projection pair realizes the displaced-shock picture exactly:
    // mass O(dx) moved a distance O(dx) gives Wp ~ dx^(1+1/p)
    std::vector<double> dxs, e1, e2;
    for (int k = 4; k <= 9; ++k) {
        const double dx = std::ldexp(1.0, -k);
        const auto proj = project_to_grid(data, dx);
        dxs.push_back(dx);
        e1.push_back(w1_vs_profile(proj, ref0));
        e2.push_back(wp_vs_profile(proj, ref0, 2.0));
        CHECK(e1.back() <= dx * dx * data.total_variation);  // W1/dx^2 bounded
    }
    CHECK(least_squares_slope(dxs, e2, 4) == doctest::Approx(1.5).epsilon(0.05));
    CHECK(least_squares_slope(dxs, e1, 4) == doctest::Approx(2.0).epsilon(0.05));

    // evolved, the projected edge splits the rarefaction corner into two
    // staggered fans: the data sits outside the one-sided Lipschitz class
    // and W1 drops to first order
    StudyConfig cfg;
    cfg.initial_kind = "decreasing_step";
    cfg.k_min = 4;
    cfg.k_max = 7;
    cfg.times = {0.5};
    cfg.p_list = {};
    const auto res = run_study(cfg);
    CHECK_FALSE(res.any_failed);
    CHECK(res.tables[0].outside_hypotheses);
    const double slope = res.tables[0].ls_slope[1];  // w1 column
    CHECK(slope == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("staircase studies run but are flagged outside the hypotheses") {
    StudyConfig cfg;
    cfg.initial_kind = "staircase";
    cfg.k_min = 3;
    cfg.k_max = 5;
    cfg.times = {0.5};
    cfg.p_list = {};
    const auto res = run_study(cfg);
    CHECK_FALSE(res.any_failed);
    CHECK(res.tables[0].outside_hypotheses);
    CHECK(res.tables[0].reference_mode == "fine");
}

TEST_CASE("config validation") {
    StudyConfig cfg;
    cfg.k_min = 5;
    cfg.k_max = 5;
    CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);
    cfg = {};
    cfg.times = {-1.0};
    CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);
    cfg = {};
    cfg.lambda = 0.0;
    CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);
    cfg = {};
    cfg.p_list = {0.5};
    CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);
    cfg = {};
    cfg.initial_kind = "staircase";
    cfg.reference = "analytic";
    CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);
    cfg = {};
    cfg.initial_kind = "unknown";
    CHECK_THROWS_AS(run_study(cfg), std::invalid_argument);
}

TEST_CASE("csv emission") {
    EocTable empty;
    empty.columns = {"l1", "w1", "winf"};
    std::ostringstream os;
    emit_csv(empty, os);
    CHECK(os.str() == "k,dx,l1,w1,winf,eoc_l1,eoc_w1,eoc_winf\n");
    CHECK(format_float(0.1) == "0.10000000000000001");  // round-trip exact
}

TEST_CASE("json round trips") {
    const PiecewiseConstantFn fn({0.0, 0.5, 2.0}, {1.5, -0.25});
    CHECK(pc_from_json(to_json(fn)) == fn);

    PiecewiseLinearFn pl;
    pl.x = {0.0, 1.0};
    pl.y = {0.0, 2.0};
    pl.slope_right = 0.5;
    CHECK(pl_from_json(to_json(pl)) == pl);

    CHECK(flux_from_json(json{{"type", "burgers"}})(3.0) == doctest::Approx(4.5));
    CHECK(flux_from_json(json{{"type", "power"}, {"exponent", 4}})(2.0) == doctest::Approx(4.0));
    const json plj{{"type", "pl"}, {"nodes", json::array({json::array({-1.0, 1.0}),
                                                          json::array({0.0, 0.0}),
                                                          json::array({1.0, 1.0})})}};
    CHECK(flux_from_json(plj)(0.5) == doctest::Approx(0.5));

    StudyConfig cfg;
    cfg.k_min = 3;
    cfg.k_max = 5;
    cfg.times = {0.5};
    cfg.p_list = {2.0};
    const auto res = run_study(cfg);
    const auto back = eoc_table_from_json(to_json(res.tables[0]));
    CHECK(eoc_table_equal(back, res.tables[0]));

    const json cj{{"flux", json{{"type", "burgers"}}},
                  {"initial", json{{"type", "wedge"}}},
                  {"lambda", 2.0},
                  {"k_min", 3},
                  {"k_max", 7},
                  {"times", json::array({0.5, 2.0})},
                  {"p_list", json::array({2.0, 4.0})},
                  {"reference", "analytic"},
                  {"snap", false}};
    const auto parsed = study_config_from_json(cj);
    CHECK(parsed.lambda == 2.0);
    CHECK(parsed.k_max == 7);
    CHECK_FALSE(parsed.snap);
    CHECK(parsed.times == std::vector<double>{0.5, 2.0});
}
