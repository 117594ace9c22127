#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shockfront/flux.hpp"
#include "shockfront/metrics.hpp"

using namespace shockfront;

namespace {

Flux linear_test_flux(double c) {
    return Flux::analytic("linear", [c](double u) { return c * u; },
                          [c](double) { return c; }, [](double) { return 0.0; });
}

}  // namespace

TEST_CASE("interpolate_flux on Burgers") {
    const Flux f = Flux::burgers();
    const Flux fd = interpolate_flux(f, 1.0, 1.0);
    const auto& nd = fd.nodes();
    REQUIRE(nd.x.size() == 5);
    CHECK(nd.x == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
    // chord slopes of u^2/2 between integer nodes
    CHECK(nd.slope(0) == doctest::Approx(-1.5));
    CHECK(nd.slope(1) == doctest::Approx(-0.5));
    CHECK(nd.slope(2) == doctest::Approx(0.5));
    CHECK(nd.slope(3) == doctest::Approx(1.5));
    CHECK(fd.min_at_zero());
    CHECK(fd.node_spacing() == 1.0);

    // matches f at nodes, dominates it in between
    for (double u = -2.0; u <= 2.0; u += 1.0 / 16.0) {
        CHECK(fd(u) >= f(u) - 1e-15);
    }
    for (double u : nd.x) CHECK(fd(u) == doctest::Approx(f(u)).epsilon(1e-15));

    CHECK_THROWS_AS(interpolate_flux(f, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_flux(fd, 0.25, 1.0), std::invalid_argument);
}

TEST_CASE("interpolation is exact on a linear flux") {
    const Flux lin = linear_test_flux(2.0);
    const Flux lind = interpolate_flux(lin, 0.25, 1.0);
    for (double u = -1.0; u <= 1.0; u += 0.01) {
        CHECK(lind(u) == doctest::Approx(2.0 * u).epsilon(1e-14));
    }
}

TEST_CASE("interpolation gap obeys the Taylor bound") {
    const Flux f = Flux::burgers();
    const double delta = 0.25;
    const Flux fd = interpolate_flux(f, delta, 1.0);
    const double gap = flux_gap(f, fd, 1.0);
    CHECK(gap > 0.0);
    CHECK(gap <= 0.5 * delta * delta * f.second_derivative_sup(-1.25, 1.25) + 1e-15);
    // parabola chord error peaks at midpoints: exactly delta^2 / 8
    CHECK(gap == doctest::Approx(delta * delta / 8.0).epsilon(1e-13));
}

TEST_CASE("interpolation gap is monotone under delta halving") {
    const Flux f = Flux::burgers();
    double prev = kInf;
    for (double delta : {0.5, 0.25, 0.125}) {
        const double gap = flux_gap(f, interpolate_flux(f, delta, 1.0), 1.0);
        CHECK(gap <= prev + 1e-15);
        prev = gap;
    }
}

TEST_CASE("legendre transform of Burgers is itself") {
    const auto cp = legendre_transform(Flux::burgers());
    CHECK_FALSE(cp.piecewise);
    for (double p = -2.0; p <= 2.0; p += 0.1) {
        CHECK(cp.conj(p) == doctest::Approx(0.5 * p * p).epsilon(1e-14));
    }
}

TEST_CASE("legendre transform of the Burgers interpolant") {
    const Flux fd = interpolate_flux(Flux::burgers(), 1.0, 1.0);
    const auto cp = legendre_transform(fd);
    REQUIRE(cp.piecewise);
    CHECK(cp.sigma_min == doctest::Approx(-1.5));
    CHECK(cp.sigma_max == doctest::Approx(1.5));
    // conjugate on [0.5, 1.5] is u p - g with the u = 1 node: 1 * p - 0.5
    CHECK(cp.conj(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cp.conj(1.0) == doctest::Approx(0.5));
    CHECK(cp.conj(0.0) == doctest::Approx(0.0));  // flat piece from the u = 0 node
    CHECK(cp.conj(-1.5) == doctest::Approx(1.0));
    CHECK(std::isinf(cp.conj(1.6)));
    CHECK(std::isinf(cp.conj(-1.6)));
    CHECK(cp.q_max == doctest::Approx(1.0));

    CHECK_THROWS_AS(legendre_transform(linear_test_flux(1.0)), std::invalid_argument);
}

TEST_CASE("restricted inverse") {
    const auto cb = legendre_transform(Flux::burgers());
    CHECK(restricted_inverse(cb, 2.0) == doctest::Approx(2.0));
    CHECK(restricted_inverse(cb, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(restricted_inverse(cb, -0.1), std::invalid_argument);

    // piecewise conjugate with the flat piece from the u = 0 node: the
    // inverse jumps at q = 0, right-continuous choice gives sigma_{j*} = 1/2
    const auto cd = legendre_transform(interpolate_flux(Flux::burgers(), 1.0, 1.0));
    CHECK(restricted_inverse(cd, 0.0) == doctest::Approx(0.5));
    CHECK(restricted_inverse(cd, 1.0) == doctest::Approx(1.5));
    CHECK(restricted_inverse(cd, 2.0) == doctest::Approx(1.5));  // clamps at sigma_max

    // shifted parabola: minimum away from zero, no restricted inverse
    PiecewiseLinearFn shifted;
    for (int j = -2; j <= 2; ++j) {
        const double u = j;
        shifted.x.push_back(u);
        shifted.y.push_back(0.5 * (u + 1.0) * (u + 1.0));
    }
    const auto cs = legendre_transform(Flux::piecewise_linear(shifted));
    CHECK_THROWS_AS(restricted_inverse(cs, 0.5), std::invalid_argument);
}

TEST_CASE("oleinik condition constant") {
    CHECK(oleinik_a_sup(Flux::burgers(), 1.0) == doctest::Approx(0.5));
    CHECK(oleinik_a_sup(Flux::burgers(), 7.5) == doctest::Approx(0.5));
    // power flux u^4/4: a(v) = (3/4) v^2
    CHECK(oleinik_a_sup(Flux::power(4), 1.3) == doctest::Approx(0.75 * 1.69));
    // sampled path against the closed form
    const Flux p4 = Flux::analytic("custom_quartic", [](double u) { return 0.25 * std::pow(u, 4); },
                                   [](double u) { return std::pow(u, 3); },
                                   [](double u) { return 3.0 * u * u; });
    CHECK(oleinik_a_sup(p4, 1.3) == doctest::Approx(0.75 * 1.69).epsilon(1e-5));
    // chordal Burgers approximation: a(j delta+) = (j+1)/(2j), so the sup is
    // 1 at the first interior node and finite for every delta
    const double a = oleinik_a_sup(interpolate_flux(Flux::burgers(), 0.25, 1.0), 1.0);
    CHECK(std::isfinite(a));
    CHECK(a == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("flux gap") {
    const Flux f = Flux::burgers();
    CHECK(flux_gap(f, f, 2.0) == 0.0);
    const Flux shiftedf = Flux::analytic("shifted", [](double u) { return 0.5 * u * u + 0.01; },
                                         [](double u) { return u; }, [](double) { return 1.0; });
    CHECK(flux_gap(f, shiftedf, 1.0) == doctest::Approx(0.01));
}

TEST_CASE("Fenchel-Young inequality") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> du(-1.0, 1.0);
    const Flux fb = Flux::burgers();
    const Flux fp = Flux::power(4);
    const auto cb = legendre_transform(fb);
    const auto cpw = legendre_transform(fp);
    for (int trial = 0; trial < 200; ++trial) {
        const double u = du(rng), p = du(rng);
        CHECK(fb(u) + cb.conj(p) >= u * p - 1e-10);
        CHECK(fp(u) + cpw.conj(p) >= u * p - 1e-10);
        // equality at p in the subdifferential
        CHECK(fb(u) + cb.conj(fb.derivative(u)) == doctest::Approx(u * fb.derivative(u)).epsilon(1e-10));
        CHECK(fp(u) + cpw.conj(fp.derivative(u)) == doctest::Approx(u * fp.derivative(u)).epsilon(1e-10));
    }
    const Flux fd = interpolate_flux(fb, 0.25, 1.0);
    const auto cd = legendre_transform(fd);
    for (int trial = 0; trial < 200; ++trial) {
        const double u = du(rng);
        const double p = std::clamp(du(rng) * 1.2, cd.sigma_min, cd.sigma_max);
        CHECK(fd(u) + cd.conj(p) >= u * p - 1e-10);
    }
}

TEST_CASE("biconjugation recovers the flux at every node") {
    for (double delta : {1.0, 0.25}) {
        const Flux fd = interpolate_flux(Flux::burgers(), delta, 1.0);
        const auto cp = legendre_transform(fd);
        const auto& nd = fd.nodes();
        for (std::size_t i = 0; i < nd.x.size(); ++i) {
            // (f*)*(u) = max over conjugate breakpoints of { u p - f*(p) }
            double best = -kInf;
            for (std::size_t k = 0; k < cp.conj_pl.x.size(); ++k) {
                best = std::max(best, nd.x[i] * cp.conj_pl.x[k] - cp.conj_pl.y[k]);
            }
            CHECK(best == doctest::Approx(nd.y[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("conjugate difference vanishes on every chord-slope interval") {
    const Flux f = Flux::burgers();
    const auto cf = legendre_transform(f);
    for (double delta : {0.25, 0.125}) {
        const Flux g = interpolate_flux(f, delta, 1.0);
        const auto cg = legendre_transform(g);
        const auto& sig = cg.conj_pl.x;
        for (std::size_t k = 0; k + 1 < sig.size(); ++k) {
            double lowest = kInf;
            const int n = 4096;
            for (int i = 0; i <= n; ++i) {
                const double p = sig[k] + (sig[k + 1] - sig[k]) * i / n;
                const double diff = cf.conj(p) - cg.conj(p);
                lowest = std::min(lowest, diff);
                CHECK(diff >= -1e-12);  // f <= g pointwise, so f* >= g*
            }
            CHECK(lowest <= 1e-10);
        }
    }
}

TEST_CASE("inverse-conjugate gap is bounded by the node spacing") {
    // sup over [0,1] of |f~ - g~|(gamma/t) <= 2 delta max f'' for Burgers, as
    // long as gamma/t stays inside the interpolant's chord-slope range
    // (q <= q_max); with M = 2 that covers t >= 1/2 at unit mass.
    const Flux f = Flux::burgers();
    const auto cf = legendre_transform(f);
    for (double delta : {0.25, 0.125}) {
        const auto cg = legendre_transform(interpolate_flux(f, delta, 2.0));
        CHECK(cg.q_max >= 2.0);
        for (double t : {0.5, 1.0, 2.0}) {
            const double rhs = winf_flux_rhs(cf, cg, t, 1.0);
            CHECK(rhs <= 2.0 * delta * t + 1e-12);
            CHECK(rhs >= 0.0);
        }
        // beyond the slope range the piecewise inverse saturates and the gap
        // against the superlinear flux grows past 2 delta
        const double far = std::abs(cf.ftilde(2.0 * cg.q_max) - cg.ftilde(2.0 * cg.q_max));
        CHECK(far > 2.0 * delta);
    }
}

TEST_CASE("convexity is enforced") {
    PiecewiseLinearFn bad;
    bad.x = {0.0, 1.0, 2.0};
    bad.y = {0.0, 1.0, 1.5};  // slopes 1, 0.5: concave kink
    CHECK_THROWS_AS(Flux::piecewise_linear(bad), std::invalid_argument);
    CHECK_THROWS_AS(Flux::power(3), std::invalid_argument);
}
