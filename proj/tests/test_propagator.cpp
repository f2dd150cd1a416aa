#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "vnlw/propagator.hpp"
#include "vnlw/transform.hpp"

#include <cmath>

using namespace vnlw;
using vnlw::testing::max_coeff_diff;
using vnlw::testing::random_field;

namespace {

// long-double evaluation of the closed forms, as an independent oracle
ModeFlowMatrix mode_flow_ld(double d, double t) {
    const long double dl = d, tl = t;
    const long double w = sqrtl(1.0L + 0.75L * dl * dl);
    const long double e = expl(-0.5L * dl * tl);
    const long double c = cosl(w * tl);
    const long double s = sinl(w * tl);
    ModeFlowMatrix m;
    m.m00 = static_cast<double>(e * (c + 0.5L * dl / w * s));
    m.m01 = static_cast<double>(e * s / w);
    m.m10 = static_cast<double>(-(1.0L + dl * dl) / w * e * s);
    m.m11 = static_cast<double>(e * (c - 0.5L * dl / w * s));
    return m;
}

} // namespace

TEST_CASE("mode_flow: zero mode rotates, t=0 is the identity") {
    const ModeFlowMatrix z = mode_flow(Mode{0, 0}, 0.8);
    CHECK(z.m00 == doctest::Approx(std::cos(0.8)).epsilon(1e-15));
    CHECK(z.m01 == doctest::Approx(std::sin(0.8)).epsilon(1e-15));
    CHECK(z.m10 == doctest::Approx(-std::sin(0.8)).epsilon(1e-15));
    CHECK(z.m11 == doctest::Approx(std::cos(0.8)).epsilon(1e-15));

    const ModeFlowMatrix id = mode_flow(Mode{5, -3}, 0.0);
    CHECK(id.m00 == 1.0);
    CHECK(id.m01 == 0.0);
    CHECK(id.m10 == 0.0);
    CHECK(id.m11 == 1.0);

    CHECK_THROWS_AS(mode_flow(Mode{1, 0}, -0.1), std::invalid_argument);
}

TEST_CASE("mode_flow: closed-form value at n=(3,4), t=0.5") {
    const double d = 5.0;
    const double jbb = std::sqrt(1.0 + 0.75 * 25.0); // sqrt(19.75)
    const ModeFlowMatrix m = mode_flow(Mode{3, 4}, 0.5);
    const double m00 = std::exp(-1.25) *
                       (std::cos(0.5 * jbb) + 5.0 / (2.0 * jbb) * std::sin(0.5 * jbb));
    CHECK(m.m00 == doctest::Approx(m00).epsilon(1e-14));
    const ModeFlowMatrix ref = mode_flow_ld(d, 0.5);
    CHECK(m.m01 == doctest::Approx(ref.m01).epsilon(1e-14));
    CHECK(m.m10 == doctest::Approx(ref.m10).epsilon(1e-14));
    CHECK(m.m11 == doctest::Approx(ref.m11).epsilon(1e-14));
}

TEST_CASE("mode_flow: semigroup and determinant over random (n, t)") {
    CounterRng rng(2024, 7, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n1 = static_cast<int>(rng.next_uniform() * 20) - 10;
        const int n2 = static_cast<int>(rng.next_uniform() * 20) - 10;
        const double t1 = 2.0 * rng.next_uniform();
        const double t2 = 2.0 * rng.next_uniform();
        const ModeFlowMatrix a = mode_flow(Mode{n1, n2}, t1);
        const ModeFlowMatrix b = mode_flow(Mode{n1, n2}, t2);
        const ModeFlowMatrix c = mode_flow(Mode{n1, n2}, t1 + t2);
        CHECK(std::abs(c.m00 - (a.m00 * b.m00 + a.m01 * b.m10)) < 1e-11);
        CHECK(std::abs(c.m01 - (a.m00 * b.m01 + a.m01 * b.m11)) < 1e-11);
        CHECK(std::abs(c.m10 - (a.m10 * b.m00 + a.m11 * b.m10)) < 1e-11);
        CHECK(std::abs(c.m11 - (a.m10 * b.m01 + a.m11 * b.m11)) < 1e-11);
        const double d = std::hypot(static_cast<double>(n1), static_cast<double>(n2));
        const double det = a.m00 * a.m11 - a.m01 * a.m10;
        CHECK(det == doctest::Approx(std::exp(-d * t1)).epsilon(1e-11));
    }
}

TEST_CASE("apply_V: identity at t=0, scalar oracle, semigroup on states") {
    const GridPtr g = make_grid(16, 1.5);
    PhaseState st(g);
    st.v = random_field(g, 1.0, 3);
    st.vt = random_field(g, 1.0, 4);

    const PhaseState same = apply_V(st, 0.0);
    CHECK(max_coeff_diff(same.v, st.v) == 0.0);
    CHECK(max_coeff_diff(same.vt, st.vt) == 0.0);

    // single mode (1,0) with (1, 0) data advances by the first column
    PhaseState single(g);
    single.v.at({1, 0}) = 0.5;
    single.v.at({-1, 0}) = 0.5;
    const PhaseState adv = apply_V(single, 1.0);
    const ModeFlowMatrix m = mode_flow(Mode{1, 0}, 1.0);
    CHECK(std::abs(adv.v.at({1, 0}) - 0.5 * m.m00) < 1e-14);
    CHECK(std::abs(adv.vt.at({1, 0}) - 0.5 * m.m10) < 1e-14);

    const PhaseState two = apply_V(apply_V(st, 0.3), 0.7);
    const PhaseState one = apply_V(st, 1.0);
    CHECK(max_coeff_diff(two.v, one.v) < 1e-11);
    CHECK(max_coeff_diff(two.vt, one.vt) < 1e-11);
    CHECK(two.t == doctest::Approx(1.0));
}

TEST_CASE("duhamel kernel: t=0 cases and scalar value at n=(2,0)") {
    const GridPtr g = make_grid(16, 1.5);
    const SpectralField f = random_field(g, 1.0, 9);
    CHECK(l2_norm(apply_duhamel_kernel(f, 0.0, false)) == 0.0);
    CHECK(max_coeff_diff(apply_duhamel_kernel(f, 0.0, true), f) == 0.0);

    // jbb(2,0) = sqrt(1+3) = 2
    SpectralField mode(g);
    mode.at({2, 0}) = 1.0;
    mode.at({-2, 0}) = 1.0;
    const SpectralField out = apply_duhamel_kernel(mode, 0.25, false);
    const double expect = std::exp(-0.25) * std::sin(0.25 * 2.0) / 2.0;
    CHECK(std::abs(out.at({2, 0}) - expect) < 1e-15);
    CHECK_THROWS_AS(apply_duhamel_kernel(f, -1.0, false), std::invalid_argument);
}

TEST_CASE("poisson_smooth: constants, single factor, domain errors") {
    const GridPtr g = make_grid(16, 1.5);
    SpectralField c(g);
    c.at({0, 0}) = 3.0;
    CHECK(max_coeff_diff(poisson_smooth(c, 0.7, 0.0), c) == 0.0);

    SpectralField mode(g);
    mode.at({1, 0}) = 1.0;
    mode.at({-1, 0}) = 1.0;
    const SpectralField out = poisson_smooth(mode, 1.0, 1.0);
    CHECK(out.at({1, 0}).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(poisson_smooth(mode, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(poisson_smooth(mode, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("half_wave: identity at t=0, modulus, cosine identity") {
    const GridPtr g = make_grid(16, 1.5);
    const SpectralField f = random_field(g, 1.0, 11);
    CHECK(max_coeff_diff(half_wave(f, 0.0, +1), f) == 0.0);

    const SpectralField pl = half_wave(f, 0.4, +1);
    for (int i = 0; i < g->size(); ++i) {
        if (std::abs(f.coeff[i]) == 0.0) continue;
        const double ratio = std::abs(pl.coeff[i]) / std::abs(f.coeff[i]);
        CHECK(ratio == doctest::Approx(std::exp(-0.5 * g->d(i) * 0.4)).epsilon(1e-12));
    }

    // (V+ + V-)/2 equals the cosine part of the flow on a single mode
    SpectralField mode(g);
    mode.at({2, 1}) = 1.0;
    mode.at({-2, -1}) = 1.0;
    const SpectralField mi = half_wave(mode, 0.6, -1);
    const SpectralField avg = 0.5 * (half_wave(mode, 0.6, +1) + mi);
    const int idx = g->flat_of_mode({2, 1});
    const double d = g->d(idx);
    const double expect = std::exp(-0.5 * d * 0.6) * std::cos(g->jbb(idx) * 0.6);
    CHECK(avg.coeff[idx].real() == doctest::Approx(expect).epsilon(1e-13));
    CHECK(std::abs(avg.coeff[idx].imag()) < 1e-14);
}

TEST_CASE("linear dissipation: quadratic energy non-increasing") {
    const GridPtr g = make_grid(16, 1.5);
    PhaseState st(g);
    st.v = random_field(g, 1.0, 21);
    st.vt = random_field(g, 1.0, 22);
    double prev = quadratic_energy(st);
    for (int k = 0; k < 20; ++k) {
        st = apply_V(st, 0.05);
        const double cur = quadratic_energy(st);
        CHECK(cur < prev); // nonzero modes active: strictly decreasing
        prev = cur;
    }

    // a pure zero-mode state only rotates
    PhaseState zm(g);
    zm.v.at({0, 0}) = 1.0;
    const double e0 = quadratic_energy(zm);
    const PhaseState zm2 = apply_V(zm, 1.3);
    CHECK(quadratic_energy(zm2) == doctest::Approx(e0).epsilon(1e-13));
}

TEST_CASE("kernel moments match numerical quadrature of the kernels") {
    for (double d : {0.0, 1.0, 5.0, 22.6}) {
        for (double h : {0.01, 0.2, 1.0}) {
            const KernelMoments km = kernel_moments(d, 0.0, h);
            const auto m01 = [&](double tau) { return mode_flow(d, tau).m01; };
            const auto m11 = [&](double tau) { return mode_flow(d, tau).m11; };
            const double q01 = time_integral(m01, h, 1e-10, 4096);
            const double q11 = time_integral(m11, h, 1e-10, 4096);
            const double q01t =
                time_integral([&](double t) { return t * m01(t); }, h, 1e-10, 4096);
            const double q11t =
                time_integral([&](double t) { return t * m11(t); }, h, 1e-10, 4096);
            CHECK(km.k01 == doctest::Approx(q01).epsilon(1e-8));
            CHECK(km.k11 == doctest::Approx(q11).epsilon(1e-8));
            CHECK(km.k01_t == doctest::Approx(q01t).epsilon(1e-8));
            CHECK(km.k11_t == doctest::Approx(q11t).epsilon(1e-8));
        }
    }
}

TEST_CASE("time quadrature: exact on smooth integrands") {
    const double val = time_integral([](double t) { return std::exp(-t); }, 2.0, 1e-8);
    CHECK(val == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-8));
    const double lq =
        time_lq_norm(3.0, 1.0, [](double t) { return std::exp(-t); }, 1e-8);
    CHECK(lq == doctest::Approx(std::pow((1.0 - std::exp(-3.0)) / 3.0, 1.0 / 3.0))
                    .epsilon(1e-7));
}

TEST_CASE("viscosity-off flow: undamped rotation at frequency <n>") {
    const ModeFlowMatrix m = mode_flow(3.0, 0.7, false);
    const double w = std::sqrt(10.0);
    CHECK(m.m00 == doctest::Approx(std::cos(w * 0.7)).epsilon(1e-14));
    CHECK(m.m01 == doctest::Approx(std::sin(w * 0.7) / w).epsilon(1e-14));
    CHECK(m.m10 == doctest::Approx(-w * std::sin(w * 0.7)).epsilon(1e-13));
    const double det = m.m00 * m.m11 - m.m01 * m.m10;
    CHECK(det == doctest::Approx(1.0).epsilon(1e-13));
}
