#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "vnlw/energy.hpp"
#include "vnlw/solver.hpp"
#include "vnlw/transform.hpp"

#include <cmath>

using namespace vnlw;
using vnlw::testing::random_field;

TEST_CASE("energy: zero state and the cos(x1) hand value") {
    const GridPtr g = make_grid(16, 2.0);
    PhaseState zero(g);
    const EnergyRecord ez = energy(zero, 3.0);
    CHECK(ez.total == 0.0);
    CHECK(ez.quadratic == 0.0);
    CHECK(ez.potential == 0.0);

    // v = cos(x1) as one Hermitian pair: mean v^2 = mean |grad v|^2 = 1/2,
    // so the quadratic part is 1/2; potential is (1/4) mean cos^4 = 3/32
    PhaseState st(g);
    st.v.at({1, 0}) = 0.5;
    st.v.at({-1, 0}) = 0.5;
    const EnergyRecord e = energy(st, 3.0);
    CHECK(e.quadratic == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(e.potential == doctest::Approx(3.0 / 32.0).epsilon(1e-13));
    CHECK(e.total == doctest::Approx(0.5 + 3.0 / 32.0).epsilon(1e-13));
    CHECK(e.h1 == doctest::Approx(std::sqrt(2.0 * (1.0 + 1.0) * 0.25)).epsilon(1e-13));

    PhaseState bad(g);
    bad.v.coeff[1] = cplx{1e308, 0.0};
    bad.v.coeff[2] = cplx{1e308, 0.0};
    CHECK_THROWS(energy(bad, 3.0));
}

TEST_CASE("energy decomposition: total = quadratic + potential, parts nonnegative") {
    const GridPtr g = make_grid(32, 2.0);
    PhaseState st(g);
    st.v = random_field(g, 1.5, 3);
    st.vt = random_field(g, 1.5, 4);
    const EnergyRecord e = energy(st, 4.2);
    CHECK(e.total == doctest::Approx(e.quadratic + e.potential).epsilon(1e-14));
    CHECK(e.quadratic >= 0.0);
    CHECK(e.potential >= 0.0);
}

TEST_CASE("conservation oracle: usual NLW conserves E, error shrinks at order 2") {
    // viscosity off, noise off; the exponential stepper reduces to a
    // trigonometric integrator for the undamped flow
    const GridPtr g = make_grid(16, 2.0);
    SolverConfig cfg;
    cfg.p = 3.0;
    cfg.viscous = false;
    cfg.t_loc = 0.25;
    cfg.picard_tol = 1e-12;

    PhaseState st(g);
    st.v = 0.5 * random_field(g, 2.5, 7);
    st.vt = 0.5 * random_field(g, 2.5, 8);
    const double e0 = energy(st, cfg.p).total;

    const auto drift_with_h = [&](double h) {
        PhaseState cur = st;
        const SpectralField zf(g);
        const int steps = static_cast<int>(std::round(1.0 / h));
        double worst = 0.0;
        for (int k = 0; k < steps; ++k) {
            cur = step_etd(cur, h, zf, zf, cfg);
            worst = std::max(worst, std::abs(energy(cur, cfg.p).total - e0));
        }
        return worst;
    };
    const double d1 = drift_with_h(1.0 / 256.0);
    const double d2 = drift_with_h(1.0 / 512.0);
    CHECK(d1 < 1e-6);
    const double order = std::log2(d1 / d2);
    CHECK(order > 1.6);
    CHECK(order < 2.6);
}

TEST_CASE("growth_fit: constant energy, degenerate grids, slope recovery") {
    std::vector<EnergyRecord> recs;
    for (int i = 0; i < 20; ++i) {
        EnergyRecord r;
        r.t = 0.1 * i;
        r.total = 2.0;
        recs.push_back(r);
    }
    const GrowthFit flat = growth_fit(recs);
    CHECK(std::abs(flat.c2) < 1e-12);
    CHECK(flat.max_pos_dev < 1e-12);

    std::vector<EnergyRecord> degen(12);
    for (auto& r : degen) {
        r.t = 1.0;
        r.total = 1.0;
    }
    CHECK_THROWS_AS(growth_fit(degen), std::invalid_argument);
    CHECK_THROWS_AS(growth_fit(std::span<const EnergyRecord>(recs.data(), 5)),
                    std::invalid_argument);

    // exact exponential: log(1+E) affine, slope recovered, zero deviation
    std::vector<EnergyRecord> expo;
    for (int i = 0; i < 30; ++i) {
        EnergyRecord r;
        r.t = 0.05 * i;
        r.total = std::exp(0.8 + 0.6 * r.t) - 1.0;
        expo.push_back(r);
    }
    const GrowthFit fit = growth_fit(expo);
    CHECK(fit.c2 == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(fit.c1 == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(fit.max_pos_dev < 1e-10);
}

TEST_CASE("gwp_alpha_bound: boundary cases from the regime arithmetic") {
    CHECK(gwp_alpha_bound(3.0) == doctest::Approx(0.5));
    CHECK(gwp_alpha_bound(5.0) == doctest::Approx(0.0));
    CHECK(gwp_alpha_bound(7.0) == doctest::Approx(2.0 / 6.0 - 0.5));
    CHECK(gwp_alpha_bound(1.0e9) == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK_THROWS_AS(gwp_alpha_bound(1.0), std::invalid_argument);
    CHECK_THROWS_AS(gwp_alpha_bound(0.5), std::invalid_argument);

    // p <= 3 keeps the ceiling at 1/2; beyond 3 the 2/(p-1)-1/2 branch binds
    for (double p : {1.5, 2.0, 2.99}) CHECK(gwp_alpha_bound(p) == 0.5);
    for (double p : {3.01, 4.0, 10.0}) {
        CHECK(gwp_alpha_bound(p) == doctest::Approx(2.0 / (p - 1.0) - 0.5));
    }
}

TEST_CASE("defocusing monotone pieces: d/dt quadratic <= 0 along linear runs") {
    const GridPtr g = make_grid(16, 2.0);
    SolverConfig cfg;
    cfg.nonlinearity_on = false;
    PhaseState st(g);
    st.v = random_field(g, 1.0, 41);
    st.vt = random_field(g, 1.0, 42);
    ZeroForcing zf(g);
    const GlobalRunResult run = global_run(st, 2.0, cfg, zf, 0.1);
    REQUIRE(run.trajectory.status == RunStatus::completed);
    for (std::size_t i = 1; i < run.records.size(); ++i) {
        CHECK(run.records[i].quadratic <= run.records[i - 1].quadratic * (1.0 + 1e-12));
    }
}
