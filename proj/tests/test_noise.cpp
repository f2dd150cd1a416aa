#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

#include "vnlw/noise.hpp"
#include "vnlw/norms.hpp"
#include "vnlw/rng.hpp"
#include "vnlw/transform.hpp"

#include <algorithm>
#include <cmath>

using namespace vnlw;
using vnlw::testing::max_coeff_diff;

TEST_CASE("init_noise: zero state, determinism, alpha guard") {
    const GridPtr g = make_grid(16, 1.0);
    NoiseState st = init_noise(g, 0.0, 42);
    CHECK(l2_norm(st.psi_field()) == 0.0);
    CHECK(l2_norm(st.dpsi_field()) == 0.0);
    CHECK(st.t() == 0.0);

    NoiseState a = init_noise(g, 0.25, 7);
    NoiseState b = init_noise(g, 0.25, 7);
    a.advance(0.3);
    a.advance(0.2);
    b.advance(0.3);
    b.advance(0.2);
    CHECK(max_coeff_diff(a.psi_field(), b.psi_field()) == 0.0);
    CHECK(max_coeff_diff(a.dpsi_field(), b.dpsi_field()) == 0.0);

    CHECK_THROWS_AS(init_noise(g, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(a.advance(0.0), std::invalid_argument);
}

TEST_CASE("noise state: Hermitian symmetry, zero mode pinned at zero") {
    const GridPtr g = make_grid(16, 1.0);
    NoiseState st = init_noise(g, 0.0, 99);
    for (int k = 0; k < 5; ++k) {
        st.advance(0.17);
        const SpectralField psi = st.psi_field();
        CHECK(hermitian_defect(psi) < 1e-14);
        CHECK(std::abs(psi.at({0, 0})) == 0.0);
        CHECK(hermitian_defect(st.dpsi_field()) < 1e-14);
    }
}

TEST_CASE("mode sampler agrees with the full state (sharding independence)") {
    const GridPtr g = make_grid(16, 1.0);
    NoiseState st = init_noise(g, 0.1, 314);
    ModeNoiseSampler ms({3, 2}, 0.1, 314);
    ModeNoiseSampler mirror({-3, -2}, 0.1, 314);
    for (int k = 0; k < 4; ++k) {
        st.advance(0.25);
        ms.advance(0.25);
        mirror.advance(0.25);
    }
    CHECK(std::abs(st.psi_field().at({3, 2}) - ms.psi()) == 0.0);
    CHECK(std::abs(st.dpsi_field().at({3, 2}) - ms.dpsi()) == 0.0);
    CHECK(std::abs(mirror.psi() - std::conj(ms.psi())) == 0.0);
}

TEST_CASE("step covariance closed form matches the quadrature oracle") {
    for (const Mode n : {Mode{1, 0}, Mode{3, 4}, Mode{0, 7}, Mode{12, 9}}) {
        for (double alpha : {0.0, 0.25, -0.2}) {
            for (double t : {0.05, 0.4, 1.3}) {
                const double d = std::hypot(static_cast<double>(n.n1),
                                            static_cast<double>(n.n2));
                const StepCovariance q = step_covariance(d, alpha, t);
                const auto c = covariance_oracle(n, t, t, alpha, 1e-13);
                CHECK(q.q11 == doctest::Approx(c[0][0]).epsilon(1e-10));
                CHECK(q.q12 == doctest::Approx(c[0][1]).epsilon(1e-10));
                CHECK(q.q22 == doctest::Approx(c[1][1]).epsilon(1e-10));
                CHECK(c[0][1] == doctest::Approx(c[1][0]).epsilon(1e-10));
            }
        }
    }
    // zero cases
    const auto z = covariance_oracle({5, 5}, 0.0, 0.0, 0.0);
    CHECK(z[0][0] == 0.0);
    CHECK(step_covariance(0.0, 0.0, 1.0).q11 == 0.0);
}

TEST_CASE("advance_noise: centered marginals and oracle variance, n=(1,0)") {
    // Var psi_hat(1, (1,0)) at alpha = 0, jbb = sqrt(1 + 3/4)
    const Mode n{1, 0};
    const auto oracle = covariance_oracle(n, 1.0, 1.0, 0.0, 1e-12);
    const int m = 10000;
    cplx mean{0.0, 0.0};
    double var = 0.0;
    for (int i = 0; i < m; ++i) {
        ModeNoiseSampler ms(n, 0.0, CounterRng::mix(555) + i);
        ms.advance(1.0);
        mean += ms.psi();
        var += std::norm(ms.psi());
    }
    mean /= static_cast<double>(m);
    var /= m;
    const double sd_mean = std::sqrt(oracle[0][0] / m);
    CHECK(std::abs(mean.real()) < 4.0 * sd_mean);
    CHECK(std::abs(mean.imag()) < 4.0 * sd_mean);
    const double se_var = oracle[0][0] / std::sqrt(static_cast<double>(m));
    CHECK(std::abs(var - oracle[0][0]) < 3.0 * se_var);
}

TEST_CASE("two-time covariance matches the oracle split") {
    const Mode n{2, 1};
    const double t2 = 0.4, t1 = 1.1;
    const auto oracle = covariance_oracle(n, t1, t2, 0.0, 1e-12);
    const int m = 20000;
    double cov = 0.0;
    double var_prod = 0.0;
    for (int i = 0; i < m; ++i) {
        ModeNoiseSampler ms(n, 0.0, CounterRng::mix(777) + i);
        ms.advance(t2);
        const cplx early = ms.psi();
        ms.advance(t1 - t2);
        const double re = (ms.psi() * std::conj(early)).real();
        cov += re;
        var_prod += re * re;
    }
    cov /= m;
    var_prod = var_prod / m - cov * cov;
    const double se = std::sqrt(var_prod / m);
    CHECK(std::abs(cov - oracle[0][0]) < 3.5 * se);
}

TEST_CASE("oracle variance law: Var * <n>^{3-2a} in a fixed bracket") {
    const std::vector<Mode> band = {{8, 0},  {6, 6},   {11, 5},  {16, 0}, {17, 17},
                                    {32, 0}, {30, 30}, {48, 32}, {60, 20}};
    for (double alpha : {0.0, 0.25}) {
        for (const Mode n : band) {
            const auto c = covariance_oracle(n, 1.0, 1.0, alpha, 1e-12);
            const double jb = std::sqrt(1.0 + n.n1 * n.n1 + n.n2 * n.n2);
            const double scaled = c[0][0] * std::pow(jb, 3.0 - 2.0 * alpha);
            CHECK(scaled > 0.35);
            CHECK(scaled < 0.65);
        }
    }
}

TEST_CASE("oracle derivative variance law: Var * <n>^{1-2a} bracketed") {
    const std::vector<Mode> band = {{8, 0}, {11, 5}, {16, 0}, {17, 17}, {32, 0}, {48, 32}};
    for (double alpha : {0.0, 0.25}) {
        for (const Mode n : band) {
            const auto c = covariance_oracle(n, 1.0, 1.0, alpha, 1e-12);
            const double jb = std::sqrt(1.0 + n.n1 * n.n1 + n.n2 * n.n2);
            const double scaled = c[1][1] * std::pow(jb, 1.0 - 2.0 * alpha);
            CHECK(scaled > 0.35);
            CHECK(scaled < 0.65);
        }
    }
}

TEST_CASE("time-increment bound with sigma = 1/2") {
    // E|psi(t1) - psi(t2)|^2 <= C |t1-t2|^{1/2} <n>^{-(2.5-2a)}
    double worst = 0.0;
    for (const Mode n : {Mode{4, 0}, Mode{8, 8}, Mode{20, 5}, Mode{40, 9}}) {
        const double jb = std::sqrt(1.0 + n.n1 * n.n1 + n.n2 * n.n2);
        for (double t2 : {0.2, 0.7}) {
            for (double dt : {0.001, 0.01, 0.1, 0.5}) {
                const double t1 = t2 + dt;
                const auto c11 = covariance_oracle(n, t1, t1, 0.0, 1e-12)[0][0];
                const auto c22 = covariance_oracle(n, t2, t2, 0.0, 1e-12)[0][0];
                const auto c12 = covariance_oracle(n, t1, t2, 0.0, 1e-12)[0][0];
                const double incr = c11 + c22 - 2.0 * c12;
                CHECK(incr >= -1e-14);
                const double bound = std::sqrt(dt) * std::pow(jb, -2.5);
                worst = std::max(worst, incr / bound);
            }
        }
    }
    CHECK(worst < 4.0);
}

TEST_CASE("truncate_noise: identity above Nyquist, monotone tails, oracle sum") {
    const GridPtr g = make_grid(64, 1.0);
    const double alpha = 0.0;
    const double s = 0.5 - alpha - 0.1;

    NoiseState st = init_noise(g, alpha, 31337);
    st.advance(1.0);
    const SpectralField psi = st.psi_field();
    CHECK(max_coeff_diff(truncate_noise(psi, 64.0), psi) == 0.0);

    const std::vector<double> cuts = {8.0, 16.0, 24.0};
    std::vector<double> winf;
    for (double c : cuts) {
        const SpectralField tail = psi - truncate_noise(psi, c);
        winf.push_back(norm(tail, Space::W(s, std::numeric_limits<double>::infinity())));
    }
    CHECK(winf[1] < winf[0]);
    CHECK(winf[2] < winf[1]);

    // l^2 tail of the truncation error vs the per-mode variance sum
    const int paths = 60;
    const double cut = 16.0;
    double mc = 0.0;
    for (int pth = 0; pth < paths; ++pth) {
        NoiseState s2 = init_noise(g, alpha, CounterRng::mix(99 + pth));
        s2.advance(1.0);
        const SpectralField tail = s2.psi_field() - truncate_noise(s2, cut);
        const double l2 = l2_norm(tail);
        mc += l2 * l2 / paths;
    }
    double oracle = 0.0;
    for (int i = 0; i < g->size(); ++i) {
        if (g->is_nyquist(i) || g->d(i) <= cut) continue;
        oracle += covariance_oracle(g->mode_of_flat(i), 1.0, 1.0, alpha, 1e-10)[0][0];
    }
    CHECK(mc / oracle == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("dt_psi: zero at start, PSD joint covariance") {
    const GridPtr g = make_grid(16, 1.0);
    NoiseState st = init_noise(g, 0.2, 5);
    CHECK(l2_norm(dt_psi(st)) == 0.0);
    st.advance(0.5);
    CHECK(l2_norm(dt_psi(st)) > 0.0);

    CounterRng rng(1, 2, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const int n1 = static_cast<int>(rng.next_uniform() * 30) - 15;
        const int n2 = static_cast<int>(rng.next_uniform() * 30) - 15;
        if (n1 == 0 && n2 == 0) continue;
        const double t = 0.05 + 1.5 * rng.next_uniform();
        const double d = std::hypot(static_cast<double>(n1), static_cast<double>(n2));
        const StepCovariance q = step_covariance(d, 0.1, t);
        CHECK(q.q11 >= 0.0);
        CHECK(q.q22 >= 0.0);
        CHECK(q.q11 * q.q22 - q.q12 * q.q12 >= -1e-12 * q.q11 * q.q22);
    }
}

TEST_CASE("sampled sup-norm of the path is finite and stable across grids") {
    // median over paths of sup_{t<=1} ||Psi(t)||_{L^inf}, N in {32, 64, 128}
    const int paths = 24;
    std::vector<double> medians;
    for (int n : {32, 64, 128}) {
        const GridPtr g = make_grid(n, 1.0);
        std::vector<double> sups(paths, 0.0);
        for (int pth = 0; pth < paths; ++pth) {
            NoiseState st = init_noise(g, 0.0, CounterRng::mix(808 + pth));
            for (int k = 0; k < 16; ++k) {
                st.advance(1.0 / 16.0);
                const double li = linf_norm(to_physical(st.psi_field()));
                CHECK(std::isfinite(li));
                sups[pth] = std::max(sups[pth], li);
            }
        }
        std::sort(sups.begin(), sups.end());
        medians.push_back(0.5 * (sups[paths / 2 - 1] + sups[paths / 2]));
    }
    CHECK(std::abs(medians[1] / medians[0] - 1.0) < 0.10);
    CHECK(std::abs(medians[2] / medians[1] - 1.0) < 0.10);
}

TEST_CASE("exactness: one step vs many steps have the same marginal law") {
    const Mode n{3, 1};
    const double t = 0.9;
    const auto oracle = covariance_oracle(n, t, t, 0.0, 1e-12);
    const int m = 4000;
    double v_one = 0.0, v_many = 0.0;
    for (int i = 0; i < m; ++i) {
        ModeNoiseSampler one(n, 0.0, CounterRng::mix(1234) + i);
        one.advance(t);
        v_one += std::norm(one.psi());
        ModeNoiseSampler many(n, 0.0, CounterRng::mix(4321) + i);
        for (int k = 0; k < 9; ++k) many.advance(t / 9.0);
        v_many += std::norm(many.psi());
    }
    v_one /= m;
    v_many /= m;
    const double se = oracle[0][0] / std::sqrt(static_cast<double>(m));
    CHECK(std::abs(v_one - oracle[0][0]) < 3.0 * se);
    CHECK(std::abs(v_many - oracle[0][0]) < 3.0 * se);
}
