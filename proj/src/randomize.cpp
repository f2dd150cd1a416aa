#include "vnlw/randomize.hpp"

#include "vnlw/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vnlw {

namespace {

constexpr double kSqrtHalf = 0.7071067811865475244;
constexpr double kUniHalf = 1.2247448713915890491;  // sqrt(3/2)
constexpr double kUniFull = 1.7320508075688772935;  // sqrt(3)

// one multiplier draw; `real_mode` marks the zero mode (single real
// component of variance 1), otherwise complex with E|g|^2 = 1
cplx draw_multiplier(Dist dist, CounterRng& rng, bool real_mode) {
    switch (dist) {
        case Dist::gaussian:
            if (real_mode) return cplx{rng.next_normal(), 0.0};
            return cplx{kSqrtHalf * rng.next_normal(), kSqrtHalf * rng.next_normal()};
        case Dist::bernoulli: {
            if (real_mode) return cplx{rng.next_u64() & 1 ? 1.0 : -1.0, 0.0};
            const double re = rng.next_u64() & 1 ? kSqrtHalf : -kSqrtHalf;
            const double im = rng.next_u64() & 1 ? kSqrtHalf : -kSqrtHalf;
            return cplx{re, im};
        }
        case Dist::uniform_compact:
            if (real_mode) return cplx{kUniFull * (2.0 * rng.next_uniform() - 1.0), 0.0};
            return cplx{kUniHalf * (2.0 * rng.next_uniform() - 1.0),
                        kUniHalf * (2.0 * rng.next_uniform() - 1.0)};
    }
    throw std::invalid_argument("randomize_data: unsupported distribution");
}

bool in_half_lattice(Mode n) {
    return (n.n2 > 0) || (n.n2 == 0 && n.n1 > 0);
}

SpectralField draw_multiplier_field(const GridPtr& grid, Dist dist,
                                    std::uint64_t seed, int component) {
    const FourierGrid& g = *grid;
    SpectralField out(grid, true);
    const int n = g.n();
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            const int idx = g.flat(k1, k2);
            if (g.is_nyquist(idx)) continue;
            const Mode m = {g.freq_of_index(k1), g.freq_of_index(k2)};
            const bool zero_mode = (m.n1 == 0 && m.n2 == 0);
            if (!zero_mode && !in_half_lattice(m)) continue;
            const std::uint64_t key =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(m.n1)) << 32) |
                static_cast<std::uint32_t>(m.n2);
            CounterRng rng(seed, key, static_cast<std::uint64_t>(component));
            const cplx gval = draw_multiplier(dist, rng, zero_mode);
            out.coeff[idx] = gval;
            if (!zero_mode) {
                const int midx = g.flat(g.index_of_freq(-m.n1), g.index_of_freq(-m.n2));
                out.coeff[midx] = std::conj(gval);
            }
        }
    }
    return out;
}

} // namespace

RandomizedData randomize_data(const SpectralField& u0, const SpectralField& u1,
                              Dist dist, std::uint64_t seed) {
    if (!u0.grid->same_as(*u1.grid)) {
        throw std::invalid_argument("randomize_data: component grid mismatch");
    }
    if (!u0.hermitian || !u1.hermitian) {
        throw std::invalid_argument("randomize_data: base pair must be Hermitian");
    }
    RandomizedData out;
    out.dist = dist;
    out.seed = seed;
    out.g0 = draw_multiplier_field(u0.grid, dist, seed, 0);
    out.g1 = draw_multiplier_field(u0.grid, dist, seed, 1);
    out.u0 = u0;
    out.u1 = u1;
    for (int i = 0; i < u0.grid->size(); ++i) {
        out.u0.coeff[i] *= out.g0.coeff[i];
        out.u1.coeff[i] *= out.g1.coeff[i];
    }
    return out;
}

SpectralField evaluate_z(const RandomizedData& data, double t,
                         bool derivative_weighted) {
    if (t < 0.0) throw std::invalid_argument("evaluate_z: t must be >= 0");
    const FourierGrid& g = *data.u0.grid;
    SpectralField out(data.u0.grid, true);
    for (int i = 0; i < g.size(); ++i) {
        const ModeFlowMatrix m = mode_flow(g.d(i), t);
        if (derivative_weighted) {
            out.coeff[i] = (m.m10 * data.u0.coeff[i] + m.m11 * data.u1.coeff[i]) / g.jb(i);
        } else {
            out.coeff[i] = m.m00 * data.u0.coeff[i] + m.m01 * data.u1.coeff[i];
        }
    }
    return out;
}

PhaseState evaluate_z_pair(const RandomizedData& data, double t) {
    PhaseState init(0.0, data.u0, data.u1);
    return apply_V(init, t);
}

SobolevPair sobolev_pair_fixture(const GridPtr& grid, double s_target, double eps,
                                 double amplitude, std::uint64_t seed) {
    const FourierGrid& g = *grid;
    SobolevPair base;
    base.u0 = SpectralField(grid, true);
    base.u1 = SpectralField(grid, true);
    for (int i = 0; i < g.size(); ++i) {
        base.u0.coeff[i] = std::pow(g.jb(i), -1.0 - s_target - eps);
        base.u1.coeff[i] = std::pow(g.jb(i), -s_target - eps);
    }
    RandomizedData rnd = randomize_data(base.u0, base.u1, Dist::gaussian, seed);
    SobolevPair out{std::move(rnd.u0), std::move(rnd.u1)};
    double h0 = 0.0, h1 = 0.0;
    const auto& jb = g.jb_table();
    for (int i = 0; i < g.size(); ++i) {
        h0 += std::pow(jb[i], 2.0 * s_target) * std::norm(out.u0.coeff[i]);
        h1 += std::pow(jb[i], 2.0 * (s_target - 1.0)) * std::norm(out.u1.coeff[i]);
    }
    const double scale = amplitude / std::sqrt(h0 + h1);
    out.u0 *= scale;
    out.u1 *= scale;
    return out;
}

SobolevPair bump_pair_fixture(const GridPtr& grid, double scale, double amplitude,
                              std::uint64_t seed) {
    const FourierGrid& g = *grid;
    SobolevPair base;
    base.u0 = SpectralField(grid, true);
    base.u1 = SpectralField(grid, true);
    for (int i = 0; i < g.size(); ++i) {
        const double prof = std::exp(-0.5 * g.d(i) * g.d(i) / (scale * scale));
        base.u0.coeff[i] = prof;
        base.u1.coeff[i] = prof;
    }
    RandomizedData rnd = randomize_data(base.u0, base.u1, Dist::gaussian, seed);
    SobolevPair out{std::move(rnd.u0), std::move(rnd.u1)};
    double h2 = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        h2 += std::norm(out.u0.coeff[i]) + std::norm(out.u1.coeff[i]) /
                                               (g.jb(i) * g.jb(i));
    }
    const double a = amplitude / std::sqrt(h2);
    out.u0 *= a;
    out.u1 *= a;
    return out;
}

} // namespace vnlw
