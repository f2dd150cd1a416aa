#include "vnlw/noise.hpp"

#include "vnlw/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vnlw {

namespace {

// exponential-trig primitives on [0,h]:
//   i0 = int e^{-d s} ds, ic = int e^{-d s} cos(2 w s) ds,
//   is = int e^{-d s} sin(2 w s) ds
struct ExpTrig {
    double i0, ic, is;
};

ExpTrig exp_trig_integrals(double d, double w, double h) {
    const double c = 2.0 * w;
    const double den = d * d + c * c; // = 4(1+d^2) >= 4
    const double e = std::exp(-d * h);
    ExpTrig out;
    out.i0 = d > 0.0 ? (1.0 - e) / d : h;
    out.ic = (d + e * (c * std::sin(c * h) - d * std::cos(c * h))) / den;
    out.is = (c - e * (d * std::sin(c * h) + c * std::cos(c * h))) / den;
    return out;
}

struct Chol2 {
    double l11 = 0.0, l21 = 0.0, l22 = 0.0;
};

// Cholesky factor of the positive semidefinite [[a, b], [b, c]] with an
// eigenvalue floor at zero for round-off
Chol2 chol2(double a, double b, double c) {
    Chol2 l;
    l.l11 = std::sqrt(std::max(a, 0.0));
    l.l21 = l.l11 > 0.0 ? b / l.l11 : 0.0;
    l.l22 = std::sqrt(std::max(c - l.l21 * l.l21, 0.0));
    return l;
}

bool in_half_lattice(Mode n) {
    return (n.n2 > 0) || (n.n2 == 0 && n.n1 > 0);
}

// exact Gaussian one-step update of the complex pair (psi, dpsi)
void mode_step(double d, double alpha, double h, CounterRng& rng, bool zero_forced,
               cplx& psi, cplx& dpsi) {
    const ModeFlowMatrix m = mode_flow(d, h);
    const cplx a = psi;
    const cplx b = dpsi;
    psi = m.m00 * a + m.m01 * b;
    dpsi = m.m10 * a + m.m11 * b;
    if (zero_forced) return;
    const StepCovariance q = step_covariance(d, alpha, h);
    // real and imaginary parts are iid N(0, Q/2)
    const Chol2 l = chol2(0.5 * q.q11, 0.5 * q.q12, 0.5 * q.q22);
    const double g0 = rng.next_normal();
    const double g1 = rng.next_normal();
    const double g2 = rng.next_normal();
    const double g3 = rng.next_normal();
    psi += cplx{l.l11 * g0, l.l11 * g2};
    dpsi += cplx{l.l21 * g0 + l.l22 * g1, l.l21 * g2 + l.l22 * g3};
}

} // namespace

StepCovariance step_covariance(double d, double alpha, double h) {
    StepCovariance q;
    if (d <= 0.0) return q; // zero-mode forcing is zero for every alpha
    const double w = std::sqrt(1.0 + 0.75 * d * d);
    const double sig2 = std::pow(d, 2.0 * alpha);
    const ExpTrig e = exp_trig_integrals(d, w, h);
    const double w2 = w * w;
    q.q11 = sig2 * (e.i0 - e.ic) / (2.0 * w2);
    q.q12 = sig2 * (e.is / (2.0 * w) - d * (e.i0 - e.ic) / (4.0 * w2));
    q.q22 = sig2 * (0.5 * (e.i0 + e.ic) - 0.5 * d / w * e.is +
                    d * d / (8.0 * w2) * (e.i0 - e.ic));
    return q;
}

std::uint64_t ModeNoiseSampler::mode_key(Mode n) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.n1)) << 32) |
           static_cast<std::uint32_t>(n.n2);
}

ModeNoiseSampler::ModeNoiseSampler(Mode n, double alpha, std::uint64_t seed)
    : n_(n),
      d_(std::sqrt(static_cast<double>(n.n1) * n.n1 + static_cast<double>(n.n2) * n.n2)),
      alpha_(alpha),
      seed_(seed) {
    if (alpha >= 0.5) throw std::invalid_argument("noise: alpha must be < 1/2");
}

void ModeNoiseSampler::advance(double h) {
    if (h <= 0.0) throw std::invalid_argument("advance: h must be > 0");
    CounterRng rng(seed_, mode_key(n_), step_);
    const bool zero_forced = (d_ <= 0.0);
    // sample in the half-lattice convention: a mirrored mode reproduces the
    // conjugate of its partner's state
    if (in_half_lattice(n_)) {
        mode_step(d_, alpha_, h, rng, zero_forced, psi_, dpsi_);
    } else if (n_.n1 == 0 && n_.n2 == 0) {
        // zero mode stays zero
    } else {
        Mode mirror{-n_.n1, -n_.n2};
        CounterRng mrng(seed_, mode_key(mirror), step_);
        cplx p = std::conj(psi_), dp = std::conj(dpsi_);
        mode_step(d_, alpha_, h, mrng, zero_forced, p, dp);
        psi_ = std::conj(p);
        dpsi_ = std::conj(dp);
    }
    ++step_;
    t_ += h;
}

NoiseState::NoiseState(GridPtr grid, double alpha, std::uint64_t seed)
    : grid_(std::move(grid)),
      alpha_(alpha),
      seed_(seed),
      psi_(grid_->size(), cplx{0.0, 0.0}),
      dpsi_(grid_->size(), cplx{0.0, 0.0}) {
    if (alpha >= 0.5) throw std::invalid_argument("noise: alpha must be < 1/2");
}

void NoiseState::advance(double h) {
    if (h <= 0.0) throw std::invalid_argument("advance: h must be > 0");
    const FourierGrid& g = *grid_;
    const int n = g.n();
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            const int idx = g.flat(k1, k2);
            if (g.is_nyquist(idx)) continue;
            const Mode m = {g.freq_of_index(k1), g.freq_of_index(k2)};
            if (!in_half_lattice(m)) continue;
            CounterRng rng(seed_, ModeNoiseSampler::mode_key(m), step_);
            mode_step(g.d(idx), alpha_, h, rng, false, psi_[idx], dpsi_[idx]);
            const int midx = g.flat(g.index_of_freq(-m.n1), g.index_of_freq(-m.n2));
            psi_[midx] = std::conj(psi_[idx]);
            dpsi_[midx] = std::conj(dpsi_[idx]);
        }
    }
    ++step_;
    t_ += h;
}

SpectralField NoiseState::psi_field() const {
    SpectralField f(grid_, true);
    f.coeff = psi_;
    return f;
}

SpectralField NoiseState::dpsi_field() const {
    SpectralField f(grid_, true);
    f.coeff = dpsi_;
    return f;
}

NoiseState init_noise(GridPtr grid, double alpha, std::uint64_t seed) {
    return NoiseState(std::move(grid), alpha, seed);
}

NoiseState advance_noise(NoiseState state, double h) {
    state.advance(h);
    return state;
}

SpectralField truncate_noise(const SpectralField& f, double n_cut) {
    SpectralField out = f;
    for (int i = 0; i < f.grid->size(); ++i) {
        if (f.grid->d(i) > n_cut) out.coeff[i] = 0.0;
    }
    return out;
}

SpectralField truncate_noise(const NoiseState& state, double n_cut) {
    return truncate_noise(state.psi_field(), n_cut);
}

SpectralField dt_psi(const NoiseState& state) {
    return state.dpsi_field();
}

namespace {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) {
        throw std::runtime_error("covariance_oracle: quadrature tolerance not reached");
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, double scale) {
    if (b <= a) return 0.0;
    // panel width resolves both the exponential boundary layer (1/d) and the
    // oscillation (1/omega); adaptive refinement handles the rest
    const int panels = std::max(
        1, static_cast<int>(std::ceil((b - a) * std::max(1.0, scale / 3.0))));
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + (b - a) * p / panels;
        const double pb = a + (b - a) * (p + 1) / panels;
        const double fa = f(pa);
        const double fb = f(pb);
        const double fm = f(0.5 * (pa + pb));
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        acc += adaptive_simpson_rec(f, pa, pb, fa, fm, fb, whole, tol / panels, 48);
    }
    return acc;
}

} // namespace

std::array<std::array<double, 2>, 2> covariance_oracle(Mode n, double t1, double t2,
                                                       double alpha, double tol) {
    if (t2 < 0.0 || t1 < t2) {
        throw std::invalid_argument("covariance_oracle: need 0 <= t2 <= t1");
    }
    std::array<std::array<double, 2>, 2> out{{{0.0, 0.0}, {0.0, 0.0}}};
    const double d = std::sqrt(static_cast<double>(n.n1) * n.n1 +
                               static_cast<double>(n.n2) * n.n2);
    if (d <= 0.0 || t2 == 0.0) return out;
    const double w = std::sqrt(1.0 + 0.75 * d * d);
    const double sig2 = std::pow(d, 2.0 * alpha);
    const auto k1 = [&](double tau) {
        return std::exp(-0.5 * d * tau) * std::sin(w * tau) / w;
    };
    const auto k2 = [&](double tau) {
        return std::exp(-0.5 * d * tau) *
               (std::cos(w * tau) - 0.5 * d / w * std::sin(w * tau));
    };
    const auto entry = [&](auto ka, auto kb) {
        return sig2 * adaptive_simpson(
                          [&](double s) { return ka(t1 - s) * kb(t2 - s); }, 0.0, t2,
                          tol, d + 2.0 * w);
    };
    out[0][0] = entry(k1, k1);
    out[0][1] = entry(k1, k2);
    out[1][0] = entry(k2, k1);
    out[1][1] = entry(k2, k2);
    return out;
}

} // namespace vnlw
