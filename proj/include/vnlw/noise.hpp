#pragma once

#include "vnlw/grid.hpp"
#include "vnlw/propagator.hpp"

#include <array>
#include <cstdint>

namespace vnlw {

/// One-step covariance of the per-mode pair (Psi_hat, dt Psi_hat) driven by
/// d^{2 alpha} white noise through the Duhamel kernels, in closed form from
/// the Ito isometry. Entries are the complex covariance E[G conj(G)^T]; the
/// real and imaginary parts each carry half of it.
struct StepCovariance {
    double q11 = 0.0, q12 = 0.0, q22 = 0.0;
};

StepCovariance step_covariance(double d, double alpha, double h);

/// Exact sampler for a single mode of the stochastic convolution: the pair
/// X = (Psi_hat, dt Psi_hat) follows X(t+h) = M(h) X(t) + G with M the mode
/// flow matrix and G a centered Gaussian with the closed-form step
/// covariance. Marginals at any time are exact, independent of the step
/// partition. Draws are keyed by (seed, mode, step).
class ModeNoiseSampler {
public:
    ModeNoiseSampler(Mode n, double alpha, std::uint64_t seed);

    void advance(double h);
    cplx psi() const { return psi_; }
    cplx dpsi() const { return dpsi_; }
    double t() const { return t_; }

    static std::uint64_t mode_key(Mode n);

private:
    Mode n_;
    double d_;
    double alpha_;
    std::uint64_t seed_;
    std::uint64_t step_ = 0;
    double t_ = 0.0;
    cplx psi_{0.0, 0.0};
    cplx dpsi_{0.0, 0.0};
};

/// Gaussian state of (Psi_hat, dt Psi_hat) over the whole lattice.
/// Hermitian by construction: modes are drawn on the index half-lattice
/// I = (Z+ x {0}) u (Z x Z+) and mirrored by conjugation; the zero mode and
/// the Nyquist rows stay identically zero.
class NoiseState {
public:
    NoiseState(GridPtr grid, double alpha, std::uint64_t seed);

    void advance(double h);

    double t() const { return t_; }
    double alpha() const { return alpha_; }
    std::uint64_t seed() const { return seed_; }
    const GridPtr& grid() const { return grid_; }

    SpectralField psi_field() const;
    SpectralField dpsi_field() const;

private:
    GridPtr grid_;
    double alpha_;
    std::uint64_t seed_;
    std::uint64_t step_ = 0;
    double t_ = 0.0;
    std::vector<cplx> psi_, dpsi_;
};

// alpha >= 1/2 is the renormalization regime and is rejected
NoiseState init_noise(GridPtr grid, double alpha, std::uint64_t seed);
NoiseState advance_noise(NoiseState state, double h);

// zero all coefficients with |n| > n_cut
SpectralField truncate_noise(const SpectralField& f, double n_cut);
SpectralField truncate_noise(const NoiseState& state, double n_cut);

SpectralField dt_psi(const NoiseState& state);

/// Two-time covariance block C[i][j] = E[X_i(t1) conj(X_j(t2))] for one mode,
/// 0 <= t2 <= t1, from the Ito-isometry integrals evaluated by adaptive
/// quadrature (independent of the closed forms used by the sampler).
/// Throws if the requested tolerance cannot be certified.
std::array<std::array<double, 2>, 2> covariance_oracle(Mode n, double t1, double t2,
                                                       double alpha,
                                                       double tol = 1e-12);

} // namespace vnlw
