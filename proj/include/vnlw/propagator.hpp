#pragma once

#include "vnlw/grid.hpp"

#include <functional>

namespace vnlw {

/// 2x2 real matrix mapping (v, dv/dt) at time 0 to time t for one mode of
/// the linear flow  v'' + (1+d^2) v + 2*mu*d v' = 0, d = |n|.
/// mu = 1/2 for the viscous wave flow, mu = 0 for the usual wave flow
/// (used by the energy-conservation oracle).
struct ModeFlowMatrix {
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;
};

ModeFlowMatrix mode_flow(double d, double t, bool viscous = true);
ModeFlowMatrix mode_flow(Mode n, double t, bool viscous = true);

/// (v, dt v) of the second-order flow at time t.
struct PhaseState {
    double t = 0.0;
    SpectralField v;
    SpectralField vt;

    PhaseState() = default;
    PhaseState(GridPtr g) : v(g), vt(std::move(g)) {}
    PhaseState(double time, SpectralField v0, SpectralField v1)
        : t(time), v(std::move(v0)), vt(std::move(v1)) {}
};

// advance both components by the mode flow matrices over dt >= 0
PhaseState apply_V(const PhaseState& state, double dt, bool viscous = true);

// multiply each mode by m01(t) (the Duhamel kernel S(t)) or by m11(t)
// (its time derivative) when derivative is set
SpectralField apply_duhamel_kernel(const SpectralField& f, double t,
                                   bool derivative, bool viscous = true);

// mode multiplier |n|^beta * exp(-|n| t / 2)
SpectralField poisson_smooth(const SpectralField& f, double t, double beta);

// half-wave factor exp(-|n| t / 2 +- i <<n>> t); complex multiplier, so the
// output loses Hermitian symmetry
SpectralField half_wave(const SpectralField& f, double t, int sign);

// quadratic energy (1/2)(||v||^2 + ||grad v||^2 + ||vt||^2) of the pair,
// non-increasing along the unforced viscous flow
double quadratic_energy(const PhaseState& state);

/// Exact integrals of the Duhamel kernels over [a, b], used by the
/// exponential integrator and Picard quadrature:
///   k01   = int_a^b m01(tau) dtau          k11   = int_a^b m11(tau) dtau
///   k01_t = int_a^b tau m01(tau) dtau      k11_t = int_a^b tau m11(tau) dtau
struct KernelMoments {
    double k01 = 0.0, k11 = 0.0, k01_t = 0.0, k11_t = 0.0;
};

KernelMoments kernel_moments(double d, double a, double b, bool viscous = true);

/// Composite Gauss-Legendre time quadrature: 8 nodes per panel, panels
/// doubled until the relative change drops below rel_tol.
double time_integral(const std::function<double(double)>& f, double T,
                     double rel_tol = 1e-4, int max_panels = 128);

// (int_0^T f(t)^q dt)^{1/q}; q = inf takes the max over the refined node set
double time_lq_norm(double q, double T, const std::function<double(double)>& f,
                    double rel_tol = 1e-4, int max_panels = 128);

// fixed-panel node/weight list for callers that batch evaluations
std::vector<std::pair<double, double>> gl8_nodes(double T, int panels);

} // namespace vnlw
