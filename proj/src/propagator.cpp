#include "vnlw/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace vnlw {

namespace {

// damping gamma = mu*d and oscillation omega = sqrt(1 + d^2 - gamma^2);
// for mu = 1/2 this is <<n>> = sqrt(1 + (3/4) d^2), and omega >= 1 always
inline void flow_params(double d, bool viscous, double& gamma, double& omega) {
    gamma = viscous ? 0.5 * d : 0.0;
    omega = std::sqrt(1.0 + d * d - gamma * gamma);
}

} // namespace

ModeFlowMatrix mode_flow(double d, double t, bool viscous) {
    if (t < 0.0) throw std::invalid_argument("mode_flow: t must be >= 0");
    double gamma, omega;
    flow_params(d, viscous, gamma, omega);
    const double e = std::exp(-gamma * t);
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    ModeFlowMatrix m;
    m.m00 = e * (c + gamma / omega * s);
    m.m01 = e * s / omega;
    m.m10 = -(1.0 + d * d) / omega * e * s;
    m.m11 = e * (c - gamma / omega * s);
    return m;
}

ModeFlowMatrix mode_flow(Mode n, double t, bool viscous) {
    const double d = std::sqrt(static_cast<double>(n.n1) * n.n1 +
                               static_cast<double>(n.n2) * n.n2);
    return mode_flow(d, t, viscous);
}

PhaseState apply_V(const PhaseState& state, double dt, bool viscous) {
    if (dt < 0.0) throw std::invalid_argument("apply_V: dt must be >= 0");
    if (!state.v.grid->same_as(*state.vt.grid)) {
        throw std::invalid_argument("apply_V: component grid mismatch");
    }
    const FourierGrid& g = *state.v.grid;
    PhaseState out = state;
    out.t = state.t + dt;
    for (int i = 0; i < g.size(); ++i) {
        const ModeFlowMatrix m = mode_flow(g.d(i), dt, viscous);
        const cplx a = state.v.coeff[i];
        const cplx b = state.vt.coeff[i];
        out.v.coeff[i] = m.m00 * a + m.m01 * b;
        out.vt.coeff[i] = m.m10 * a + m.m11 * b;
    }
    return out;
}

SpectralField apply_duhamel_kernel(const SpectralField& f, double t,
                                   bool derivative, bool viscous) {
    if (t < 0.0) throw std::invalid_argument("apply_duhamel_kernel: t must be >= 0");
    const FourierGrid& g = *f.grid;
    SpectralField out = f;
    for (int i = 0; i < g.size(); ++i) {
        const ModeFlowMatrix m = mode_flow(g.d(i), t, viscous);
        out.coeff[i] *= derivative ? m.m11 : m.m01;
    }
    return out;
}

SpectralField poisson_smooth(const SpectralField& f, double t, double beta) {
    if (t <= 0.0) throw std::invalid_argument("poisson_smooth: t must be > 0");
    if (beta < 0.0) throw std::invalid_argument("poisson_smooth: beta must be >= 0");
    const FourierGrid& g = *f.grid;
    SpectralField out = f;
    for (int i = 0; i < g.size(); ++i) {
        const double d = g.d(i);
        const double amp = (beta == 0.0) ? 1.0 : std::pow(d, beta);
        out.coeff[i] *= amp * std::exp(-0.5 * d * t);
    }
    return out;
}

SpectralField half_wave(const SpectralField& f, double t, int sign) {
    if (t < 0.0) throw std::invalid_argument("half_wave: t must be >= 0");
    const FourierGrid& g = *f.grid;
    SpectralField out = f;
    out.hermitian = false;
    const double sgn = sign >= 0 ? 1.0 : -1.0;
    for (int i = 0; i < g.size(); ++i) {
        const double d = g.d(i);
        const double phase = sgn * g.jbb(i) * t;
        out.coeff[i] *= std::exp(-0.5 * d * t) * cplx{std::cos(phase), std::sin(phase)};
    }
    return out;
}

double quadratic_energy(const PhaseState& state) {
    const FourierGrid& g = *state.v.grid;
    double acc = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double d2 = g.d(i) * g.d(i);
        acc += (1.0 + d2) * std::norm(state.v.coeff[i]) + std::norm(state.vt.coeff[i]);
    }
    return 0.5 * acc;
}

KernelMoments kernel_moments(double d, double a, double b, bool viscous) {
    double gamma, omega;
    flow_params(d, viscous, gamma, omega);
    const std::complex<double> z{-gamma, omega};
    const std::complex<double> ea = std::exp(z * a);
    const std::complex<double> eb = std::exp(z * b);
    // E0 = int_a^b e^{z tau} dtau, E1 = int_a^b tau e^{z tau} dtau;
    // |z| = sqrt(1 + d^2) >= 1, so no small-divisor branch is needed
    const std::complex<double> e0 = (eb - ea) / z;
    const std::complex<double> e1 = (eb * (b - 1.0 / z) - ea * (a - 1.0 / z)) / z;
    KernelMoments km;
    km.k01 = e0.imag() / omega;
    km.k11 = e0.real() - gamma / omega * e0.imag();
    km.k01_t = e1.imag() / omega;
    km.k11_t = e1.real() - gamma / omega * e1.imag();
    return km;
}

namespace {

// 8-point Gauss-Legendre on [-1, 1]
constexpr double kGlX[8] = {-0.9602898564975363, -0.7966664774136267,
                            -0.5255324099163290, -0.1834346424956498,
                            0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGlW[8] = {0.1012285362903763, 0.2223810344533745,
                            0.3137066458778873, 0.3626837833783620,
                            0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

double gl_integral(const std::function<double(double)>& f, double T, int panels) {
    const double h = T / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int i = 0; i < 8; ++i) {
            acc += kGlW[i] * f(mid + 0.5 * h * kGlX[i]);
        }
    }
    return acc * 0.5 * h;
}

} // namespace

std::vector<std::pair<double, double>> gl8_nodes(double T, int panels) {
    std::vector<std::pair<double, double>> out;
    out.reserve(8 * panels);
    const double h = T / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int i = 0; i < 8; ++i) {
            out.emplace_back(mid + 0.5 * h * kGlX[i], 0.5 * h * kGlW[i]);
        }
    }
    return out;
}

double time_integral(const std::function<double(double)>& f, double T,
                     double rel_tol, int max_panels) {
    if (T <= 0.0) throw std::invalid_argument("time_integral: T must be > 0");
    int panels = 2;
    double prev = gl_integral(f, T, panels);
    while (panels < max_panels) {
        panels *= 2;
        const double cur = gl_integral(f, T, panels);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

double time_lq_norm(double q, double T, const std::function<double(double)>& f,
                    double rel_tol, int max_panels) {
    if (!std::isfinite(q)) {
        double m = 0.0;
        for (const auto& [t, w] : gl8_nodes(T, std::min(max_panels, 16))) {
            (void)w;
            m = std::max(m, f(t));
        }
        return m;
    }
    const double val = time_integral([&](double t) { return std::pow(f(t), q); }, T,
                                     rel_tol, max_panels);
    return std::pow(val, 1.0 / q);
}

} // namespace vnlw
