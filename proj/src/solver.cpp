#include "vnlw/solver.hpp"

#include "vnlw/norms.hpp"
#include "vnlw/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace vnlw {

namespace {

double sign_factor(Sign s) { return s == Sign::defocusing ? 1.0 : -1.0; }

// per-mode kernel moment tables over one panel [0, h]
struct PanelKernels {
    std::vector<double> k01, k11, k01t_h, k11t_h; // *_h already divided by h
};

PanelKernels panel_kernels(const FourierGrid& g, double h, bool viscous) {
    PanelKernels pk;
    const int sz = g.size();
    pk.k01.resize(sz);
    pk.k11.resize(sz);
    pk.k01t_h.resize(sz);
    pk.k11t_h.resize(sz);
    for (int i = 0; i < sz; ++i) {
        const KernelMoments km = kernel_moments(g.d(i), 0.0, h, viscous);
        pk.k01[i] = km.k01;
        pk.k11[i] = km.k11;
        pk.k01t_h[i] = km.k01_t / h;
        pk.k11t_h[i] = km.k11_t / h;
    }
    return pk;
}

struct Pair {
    SpectralField v, vt;
};

// discrete C_T H^sigma + L^q_T L^r distance between node paths
double path_distance(const std::vector<PhaseState>& a, const std::vector<PhaseState>& b,
                     double sigma, double q, double r, double h) {
    double csup = 0.0;
    double lq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        SpectralField dv = a[i].v - b[i].v;
        SpectralField dvt = a[i].vt - b[i].vt;
        csup = std::max(csup, pair_norm(dv, dvt, sigma));
        const double w = (i == 0 || i + 1 == a.size()) ? 0.5 * h : h;
        lq += w * std::pow(lr_norm(to_physical(dv), r), q);
    }
    return csup + std::pow(lq, 1.0 / q);
}

} // namespace

double SolverConfig::sigma() const {
    if (p < 2.0) return 0.0;
    return 1.0 - (1.0 / (p + delta) + 1.0 / p);
}

double SolverConfig::strichartz_q() const { return p < 2.0 ? 2.0 + delta : p + delta; }

double SolverConfig::strichartz_r() const {
    return p < 2.0 ? (4.0 + 2.0 * delta) / (1.0 + delta) : 2.0 * p;
}

double SolverConfig::pad_required() const {
    const double rp = std::round(p);
    if (std::abs(p - rp) < 1e-12) return std::max(1.5, (rp + 1.0) / 2.0);
    return 1.5;
}

void SolverConfig::validate(const FourierGrid& grid) const {
    if (p <= 1.0) throw std::invalid_argument("SolverConfig: p must be > 1");
    if (picard_tol <= 0.0) throw std::invalid_argument("SolverConfig: picard_tol must be > 0");
    if (h <= 0.0) throw std::invalid_argument("SolverConfig: h must be > 0");
    if (grid.pad_factor() < pad_required() - 1e-12) {
        throw std::invalid_argument("SolverConfig: grid pad too small for this p");
    }
    if (forcing == ForcingKind::svnlw && alpha >= 0.5) {
        throw std::invalid_argument("SolverConfig: alpha must be < 1/2");
    }
}

SpectralField nonlinearity(const SpectralField& u, double p, int phys_m) {
    if (!u.hermitian) throw std::invalid_argument("nonlinearity: field must be Hermitian");
    if (phys_m == 0) return power_nonlinearity(u, p);
    PhysicalField phys = to_physical(u, phys_m);
    for (auto& v : phys.samples) {
        const double x = v.real();
        if (!std::isfinite(x)) throw std::runtime_error("nonlinearity: non-finite samples");
        const double a = std::abs(x);
        v = cplx{a > 0.0 ? std::pow(a, p - 1.0) * x : 0.0, 0.0};
    }
    return from_physical(phys, u.grid, true);
}

WindowResult picard_window(const PhaseState& initial,
                           std::span<const SpectralField> forcing, double h,
                           const SolverConfig& cfg) {
    const GridPtr grid = initial.v.grid;
    const FourierGrid& g = *grid;
    cfg.validate(g);
    const std::size_t nds = forcing.size();
    if (nds < 2) throw std::invalid_argument("picard_window: need at least 2 nodes");

    const double sgn = sign_factor(cfg.sign);
    const double sigma = cfg.sigma();
    const double q = cfg.strichartz_q();
    const double r = cfg.strichartz_r();
    const PanelKernels pk = panel_kernels(g, h, cfg.viscous);

    // linear evolution path, advanced incrementally by the exact flow
    std::vector<PhaseState> lin(nds);
    lin[0] = initial;
    for (std::size_t i = 1; i < nds; ++i) lin[i] = apply_V(lin[i - 1], h, cfg.viscous);

    std::vector<PhaseState> cur = lin;
    WindowResult out;
    out.diag.converged = false;

    const double scale = std::max(1.0, pair_norm(initial.v, initial.vt, sigma));
    std::vector<SpectralField> gvals(nds, SpectralField(grid));

    int consecutive_expansion = 0;
    for (int iter = 1; iter <= cfg.picard_max; ++iter) {
        if (cfg.nonlinearity_on) {
            for (std::size_t i = 0; i < nds; ++i) {
                SpectralField arg = cur[i].v + forcing[i];
                double hs = 0.0;
                for (const auto& c : arg.coeff) hs += std::norm(c);
                hs = std::sqrt(hs);
                if (!std::isfinite(hs) || hs > cfg.overflow_threshold) {
                    out.diag.overflowed = true;
                    out.path = std::move(cur);
                    return out;
                }
                gvals[i] = nonlinearity(arg, cfg.p);
                gvals[i] *= sgn;
            }
        }

        // Duhamel pair, advanced panel by panel with the exact flow and the
        // exact kernel integral of the linear-in-time interpolant of G
        std::vector<PhaseState> next(nds);
        next[0] = initial;
        SpectralField dv(grid), dvt(grid);
        for (std::size_t i = 0; i + 1 < nds; ++i) {
            for (int k = 0; k < g.size(); ++k) {
                const ModeFlowMatrix m = mode_flow(g.d(k), h, cfg.viscous);
                const cplx a = dv.coeff[k];
                const cplx b = dvt.coeff[k];
                cplx na = m.m00 * a + m.m01 * b;
                cplx nb = m.m10 * a + m.m11 * b;
                if (cfg.nonlinearity_on) {
                    const cplx g1 = gvals[i + 1].coeff[k];
                    const cplx dg = g1 - gvals[i].coeff[k];
                    na += pk.k01[k] * g1 - pk.k01t_h[k] * dg;
                    nb += pk.k11[k] * g1 - pk.k11t_h[k] * dg;
                }
                dv.coeff[k] = na;
                dvt.coeff[k] = nb;
            }
            next[i + 1].t = initial.t + static_cast<double>(i + 1) * h;
            next[i + 1].v = lin[i + 1].v - dv;
            next[i + 1].vt = lin[i + 1].vt - dvt;
        }

        const double dist = path_distance(next, cur, sigma, q, r, h);
        cur = std::move(next);
        out.diag.iterations = iter;

        if (!out.diag.iterate_distances.empty()) {
            const double prev = out.diag.iterate_distances.back();
            const double ratio = prev > 0.0 ? dist / prev : 0.0;
            out.diag.certified_ratio = std::max(out.diag.certified_ratio, ratio);
            consecutive_expansion = ratio >= 1.0 ? consecutive_expansion + 1 : 0;
        }
        out.diag.iterate_distances.push_back(dist);

        if (dist <= cfg.picard_tol * scale) {
            out.diag.converged = true;
            out.diag.duhamel_residual = dist;
            break;
        }
        if (consecutive_expansion >= 2) break; // not contracting
    }

    out.path = std::move(cur);
    return out;
}

PhaseState step_etd(const PhaseState& state, double h, const SpectralField& f0,
                    const SpectralField& f1, const SolverConfig& cfg) {
    const GridPtr grid = state.v.grid;
    const FourierGrid& g = *grid;
    if (h <= 0.0) throw std::invalid_argument("step_etd: h must be > 0");
    const double sgn = sign_factor(cfg.sign);

    PhaseState out(grid);
    out.t = state.t + h;
    if (!cfg.nonlinearity_on) {
        out = apply_V(state, h, cfg.viscous);
        return out;
    }

    const PanelKernels pk = panel_kernels(g, h, cfg.viscous);
    SpectralField g0 = nonlinearity(state.v + f0, cfg.p);
    g0 *= sgn;

    // predictor: constant-G quadrature
    PhaseState pred = apply_V(state, h, cfg.viscous);
    for (int k = 0; k < g.size(); ++k) {
        pred.v.coeff[k] -= pk.k01[k] * g0.coeff[k];
        pred.vt.coeff[k] -= pk.k11[k] * g0.coeff[k];
    }
    const double hs = l2_norm(pred.v);
    if (!std::isfinite(hs) || hs > cfg.overflow_threshold) {
        throw std::runtime_error("step_etd: norm overflow");
    }
    SpectralField g1 = nonlinearity(pred.v + f1, cfg.p);
    g1 *= sgn;

    // corrector: linear-in-time interpolant of (G0, G1)
    out = apply_V(state, h, cfg.viscous);
    for (int k = 0; k < g.size(); ++k) {
        const cplx dg = g1.coeff[k] - g0.coeff[k];
        out.v.coeff[k] -= pk.k01[k] * g1.coeff[k] - pk.k01t_h[k] * dg;
        out.vt.coeff[k] -= pk.k11[k] * g1.coeff[k] - pk.k11t_h[k] * dg;
    }
    return out;
}

SpectralField NoiseForcing::at_time(double t) {
    const double cur = state_.t();
    if (t < cur - 1e-12) {
        throw std::logic_error("NoiseForcing: non-causal sample request");
    }
    if (t > cur + 1e-12) state_.advance(t - cur);
    return state_.psi_field();
}

GlobalRunResult global_run(const PhaseState& initial, double t_final,
                           const SolverConfig& cfg, ForcingSource& forcing,
                           double record_cadence) {
    const GridPtr grid = initial.v.grid;
    cfg.validate(*grid);
    if (t_final <= 0.0) throw std::invalid_argument("global_run: t_final must be > 0");

    GlobalRunResult out;
    out.trajectory.status = RunStatus::completed;

    PhaseState state = initial;
    out.records.push_back(energy(state, cfg.p));
    out.trajectory.states.push_back(state);
    double next_record = record_cadence;

    double h = cfg.h;
    double window = std::max(cfg.t_loc, 2.0 * h);
    double t = initial.t;
    const double window_floor = std::pow(2.0, -16);

    // forcing snapshots are cached per window so halving replays the prefix
    std::vector<SpectralField> snaps;
    std::size_t snaps_valid = 0;

    while (t < t_final - 1e-9) {
        const double remaining = t_final - t;
        const double weff = std::min(window, remaining);
        std::size_t nds = static_cast<std::size_t>(std::max(2.0, std::round(weff / h) + 1.0));
        if ((static_cast<double>(nds) - 1.0) * h > remaining + 1e-9) {
            nds = std::max<std::size_t>(2, static_cast<std::size_t>(remaining / h + 1e-9) + 1);
        }

        if (snaps_valid < nds) {
            snaps.resize(nds, SpectralField(grid));
            for (std::size_t i = snaps_valid; i < nds; ++i) {
                snaps[i] = forcing.at_time(t + static_cast<double>(i) * h);
            }
            snaps_valid = nds;
        }

        WindowResult wr = picard_window(
            state, std::span<const SpectralField>(snaps.data(), nds), h, cfg);
        out.trajectory.windows.push_back(wr.diag);

        if (!wr.diag.converged) {
            const bool can_halve_window = window / 2.0 >= std::max(window_floor, 2.0 * h);
            const bool can_refine_h = forcing.refinable() && window / 2.0 >= window_floor;
            if (can_halve_window) {
                window /= 2.0;
                continue;
            }
            if (can_refine_h) {
                // node step follows the window down (pure sources only; a
                // causal noise path cannot be re-sampled in its past)
                window /= 2.0;
                h /= 2.0;
                snaps_valid = std::min<std::size_t>(snaps_valid, 1);
                continue;
            }
            // at the floor: a diverging iterate is blow-up, a stalling one is
            // contraction failure
            out.trajectory.status = wr.diag.overflowed ? RunStatus::norm_overflow
                                                       : RunStatus::contraction_failed;
            out.trajectory.end_time = t;
            out.trajectory.message =
                (wr.diag.overflowed ? "norm overflow at t = "
                                    : "contraction failed at t = ") +
                std::to_string(t) + ", window at floor " + std::to_string(window);
            return out;
        }
        const double state_l2 = l2_norm(wr.path.back().v);
        if (!std::isfinite(state_l2) || state_l2 > cfg.overflow_threshold) {
            out.trajectory.status = RunStatus::norm_overflow;
            out.trajectory.end_time = wr.path.back().t;
            out.trajectory.message =
                "norm overflow at t = " + std::to_string(wr.path.back().t);
            return out;
        }

        for (std::size_t i = 1; i < wr.path.size(); ++i) {
            if (wr.path[i].t >= next_record - 1e-9) {
                out.records.push_back(energy(wr.path[i], cfg.p));
                out.trajectory.states.push_back(wr.path[i]);
                while (next_record <= wr.path[i].t + 1e-9) next_record += record_cadence;
            }
        }
        state = wr.path.back();
        t = state.t;

        // shift the forcing cache: the last node becomes node 0 of the next window
        snaps[0] = snaps[nds - 1];
        snaps_valid = 1;

        window = std::min(std::max(cfg.t_loc, 2.0 * h), window * 2.0);
    }

    out.trajectory.end_time = t;
    if (out.trajectory.states.back().t < t - 1e-9) {
        out.trajectory.states.push_back(state);
        out.records.push_back(energy(state, cfg.p));
    }
    return out;
}

} // namespace vnlw
