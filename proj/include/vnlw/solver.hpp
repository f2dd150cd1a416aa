#pragma once

#include "vnlw/energy.hpp"
#include "vnlw/noise.hpp"
#include "vnlw/propagator.hpp"
#include "vnlw/randomize.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vnlw {

enum class Sign { defocusing, focusing };
enum class ForcingKind { none, svnlw, randomized };
enum class RunStatus { completed, contraction_failed, norm_overflow };

struct SolverConfig {
    double p = 3.0;
    Sign sign = Sign::defocusing;
    ForcingKind forcing = ForcingKind::none;
    double alpha = 0.0;      // svnlw forcing exponent
    double delta = 0.5;      // case-split parameter
    double t_loc = 0.1;      // Picard window length
    double picard_tol = 1e-10;
    int picard_max = 30;
    double h = 5e-3;         // node step inside windows
    bool viscous = true;     // damping off reproduces the usual NLW
    bool nonlinearity_on = true;
    double overflow_threshold = 1e8;

    // working regularity and Strichartz exponents, per the case split:
    // 1 < p < 2 uses (2+delta, (4+2delta)/(1+delta), 0); p >= 2 uses
    // (p+delta, 2p, 1 - 1/(p+delta) - 1/p)
    double sigma() const;
    double strichartz_q() const;
    double strichartz_r() const;

    // dealias pad required: (p+1)/2 for integer p (alias-free), 3/2 floor
    double pad_required() const;

    void validate(const FourierGrid& grid) const;
};

struct PicardDiagnostics {
    std::vector<double> iterate_distances;
    double certified_ratio = 0.0;  // worst successive-distance ratio
    double duhamel_residual = 0.0; // distance of the fixed point from one more sweep
    int iterations = 0;
    bool converged = false;
    bool overflowed = false; // an iterate crossed the overflow threshold
};

struct WindowResult {
    std::vector<PhaseState> path; // at the window node times
    PicardDiagnostics diag;
};

struct Trajectory {
    std::vector<PhaseState> states;
    std::vector<PicardDiagnostics> windows;
    RunStatus status = RunStatus::completed;
    double end_time = 0.0;
    std::string message;
};

// F(u) = |u|^{p-1} u on the padded physical grid, truncated back
SpectralField nonlinearity(const SpectralField& u, double p, int phys_m = 0);

/// Picard iteration for the Duhamel fixed point
///   v = V(t)(v0, v1) -+ int_0^t S(t-t') F(v + f)(t') dt'
/// on the window node grid t_i = t0 + i*h. `forcing` holds f at the node
/// times (size = node count); the iteration starts from the linear evolution
/// and certifies the contraction through successive iterate distances in the
/// discrete C_T H^sigma + L^q_T L^r norm.
WindowResult picard_window(const PhaseState& initial,
                           std::span<const SpectralField> forcing, double h,
                           const SolverConfig& cfg);

// one exponential-integrator step (exact linear flow + two-stage quadrature
// of the Duhamel term); f0 and f1 are the forcing at t and t+h
PhaseState step_etd(const PhaseState& state, double h, const SpectralField& f0,
                    const SpectralField& f1, const SolverConfig& cfg);

/// Forcing sampled at node times; implementations: exact noise path, the
/// randomized linear evolution, or zero.
class ForcingSource {
public:
    virtual ~ForcingSource() = default;
    virtual SpectralField at_time(double t) = 0;
    // whether the source can be re-sampled at arbitrary times; a causal noise
    // path cannot, so window refinement keeps its node step fixed
    virtual bool refinable() const { return true; }
};

class ZeroForcing : public ForcingSource {
public:
    explicit ZeroForcing(GridPtr g) : grid_(std::move(g)) {}
    SpectralField at_time(double) override { return SpectralField(grid_); }

private:
    GridPtr grid_;
};

class NoiseForcing : public ForcingSource {
public:
    NoiseForcing(GridPtr g, double alpha, std::uint64_t seed)
        : state_(std::move(g), alpha, seed) {}
    // requests must be non-decreasing in t (the path is sampled causally)
    SpectralField at_time(double t) override;
    bool refinable() const override { return false; }

private:
    NoiseState state_;
};

class RandomizedForcing : public ForcingSource {
public:
    explicit RandomizedForcing(RandomizedData data) : data_(std::move(data)) {}
    SpectralField at_time(double t) override { return evaluate_z(data_, t); }

private:
    RandomizedData data_;
};

struct GlobalRunResult {
    Trajectory trajectory;
    std::vector<EnergyRecord> records;
};

/// Chain Picard windows to T_final, halving the window on contraction
/// failure (floor 2^-16). Energy records are emitted at the given cadence;
/// states are retained at record times only.
GlobalRunResult global_run(const PhaseState& initial, double t_final,
                           const SolverConfig& cfg, ForcingSource& forcing,
                           double record_cadence = 0.05);

} // namespace vnlw
