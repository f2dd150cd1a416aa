#pragma once

#include "vnlw/grid.hpp"
#include "vnlw/noise.hpp"
#include "vnlw/randomize.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace vnlw {

/// Closed-form exponent arithmetic. All values are exact expressions of
/// (p, delta, s); the Strichartz triple (q, r, sigma) is constructed so that
/// the homogeneous scaling residual cancels to exactly zero in floating
/// point.
struct CriticalExponents {
    double s_crit = 0.0;   // max(1 - 2/(p-1), 0)
    double sigma = 0.0;    // case-split working regularity
    double beta_p = 0.0;   // ceil((p-3)/2)
    double s_p = 0.0;      // (p-3)/(p-1)
    double gamma = 0.0;    // 2/(p+delta) + 2s
    bool gamma_valid = false; // s inside (-1/p, 1]
    double q = 0.0, r = 0.0;              // homogeneous Strichartz pair
    bool dual_valid = false;              // s_crit < s < 1
    double q_sub = 0.0, r_sub = 0.0;      // subcritical pair
    double q_dual = 0.0, r_dual = 0.0;    // its inhomogeneous dual
};

CriticalExponents critical_exponents(double p, double delta, double s);

enum class PairKind { homogeneous, inhomogeneous_dual };

struct PairCheck {
    bool pass = false;
    bool in_range = false;
    double residual = 0.0;
};

// scaling residual (1/q + 2/r) - (1 - s) for the homogeneous kind, or
// (1/q + 2/r) - (3 - s) for the inhomogeneous dual; range constraints
// per the respective lemma
PairCheck admissible_pair_check(double q, double r, double s, PairKind kind);

/// log-log regression of E|Psi_hat(t,n)|^2 against <n> over a frequency
/// band. samples = 0 runs in oracle mode (quadrature covariances, no
/// sampling); otherwise Monte Carlo with at least 500 samples.
struct VarianceFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    int bins_used = 0;
    bool oracle_mode = false;
    std::vector<std::pair<double, double>> points; // (log <n>, log E|psi|^2)
};

VarianceFit fit_variance_exponent(const GridPtr& grid, double alpha, double t,
                                  double n_lo, double n_hi, int samples,
                                  std::uint64_t seed);

/// Empirical exceedance curve of a sampled statistic with Wilson intervals
/// and the fitted slope of log P against lambda^2.
struct TailEstimate {
    std::vector<double> lambda;
    std::vector<double> p_hat, p_lo, p_hi;
    double slope = 0.0;        // d log P / d lambda^2
    double slope_stderr = 0.0;
    int usable_points = 0;
    bool inconclusive = false;
    bool gaussian_consistent = false; // log P decreasing in lambda^2
    int samples = 0;
};

TailEstimate tail_estimate(const std::function<double(int)>& statistic, int samples,
                           std::span<const double> lambda_grid = {});

/// Homogeneous Strichartz ratio sweep across grids: max over random trials
/// of ||V(t)(u0,u1)||_{L^q_T L^r} / ||(u0,u1)||_{H^s}.
struct StrichartzReport {
    double q = 0.0, r = 0.0, s = 0.0, T = 1.0;
    std::vector<int> grids;
    std::vector<double> max_ratio;
    double spread = 0.0; // (max - min) / min of the per-grid max ratios
    bool pass = false;   // spread < 20%
};

StrichartzReport strichartz_ratio(double q, double r, double s, double T, int trials,
                                  std::span<const int> grids, std::uint64_t seed);

// inhomogeneous mode: Duhamel output in L^q_T L^r against the source in
// L^{q_dual}_T L^{r_dual}, random space-time sources on a node grid
StrichartzReport strichartz_ratio_inhomogeneous(double q, double r, double s,
                                                double q_dual, double r_dual,
                                                double T, int trials,
                                                std::span<const int> grids,
                                                std::uint64_t seed);

/// Fitted log-log slope of the max ratio over a dyadic t-sweep against the
/// claimed kernel-smoothing exponent (Poisson kernel or Duhamel kernel).
struct ExponentSweep {
    double slope = 0.0;
    double bound_exponent = 0.0;
    bool pass = false; // slope >= bound_exponent - 0.1
    std::vector<std::pair<double, double>> points; // (log t, log max-ratio)
};

// ||S(t) phi||_{L^q} / ||phi||_{L^p} over t in [2^-8, 1]; bound t^{1-d(1/p-1/q)}
ExponentSweep sest_sweep(const GridPtr& grid, double p, double q, int trials,
                         std::uint64_t seed);

// ||D^beta P(t) phi||_{L^q} / ||phi||_{L^p}; bound t^{-beta-d(1/p-1/q)}
ExponentSweep schauder_sweep(const GridPtr& grid, double beta, double p, double q,
                             int trials, std::uint64_t seed);

/// Khintchine-type probe: empirical L^p(Omega) norm of sum g_n c_n against
/// sqrt(p) ||c||_{l^2} over several moments and coefficient vectors.
struct KhintchineReport {
    double worst_constant = 0.0;
    bool pass = false; // single constant below the cap across all probes
};

KhintchineReport khintchine_probe(Dist dist, int samples, int vectors,
                                  std::span<const double> moments,
                                  std::uint64_t seed);

/// One-step vs k-step marginal consistency of the exact sampler against the
/// quadrature covariance oracle, plus a KS test of Re Psi_hat against the
/// oracle normal law.
struct SamplerConsistency {
    int checks = 0;
    int se_failures = 0;    // |empirical - oracle| > 3 standard errors
    int ks_rejections = 0;  // KS statistic above the 1% critical value
    double worst_se = 0.0;
    double worst_ks = 0.0;
    bool pass = false;
};

SamplerConsistency sampler_consistency(std::span<const Mode> modes,
                                       std::span<const double> times, double alpha,
                                       int samples, int substeps,
                                       std::uint64_t seed);

// ordinary least squares y = a + b x; returns (b, stderr of b)
std::pair<double, double> ols_slope(std::span<const double> x,
                                    std::span<const double> y);

} // namespace vnlw
