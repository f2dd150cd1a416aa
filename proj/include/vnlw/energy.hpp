#pragma once

#include "vnlw/propagator.hpp"

#include <span>
#include <vector>

namespace vnlw {

/// E(v) = (1/2) int (v^2 + |grad v|^2 + (dt v)^2) + 1/(p+1) int |v|^{p+1},
/// with the potential term evaluated by padded physical quadrature.
struct EnergyRecord {
    double t = 0.0;
    double total = 0.0;
    double quadratic = 0.0;
    double potential = 0.0;
    double h1 = 0.0; // H^1 x L^2 norm of the pair
};

EnergyRecord energy(const PhaseState& state, double p);

/// Affine fit of log(1 + E(t)). A run satisfies the exponential growth form
/// when max_pos_dev (largest excess of log(1+E) above the fit) is < 0.5.
struct GrowthFit {
    double c1 = 0.0;          // intercept
    double c2 = 0.0;          // slope
    double max_pos_dev = 0.0;
    double rms = 0.0;
};

GrowthFit growth_fit(std::span<const EnergyRecord> records);

// min(1/2, 2/(p-1) - 1/2): the forcing-regularity ceiling for pathwise
// global well-posedness at nonlinearity degree p
double gwp_alpha_bound(double p);

} // namespace vnlw
