#pragma once

#include "vnlw/grid.hpp"
#include "vnlw/propagator.hpp"

#include <cstdint>

namespace vnlw {

enum class Dist { gaussian, bernoulli, uniform_compact };

/// Randomized initial data: the base coefficients multiplied mode-wise by
/// independent mean-zero unit-variance multipliers g_{n,j} with Hermitian
/// symmetry (g at -n is the conjugate, g at 0 real). Independence runs over
/// the half lattice (Z+ x {0}) u (Z x Z+). E|g|^2 = 1 for every supported
/// distribution, so randomization preserves Sobolev norms in mean square.
struct RandomizedData {
    SpectralField u0, u1;           // realized pair
    SpectralField g0, g1;           // realized multipliers
    Dist dist = Dist::gaussian;
    std::uint64_t seed = 0;
};

RandomizedData randomize_data(const SpectralField& u0, const SpectralField& u1,
                              Dist dist, std::uint64_t seed);

// z(t) = V(t)(u0^w, u1^w); with derivative_weighted, the weighted derivative
// <D>^{-1} dt z instead
SpectralField evaluate_z(const RandomizedData& data, double t,
                         bool derivative_weighted = false);

// both components of the linear evolution at once
PhaseState evaluate_z_pair(const RandomizedData& data, double t);

/// Fixture: a random pair (u0, u1) in H^s x H^{s-1} and (marginally) in no
/// better class, via coefficient decay <n>^{-1-s-eps} g_n (and one order
/// less for u1). amplitude rescales u0 to the given H^s norm.
struct SobolevPair {
    SpectralField u0, u1;
};

SobolevPair sobolev_pair_fixture(const GridPtr& grid, double s_target, double eps,
                                 double amplitude, std::uint64_t seed);

// low-frequency profile (gaussian spectral bump of the given scale) used by
// the probabilistic Strichartz experiments
SobolevPair bump_pair_fixture(const GridPtr& grid, double scale, double amplitude,
                              std::uint64_t seed);

} // namespace vnlw
