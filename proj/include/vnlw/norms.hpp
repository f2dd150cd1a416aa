#pragma once

#include "vnlw/grid.hpp"
#include "vnlw/transform.hpp"

#include <array>

namespace vnlw {

/// Besov index triple (s, p, q), p and q in [1, inf].
struct BesovSpec {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
};

/// Norm selector for norm(field, space).
struct Space {
    enum class Kind { Hs, Wsr, Besov, Lr } kind = Kind::Hs;
    double s = 0.0;
    double r = 2.0; // integrability (Hs/Wsr/Lr) or Besov p
    double q = 2.0; // Besov q

    static Space H(double s) { return {Kind::Hs, s, 2.0, 2.0}; }
    static Space W(double s, double r) { return {Kind::Wsr, s, r, 2.0}; }
    static Space B(const BesovSpec& b) { return {Kind::Besov, b.s, b.p, b.q}; }
    static Space B(double s, double p, double q) { return {Kind::Besov, s, p, q}; }
    static Space L(double r) { return {Kind::Lr, 0.0, r, 2.0}; }
};

// <D>^s weight (or any per-mode real multiplier) applied in Fourier space
SpectralField bracket_weight(const SpectralField& f, double s);

double norm(const SpectralField& f, const Space& space);

// H^s x H^{s-1} norm of a pair
double pair_norm(const SpectralField& u0, const SpectralField& u1, double s);

// Littlewood-Paley restriction to the sharp dyadic annulus j. The blocks
// partition the lattice, so sum_j lp_block(u, j) reconstructs u exactly.
SpectralField lp_block(const SpectralField& f, int j);

// Bony decomposition of the dealiased product uv into (u<v, u=v, u>v):
// paraproducts sum_{j<k-2} P_j u P_k v, the resonant part |j-k|<=2, and the
// transpose. Requires both fields on the same grid with pad >= 3/2.
std::array<SpectralField, 3> paraproduct_split(const SpectralField& u,
                                               const SpectralField& v);

} // namespace vnlw
