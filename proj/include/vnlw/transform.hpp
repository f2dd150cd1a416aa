#pragma once

#include "vnlw/grid.hpp"

#include <vector>

namespace vnlw {

/// Physical samples of a field on the M x M collocation grid x_k = 2*pi*k/M,
/// row-major. Under the measure-1 convention a grid mean is the integral.
struct PhysicalField {
    int m = 0;
    std::vector<cplx> samples;
};

// coefficients -> samples on an M x M grid (M >= grid->n()), by zero-padded
// inverse DFT. M defaults to the grid's padded physical size.
PhysicalField to_physical(const SpectralField& f, int m = 0);

// samples -> coefficients. The sample grid must have m >= n; frequencies
// outside the lattice are discarded, Nyquist rows are zeroed. When
// `hermitianize` is set the output is projected onto exact Hermitian symmetry
// (appropriate for real-valued sample data).
SpectralField from_physical(const PhysicalField& p, const GridPtr& grid,
                            bool hermitianize = true);

// ell^2 norm of the coefficients; equals the physical L^2 norm (Parseval).
double l2_norm(const SpectralField& f);

// mean of |samples|^r over the collocation grid, to the power 1/r
double lr_norm(const PhysicalField& p, double r);
double linf_norm(const PhysicalField& p);

// Dealiased pointwise power: |u|^{p-1} u evaluated on the padded
// physical grid, truncated back to the lattice. `sign` multiplies the output.
SpectralField power_nonlinearity(const SpectralField& u, double p, double sign = 1.0);

} // namespace vnlw
