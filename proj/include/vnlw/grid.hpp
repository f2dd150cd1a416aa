#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace vnlw {

using cplx = std::complex<double>;

// Frequency pair on the integer lattice of the torus.
struct Mode {
    int n1 = 0;
    int n2 = 0;
};

/// Discrete torus geometry. Modes live on {-N/2, ..., N/2-1}^2 stored in DFT
/// order; the unpaired Nyquist rows (components equal to -N/2) are excluded
/// from the Hermitian pairing and always carry zero coefficients. The torus
/// measure is normalized to 1, so physical-space integrals are grid means and
/// Parseval holds coefficient-exactly.
class FourierGrid {
public:
    // pad_factor >= 1 sets the physical resolution ceil(pad_factor * N) used
    // for nonlinear products and L^r quadrature.
    FourierGrid(int modes_per_axis, double pad_factor);

    int n() const { return n_; }
    int phys() const { return phys_; }
    double pad_factor() const { return pad_factor_; }
    int size() const { return n_ * n_; }

    // DFT-order storage index <-> frequency
    int freq_of_index(int k) const { return k < n_ / 2 ? k : k - n_; }
    int index_of_freq(int f) const { return f >= 0 ? f : f + n_; }
    int flat(int k1, int k2) const { return k1 * n_ + k2; }
    int flat_of_mode(Mode m) const {
        return flat(index_of_freq(m.n1), index_of_freq(m.n2));
    }
    Mode mode_of_flat(int idx) const {
        return {freq_of_index(idx / n_), freq_of_index(idx % n_)};
    }

    bool is_nyquist(int idx) const { return nyquist_[idx] != 0; }

    // mode multiplier tables
    double d(int idx) const { return d_[idx]; }       // |n|
    double jb(int idx) const { return jb_[idx]; }     // <n> = sqrt(1+|n|^2)
    double jbb(int idx) const { return jbb_[idx]; }   // <<n>> = sqrt(1+(3/4)|n|^2)
    int block(int idx) const { return block_[idx]; }  // dyadic annulus index
    int num_blocks() const { return num_blocks_; }

    const std::vector<double>& d_table() const { return d_; }
    const std::vector<double>& jb_table() const { return jb_; }
    const std::vector<double>& jbb_table() const { return jbb_; }

    bool same_as(const FourierGrid& other) const {
        return n_ == other.n_ && phys_ == other.phys_;
    }

private:
    int n_;
    int phys_;
    double pad_factor_;
    int num_blocks_;
    std::vector<double> d_, jb_, jbb_;
    std::vector<int> block_;
    std::vector<unsigned char> nyquist_;
};

using GridPtr = std::shared_ptr<const FourierGrid>;

GridPtr make_grid(int modes_per_axis, double pad_factor = 1.5);

/// Complex Fourier coefficients of a field on the torus, in the grid's DFT
/// storage order. `hermitian` marks fields that represent real data.
struct SpectralField {
    GridPtr grid;
    std::vector<cplx> coeff;
    bool hermitian = true;

    SpectralField() = default;
    explicit SpectralField(GridPtr g, bool herm = true)
        : grid(std::move(g)), coeff(grid->size(), cplx{0.0, 0.0}), hermitian(herm) {}

    cplx& at(Mode m) { return coeff[grid->flat_of_mode(m)]; }
    cplx at(Mode m) const { return coeff[grid->flat_of_mode(m)]; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// Force the exact Hermitian symmetry: coeff(-n) = conj(coeff(n)), real zero
// mode, zeroed Nyquist rows.
void enforce_hermitian(SpectralField& f);

// Largest deviation |coeff(-n) - conj(coeff(n))| over the lattice.
double hermitian_defect(const SpectralField& f);

} // namespace vnlw
