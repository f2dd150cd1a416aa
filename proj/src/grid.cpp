#include "vnlw/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace vnlw {

FourierGrid::FourierGrid(int modes_per_axis, double pad_factor)
    : n_(modes_per_axis), pad_factor_(pad_factor) {
    if (n_ < 4 || n_ % 2 != 0) {
        throw std::invalid_argument("FourierGrid: modes_per_axis must be even and >= 4");
    }
    if (pad_factor < 1.0) {
        throw std::invalid_argument("FourierGrid: pad_factor must be >= 1");
    }
    phys_ = static_cast<int>(std::ceil(pad_factor * n_ - 1e-9));

    const int sz = n_ * n_;
    d_.resize(sz);
    jb_.resize(sz);
    jbb_.resize(sz);
    block_.resize(sz);
    nyquist_.resize(sz);
    num_blocks_ = 0;
    for (int k1 = 0; k1 < n_; ++k1) {
        for (int k2 = 0; k2 < n_; ++k2) {
            const int idx = flat(k1, k2);
            const int f1 = freq_of_index(k1);
            const int f2 = freq_of_index(k2);
            const double d2 = static_cast<double>(f1) * f1 + static_cast<double>(f2) * f2;
            d_[idx] = std::sqrt(d2);
            jb_[idx] = std::sqrt(1.0 + d2);
            jbb_[idx] = std::sqrt(1.0 + 0.75 * d2);
            nyquist_[idx] = (f1 == -n_ / 2 || f2 == -n_ / 2) ? 1 : 0;
            // sharp dyadic annuli: block 0 is |n| <= 1, block j is
            // 2^{j-1} < |n| <= 2^j
            int j = 0;
            if (d2 > 1.0 + 1e-12) {
                j = 1;
                while (static_cast<double>(1 << j) < d_[idx] - 1e-12) ++j;
            }
            block_[idx] = j;
            if (j + 1 > num_blocks_) num_blocks_ = j + 1;
        }
    }
}

GridPtr make_grid(int modes_per_axis, double pad_factor) {
    return std::make_shared<const FourierGrid>(modes_per_axis, pad_factor);
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!grid->same_as(*o.grid)) throw std::invalid_argument("field grid mismatch");
    for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
    hermitian = hermitian && o.hermitian;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!grid->same_as(*o.grid)) throw std::invalid_argument("field grid mismatch");
    for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
    hermitian = hermitian && o.hermitian;
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& c : coeff) c *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

void enforce_hermitian(SpectralField& f) {
    const FourierGrid& g = *f.grid;
    const int n = g.n();
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            const int idx = g.flat(k1, k2);
            if (g.is_nyquist(idx)) {
                f.coeff[idx] = 0.0;
                continue;
            }
            const int f1 = g.freq_of_index(k1);
            const int f2 = g.freq_of_index(k2);
            const int midx = g.flat(g.index_of_freq(-f1), g.index_of_freq(-f2));
            if (midx < idx) continue;
            if (midx == idx) {
                f.coeff[idx] = cplx{f.coeff[idx].real(), 0.0};
            } else {
                const cplx avg = 0.5 * (f.coeff[idx] + std::conj(f.coeff[midx]));
                f.coeff[idx] = avg;
                f.coeff[midx] = std::conj(avg);
            }
        }
    }
    f.hermitian = true;
}

double hermitian_defect(const SpectralField& f) {
    const FourierGrid& g = *f.grid;
    const int n = g.n();
    double worst = 0.0;
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            const int idx = g.flat(k1, k2);
            if (g.is_nyquist(idx)) {
                worst = std::max(worst, std::abs(f.coeff[idx]));
                continue;
            }
            const int f1 = g.freq_of_index(k1);
            const int f2 = g.freq_of_index(k2);
            const int midx = g.flat(g.index_of_freq(-f1), g.index_of_freq(-f2));
            worst = std::max(worst, std::abs(f.coeff[idx] - std::conj(f.coeff[midx])));
        }
    }
    return worst;
}

} // namespace vnlw
