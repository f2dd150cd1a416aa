#include "vnlw/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vnlw {

SpectralField bracket_weight(const SpectralField& f, double s) {
    SpectralField out = f;
    const auto& jb = f.grid->jb_table();
    for (std::size_t i = 0; i < out.coeff.size(); ++i) {
        out.coeff[i] *= std::pow(jb[i], s);
    }
    return out;
}

namespace {

void check_finite(const SpectralField& f) {
    for (const auto& c : f.coeff) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("norm: non-finite coefficients");
        }
    }
}

// block L^p norms of <D>^s-weighted field; p=2 is evaluated spectrally
// (exact), other p by padded physical quadrature
std::vector<double> block_lp_norms(const SpectralField& f, double s, double p) {
    const FourierGrid& g = *f.grid;
    const int nb = g.num_blocks();
    std::vector<double> out(nb, 0.0);
    SpectralField w = (s == 0.0) ? f : bracket_weight(f, s);
    if (p == 2.0) {
        for (int i = 0; i < g.size(); ++i) {
            out[g.block(i)] += std::norm(w.coeff[i]);
        }
        for (auto& v : out) v = std::sqrt(v);
    } else {
        for (int j = 0; j < nb; ++j) {
            SpectralField blk = lp_block(w, j);
            out[j] = lr_norm(to_physical(blk), p);
        }
    }
    return out;
}

} // namespace

double norm(const SpectralField& f, const Space& space) {
    check_finite(f);
    switch (space.kind) {
        case Space::Kind::Hs: {
            const auto& jb = f.grid->jb_table();
            double s2 = 0.0;
            for (std::size_t i = 0; i < f.coeff.size(); ++i) {
                s2 += std::pow(jb[i], 2.0 * space.s) * std::norm(f.coeff[i]);
            }
            return std::sqrt(s2);
        }
        case Space::Kind::Lr: {
            if (space.r < 1.0) throw std::invalid_argument("norm: L^r needs r >= 1");
            return lr_norm(to_physical(f), space.r);
        }
        case Space::Kind::Wsr: {
            if (space.r < 1.0) throw std::invalid_argument("norm: W^{s,r} needs r >= 1");
            if (space.r == 2.0) return norm(f, Space::H(space.s));
            return lr_norm(to_physical(bracket_weight(f, space.s)), space.r);
        }
        case Space::Kind::Besov: {
            if (space.r < 1.0 || space.q < 1.0) {
                throw std::invalid_argument("norm: Besov needs p, q >= 1");
            }
            // weighted-block convention: the <D>^s weight sits inside the
            // block L^p norm, so B^s_{2,2} coincides with H^s exactly
            std::vector<double> bn = block_lp_norms(f, space.s, space.r);
            if (!std::isfinite(space.q)) {
                double m = 0.0;
                for (double v : bn) m = std::max(m, v);
                return m;
            }
            double acc = 0.0;
            for (double v : bn) acc += std::pow(v, space.q);
            return std::pow(acc, 1.0 / space.q);
        }
    }
    return 0.0;
}

double pair_norm(const SpectralField& u0, const SpectralField& u1, double s) {
    const double a = norm(u0, Space::H(s));
    const double b = norm(u1, Space::H(s - 1.0));
    return std::sqrt(a * a + b * b);
}

SpectralField lp_block(const SpectralField& f, int j) {
    if (j < 0) throw std::invalid_argument("lp_block: j must be >= 0");
    SpectralField out(f.grid, f.hermitian);
    if (j >= f.grid->num_blocks()) return out;
    for (int i = 0; i < f.grid->size(); ++i) {
        if (f.grid->block(i) == j) out.coeff[i] = f.coeff[i];
    }
    return out;
}

std::array<SpectralField, 3> paraproduct_split(const SpectralField& u,
                                               const SpectralField& v) {
    const FourierGrid& g = *u.grid;
    if (!g.same_as(*v.grid)) throw std::invalid_argument("paraproduct_split: grid mismatch");
    const int nb = g.num_blocks();
    const int m = g.phys();
    const std::size_t msz = static_cast<std::size_t>(m) * m;

    std::vector<std::vector<cplx>> ub(nb), vb(nb);
    for (int j = 0; j < nb; ++j) {
        ub[j] = to_physical(lp_block(u, j), m).samples;
        vb[j] = to_physical(lp_block(v, j), m).samples;
    }
    // cumulative low-pass sums C_k = sum_{j<=k} block_j
    auto cumulate = [&](const std::vector<std::vector<cplx>>& b) {
        std::vector<std::vector<cplx>> c(nb);
        std::vector<cplx> acc(msz, cplx{0.0, 0.0});
        for (int j = 0; j < nb; ++j) {
            for (std::size_t i = 0; i < msz; ++i) acc[i] += b[j][i];
            c[j] = acc;
        }
        return c;
    };
    std::vector<std::vector<cplx>> cu = cumulate(ub);
    std::vector<std::vector<cplx>> cv = cumulate(vb);

    PhysicalField lo{m, std::vector<cplx>(msz, cplx{0.0, 0.0})};
    PhysicalField hi{m, std::vector<cplx>(msz, cplx{0.0, 0.0})};
    PhysicalField res{m, std::vector<cplx>(msz, cplx{0.0, 0.0})};
    for (int k = 0; k < nb; ++k) {
        if (k >= 3) {
            const auto& low_u = cu[k - 3];
            for (std::size_t i = 0; i < msz; ++i) lo.samples[i] += low_u[i] * vb[k][i];
            const auto& low_v = cv[k - 3];
            for (std::size_t i = 0; i < msz; ++i) hi.samples[i] += low_v[i] * ub[k][i];
        }
        for (int j = std::max(0, k - 2); j < std::min(nb, k + 3); ++j) {
            for (std::size_t i = 0; i < msz; ++i) res.samples[i] += ub[j][i] * vb[k][i];
        }
    }
    const bool herm = u.hermitian && v.hermitian;
    return {from_physical(lo, u.grid, herm), from_physical(res, u.grid, herm),
            from_physical(hi, u.grid, herm)};
}

} // namespace vnlw
