#include "vnlw/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace vnlw {

namespace {

// FFTW plan creation is not thread-safe; execution with the new-array
// interface is. Plans are cached per size and built with FFTW_UNALIGNED so
// they can run on any buffer.
class FftEngine {
public:
    static FftEngine& instance() {
        static FftEngine eng;
        return eng;
    }

    void forward(int m, cplx* data) { run(m, data, FFTW_FORWARD); }
    void backward(int m, cplx* data) { run(m, data, FFTW_BACKWARD); }

private:
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    void run(int m, cplx* data, int dir) {
        fftw_plan p;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = plans_.find(m);
            if (it == plans_.end()) {
                std::vector<cplx> scratch(static_cast<std::size_t>(m) * m);
                auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
                Plans pl;
                pl.fwd = fftw_plan_dft_2d(m, m, buf, buf, FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
                pl.bwd = fftw_plan_dft_2d(m, m, buf, buf, FFTW_BACKWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
                it = plans_.emplace(m, pl).first;
            }
            p = dir == FFTW_FORWARD ? it->second.fwd : it->second.bwd;
        }
        auto* buf = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(p, buf, buf);
    }

    std::mutex mu_;
    std::map<int, Plans> plans_;
};

} // namespace

PhysicalField to_physical(const SpectralField& f, int m) {
    const FourierGrid& g = *f.grid;
    const int n = g.n();
    if (m == 0) m = g.phys();
    if (m < n) throw std::invalid_argument("to_physical: sample grid smaller than lattice");

    PhysicalField out;
    out.m = m;
    out.samples.assign(static_cast<std::size_t>(m) * m, cplx{0.0, 0.0});
    // embed lattice coefficients at their DFT positions on the m-grid
    for (int k1 = 0; k1 < n; ++k1) {
        const int f1 = g.freq_of_index(k1);
        const int row = f1 >= 0 ? f1 : f1 + m;
        for (int k2 = 0; k2 < n; ++k2) {
            const int idx = g.flat(k1, k2);
            if (g.is_nyquist(idx)) continue;
            const int f2 = g.freq_of_index(k2);
            const int col = f2 >= 0 ? f2 : f2 + m;
            out.samples[static_cast<std::size_t>(row) * m + col] = f.coeff[idx];
        }
    }
    FftEngine::instance().backward(m, out.samples.data());
    return out;
}

SpectralField from_physical(const PhysicalField& p, const GridPtr& grid, bool hermitianize) {
    const FourierGrid& g = *grid;
    const int n = g.n();
    const int m = p.m;
    if (m < n) throw std::invalid_argument("from_physical: sample grid smaller than lattice");
    if (p.samples.size() != static_cast<std::size_t>(m) * m) {
        throw std::invalid_argument("from_physical: sample shape mismatch");
    }

    std::vector<cplx> work(p.samples);
    FftEngine::instance().forward(m, work.data());
    const double scale = 1.0 / (static_cast<double>(m) * m);

    SpectralField out(grid, false);
    for (int k1 = 0; k1 < n; ++k1) {
        const int f1 = g.freq_of_index(k1);
        const int row = f1 >= 0 ? f1 : f1 + m;
        for (int k2 = 0; k2 < n; ++k2) {
            const int idx = g.flat(k1, k2);
            if (g.is_nyquist(idx)) continue;
            const int f2 = g.freq_of_index(k2);
            const int col = f2 >= 0 ? f2 : f2 + m;
            out.coeff[idx] = scale * work[static_cast<std::size_t>(row) * m + col];
        }
    }
    if (hermitianize) enforce_hermitian(out);
    return out;
}

double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& c : f.coeff) s += std::norm(c);
    return std::sqrt(s);
}

double lr_norm(const PhysicalField& p, double r) {
    if (r < 1.0) throw std::invalid_argument("lr_norm: r must be >= 1");
    if (!std::isfinite(r)) return linf_norm(p);
    double s = 0.0;
    for (const auto& v : p.samples) s += std::pow(std::abs(v), r);
    s /= static_cast<double>(p.samples.size());
    return std::pow(s, 1.0 / r);
}

double linf_norm(const PhysicalField& p) {
    double s = 0.0;
    for (const auto& v : p.samples) s = std::max(s, std::abs(v));
    return s;
}

SpectralField power_nonlinearity(const SpectralField& u, double p, double sign) {
    PhysicalField phys = to_physical(u);
    for (auto& v : phys.samples) {
        const double x = v.real();
        if (!std::isfinite(x)) throw std::runtime_error("power_nonlinearity: non-finite samples");
        const double a = std::abs(x);
        double w = 0.0;
        if (a > 0.0) w = sign * std::pow(a, p - 1.0) * x;
        v = cplx{w, 0.0};
    }
    return from_physical(phys, u.grid, true);
}

} // namespace vnlw
