#include "vnlw/energy.hpp"

#include "vnlw/norms.hpp"
#include "vnlw/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace vnlw {

EnergyRecord energy(const PhaseState& state, double p) {
    const FourierGrid& g = *state.v.grid;
    EnergyRecord rec;
    rec.t = state.t;
    double quad = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double d2 = g.d(i) * g.d(i);
        quad += (1.0 + d2) * std::norm(state.v.coeff[i]) + std::norm(state.vt.coeff[i]);
    }
    rec.quadratic = 0.5 * quad;

    const PhysicalField phys = to_physical(state.v);
    double pot = 0.0;
    for (const auto& s : phys.samples) {
        const double x = s.real();
        if (!std::isfinite(x)) throw std::invalid_argument("energy: non-finite state");
        pot += std::pow(std::abs(x), p + 1.0);
    }
    pot /= static_cast<double>(phys.samples.size());
    rec.potential = pot / (p + 1.0);

    rec.total = rec.quadratic + rec.potential;
    rec.h1 = pair_norm(state.v, state.vt, 1.0);
    return rec;
}

GrowthFit growth_fit(std::span<const EnergyRecord> records) {
    if (records.size() < 10) throw std::invalid_argument("growth_fit: need >= 10 records");
    const std::size_t m = records.size();
    double tbar = 0.0, ybar = 0.0;
    for (const auto& r : records) {
        tbar += r.t;
        ybar += std::log1p(r.total);
    }
    tbar /= m;
    ybar /= m;
    double stt = 0.0, sty = 0.0;
    for (const auto& r : records) {
        const double dt = r.t - tbar;
        stt += dt * dt;
        sty += dt * (std::log1p(r.total) - ybar);
    }
    if (stt <= 0.0) throw std::invalid_argument("growth_fit: degenerate time grid");
    GrowthFit fit;
    fit.c2 = sty / stt;
    fit.c1 = ybar - fit.c2 * tbar;
    double ss = 0.0;
    for (const auto& r : records) {
        const double dev = std::log1p(r.total) - (fit.c1 + fit.c2 * r.t);
        fit.max_pos_dev = std::max(fit.max_pos_dev, dev);
        ss += dev * dev;
    }
    fit.rms = std::sqrt(ss / m);
    return fit;
}

double gwp_alpha_bound(double p) {
    if (p <= 1.0) throw std::invalid_argument("gwp_alpha_bound: p must be > 1");
    return std::min(0.5, 2.0 / (p - 1.0) - 0.5);
}

} // namespace vnlw
