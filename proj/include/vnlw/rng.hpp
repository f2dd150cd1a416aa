#pragma once

#include <cmath>
#include <cstdint>

namespace vnlw {

// Counter-based random stream: every draw is a pure function of
// (seed, key, step, counter), so Monte Carlo workers can be sharded
// arbitrarily without changing the results.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t key, std::uint64_t step = 0)
        : base_(mix(mix(mix(0x9e3779b97f4a7c15ull ^ seed) + key) + step)), ctr_(0) {}

    std::uint64_t next_u64() { return mix(base_ + 0x632be59bd9b4e019ull * (++ctr_)); }

    // uniform in (0,1); never returns 0 so log()/Box-Muller stay finite
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t base_;
    std::uint64_t ctr_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace vnlw
