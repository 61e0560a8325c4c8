// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic xoshiro256++ streams. A (seed, stream) pair fully fixes the
// byte sequence, so runs are reproducible across platforms; substreams let
// one logical run split work without overlapping draws.

#include <cmath>
#include <cstdint>

namespace grou {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        // mix the stream id into the seeding chain so distinct streams
        // start from unrelated states
        std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        for (auto& w : state_) w = detail::splitmix64(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    // uniform on [0, 1), 53 significant bits
    double u01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1): rejects exact zeros (probability 2^-53 per draw)
    double u01_pos() {
        for (;;) {
            const double u = u01();
            if (u > 0.0) return u;
        }
    }

    // uniform on [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // standard normal via Box-Muller, pair-cached
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(u01_pos()));
        const double a = 6.283185307179586 * u01();
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Exp(1)
    double exponential() { return -std::log(u01_pos()); }

  private:
    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace grou
