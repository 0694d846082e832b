#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace hkc {

// Deterministic seeding and random streams. Everything here is fixed-width
// integer arithmetic so that a (seed, derivation path) pair produces the same
// stream on every platform; std::* distributions are implementation-defined
// and must not be used anywhere in the library.

namespace detail {
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}
}  // namespace detail

// A seed plus a derivation path. Child streams are labeled by purpose so the
// randomness used for, say, a host graph is independent of the randomness
// used for its planting.
struct Seed {
    uint64_t key = 0;

    Seed derive(std::string_view label) const {
        uint64_t s = key ^ detail::fnv1a(label);
        return Seed{detail::splitmix64(s)};
    }
    Seed derive(uint64_t index) const {
        uint64_t s = key ^ (0x9e3779b97f4a7c15ull + index * 0xda942042e4dd58b5ull);
        return Seed{detail::splitmix64(s)};
    }
};

// xoshiro256** stream seeded via splitmix64.
class Rng {
public:
    explicit Rng(Seed seed) {
        uint64_t s = seed.key;
        for (auto& w : s_) w = detail::splitmix64(s);
    }

    uint64_t next_u64() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) via Lemire's method.
    uint64_t next_below(uint64_t bound) {
        unsigned __int128 m = (unsigned __int128)next_u64() * bound;
        uint64_t lo = (uint64_t)m;
        if (lo < bound) {
            uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = (unsigned __int128)next_u64() * bound;
                lo = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = next_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace hkc
