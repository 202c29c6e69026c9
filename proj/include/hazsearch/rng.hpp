#pragma once

#include <array>
#include <cstdint>

namespace hazsearch {

/// SplitMix64 mixing step; the basis for all seed derivation in the project.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent stream seed from a parent seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Small counter-based generator: output i depends only on (seed, i), so
/// any draw sequence replays identically regardless of thread scheduling.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t next_u64() { return mix64(seed_ ^ mix64(counter_++)); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    /// Uniform integer in [0, n).
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next_u64() % n);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Radical-inverse (van der Corput) in the given base.
inline double radical_inverse(std::uint32_t base, std::uint64_t i) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

/// 4D Halton sequence with a seeded Cranley-Patterson rotation. Deterministic
/// for a given seed; successive points fill the unit hypercube evenly.
class Halton4 {
public:
    explicit Halton4(std::uint64_t seed = 0) {
        CounterRng rng(derive_seed(seed, 0x4a4c544eULL));
        for (double& s : shift_) s = rng.next_double();
    }

    std::array<double, 4> next() {
        ++index_;
        static constexpr std::uint32_t bases[4] = {2, 3, 5, 7};
        std::array<double, 4> u;
        for (int d = 0; d < 4; ++d) {
            const double v = radical_inverse(bases[d], index_) + shift_[d];
            u[d] = v >= 1.0 ? v - 1.0 : v;
        }
        return u;
    }

private:
    std::array<double, 4> shift_{};
    std::uint64_t index_ = 0;
};

}  // namespace hazsearch
