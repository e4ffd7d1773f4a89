#pragma once

#include <cstdint>

namespace dss {

// Deterministic generator (splitmix64). Cross-platform reproducibility matters
// more than statistical strength here: every randomized code path must replay
// byte-identically from a seed, which std::uniform_int_distribution does not
// guarantee across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; exact, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound) - 1;
        std::uint64_t x;
        do {
            x = next();
        } while (x > limit);
        return x % bound;
    }

    // Derive an independent stream, e.g. one per Monte-Carlo trial.
    Rng fork(std::uint64_t stream) {
        Rng child(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

} // namespace dss
