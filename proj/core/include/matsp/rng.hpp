#pragma once

#include <cstdint>
#include <vector>

namespace matsp {

// Deterministic random stream. All draws go through explicit integer
// arithmetic on a SplitMix64 generator, so identical seeds give identical
// sequences on every platform and standard library. Distribution adapters
// from <random> are deliberately avoided: their outputs are
// implementation-defined and would break byte-identical trial replay.
class RngStream {
public:
    RngStream() : RngStream(0) {}
    explicit RngStream(std::uint64_t seed) : seed_(mix(seed ^ kGolden)), state_(seed_) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, n). n must be > 0. Modulo bias is below 2^-50 for the
    // range sizes used here (populations, routes, pair lists).
    std::size_t pick_index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_real() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = pick_index(i);
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

    // Child stream whose sequence depends only on this stream's seed and the
    // tag, not on how many draws were made so far. Used to give every deme
    // and every trial its own independent stream.
    RngStream derive(std::uint64_t tag) const {
        RngStream child;
        child.seed_ = mix(seed_ ^ mix(tag + 0x632be59bd9b4e019ULL));
        child.state_ = child.seed_;
        return child;
    }
    RngStream derive(std::uint64_t tag_a, std::uint64_t tag_b) const {
        return derive(mix(tag_a) ^ (tag_b + kGolden));
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace matsp
