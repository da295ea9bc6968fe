#pragma once

#include <cstdint>

namespace multicover {

// Counter-based generator: every draw is a pure function of (seed, stream, counter).
// Randomized routines take one draw per addressable decision (e.g. one per
// (trial, range id) in sampling), so reruns are bit-identical and coupled
// experiments that vary only a threshold share their underlying uniforms.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0x6a09e667f3bcc909ull))) {}

    explicit CounterRng(std::uint64_t seed) : CounterRng(seed, 0) {}

    // Independent child stream; derivation is order-free (pure in the salt).
    CounterRng derive(std::uint64_t salt) const { return CounterRng(state_, salt + 0x3c6ef372fe94f82bull); }

    std::uint64_t bits_at(std::uint64_t counter) const { return mix(state_ ^ mix(counter + 0xbb67ae8584caa73bull)); }

    // Uniform in [0,1) with 53 random bits.
    double uniform_at(std::uint64_t counter) const {
        return static_cast<double>(bits_at(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), n >= 1. Rejection-free multiply-shift; the bias
    // (< 2^-64 * n) is irrelevant at the scales used here and keeps draws at one
    // counter each.
    std::uint64_t index_at(std::uint64_t counter, std::uint64_t n) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(bits_at(counter)) * static_cast<unsigned __int128>(n)) >> 64);
    }

    // Sequential interface for generator-style consumers.
    std::uint64_t next_bits() { return bits_at(counter_++); }
    double next_uniform() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }
    std::uint64_t next_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_bits()) * static_cast<unsigned __int128>(n)) >> 64);
    }
    // Uniform integer in [lo, hi] inclusive.
    long long next_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

  private:
    // splitmix64 finalizer; full-avalanche, frozen bit-for-bit.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

}  // namespace multicover
