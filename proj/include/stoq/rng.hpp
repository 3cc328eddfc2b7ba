// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rng.hpp
 * @brief Counter-based random streams.
 *
 * Every consumer derives its own stream from (seed, labels...) by hashing, so
 * results never depend on execution order. SplitMix64 is used because its
 * output is specified bit-for-bit, unlike std distributions.
 */

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace stoq {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/** Hash a seed together with integer labels. */
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
    std::uint64_t h = splitmix64_mix(seed + 0x9e3779b97f4a7c15ULL);
    for (auto l : labels) h = splitmix64_mix(h ^ splitmix64_mix(l + 0x632be59bd9b4e019ULL));
    return h;
}

/** Hash a seed with a string label (FNV-1a folded into the mixer). */
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    std::uint64_t f = 1469598103934665603ULL;
    for (unsigned char c : label) f = (f ^ c) * 1099511628211ULL;
    return derive_seed(seed, {f});
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64_mix(state_);
    }
    /** Uniform double in [0,1) with 53 random bits. */
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    /** Uniform integer with `bits` random bits (bits <= 64). */
    std::uint64_t bits(int bits) { return bits == 0 ? 0 : (*this)() >> (64 - bits); }
    /** Uniform integer in [0, bound) by rejection. */
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do { r = (*this)(); } while (r >= lim);
        return r % bound;
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return UINT64_MAX; }

private:
    std::uint64_t state_;
};

}  // namespace stoq
