// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lily {

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit seed forms the key; the replicate index and a stream index
/// occupy the upper counter words, so every (seed, replicate, stream)
/// triple owns an independent sequence that can be generated in any order.
class Philox {
  public:
    using result_type = std::uint32_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox(std::uint64_t seed, std::uint32_t replicate, std::uint32_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, replicate_(replicate),
          stream_(stream)
    {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (used_ == 4) {
            out_ = bijection({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), replicate_,
                              stream_},
                             key_);
            ++block_;
            used_ = 0;
        }
        return out_[used_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform()
    {
        const std::uint64_t a = (*this)() >> 5;
        const std::uint64_t b = (*this)() >> 6;
        return static_cast<double>((a << 26) | b) * 0x1.0p-53;
    }

    /// The ten-round Philox bijection on one counter block.
    static Block bijection(Block ctr, Key key)
    {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

  private:
    Key key_;
    std::uint32_t replicate_;
    std::uint32_t stream_;
    std::uint64_t block_ = 0;
    Block out_{};
    int used_ = 4;
};

/// SplitMix64 finalizer, used to derive child seeds from a parent seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace lily
