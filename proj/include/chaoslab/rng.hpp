#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace chaoslab {

/// Philox4x32-10 counter-based block cipher (Salmon et al., Random123).
///
/// Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits. There
/// is no internal state to advance, so any draw of any stream can be
/// produced independently of every other draw.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter apply(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Stream of uniforms identified by (master seed, trajectory, variable).
///
/// The seed is the cipher key; trajectory and variable index occupy three
/// counter words and the fourth enumerates blocks within the stream. Two
/// streams with different identities never share a counter, so they are
/// independent regardless of how many draws each consumes.
class Stream {
public:
    using result_type = std::uint64_t;

    Stream(std::uint64_t master_seed, std::uint64_t trajectory, std::uint32_t variable) noexcept
        : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
          trajectory_(trajectory), variable_(variable)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    /// 64 random bits; each cipher block yields two.
    result_type operator()() noexcept
    {
        if (half_ == 0) {
            block_ = Philox4x32::apply({block_index_++, variable_, static_cast<std::uint32_t>(trajectory_),
                                        static_cast<std::uint32_t>(trajectory_ >> 32)},
                                       key_);
            half_ = 2;
        }
        const int base = 2 * (2 - half_--);
        return (std::uint64_t{block_[base + 1]} << 32) | block_[base];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    Philox4x32::Key key_;
    std::uint64_t trajectory_;
    std::uint32_t variable_;
    std::uint32_t block_index_ = 0;
    Philox4x32::Counter block_{};
    int half_ = 0;
};

} // namespace chaoslab
