#pragma once
// Counter-based random numbers (Philox4x32-10).
//
// Draw i of stream s is a pure function of (seed, s, i), so Monte Carlo runs
// give identical samples whether trials execute serially or in parallel.

#include <array>
#include <cstdint>

namespace tracelab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

// Sequential draws from one (seed, stream) pair.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t k = detail::splitmix64(detail::splitmix64(seed) ^ stream);
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = Philox4x32::block({static_cast<std::uint32_t>(block_),
                                      static_cast<std::uint32_t>(block_ >> 32), 0, 0},
                                     key_);
            ++block_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> buf_{};
    std::uint64_t block_ = 0;
    int pos_ = 4;
};

}  // namespace tracelab
