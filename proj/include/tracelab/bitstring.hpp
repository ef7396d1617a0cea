#pragma once
// Packed binary strings and the subsequence-count oracle.
//
// Index convention: the public helpers bit1()/slice1() are 1-based to match
// the combinatorial formulas; internal storage is 0-based. Slicing is total:
// out-of-range indices clamp, and a > b yields the empty string.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracelab/bigint.hpp"

namespace tracelab {

class BitString {
  public:
    BitString() = default;

    // Parses an ASCII "0"/"1" string; throws std::invalid_argument otherwise.
    explicit BitString(std::string_view ascii);

    // Length `length` with bit i = (value >> i) & 1; length <= 64.
    static BitString from_value(std::uint64_t value, int length);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    int bit(std::size_t i) const {  // 0-based
        return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1u);
    }
    int bit1(std::size_t i) const { return bit(i - 1); }  // 1-based

    void push_back(int b);
    void clear() {
        words_.clear();
        len_ = 0;
    }

    // w_{a,b}, 1-based inclusive; clamped, empty when a > b.
    BitString slice1(long a, long b) const;

    std::string str() const;

    std::size_t count_ones() const;

    bool operator==(const BitString& o) const { return len_ == o.len_ && words_ == o.words_; }
    bool operator!=(const BitString& o) const { return !(*this == o); }
    bool operator<(const BitString& o) const;  // by length, then lexicographic

  private:
    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

// f_c(w): number of positions i with w_i = 0 and w_{i+1} = 1.
long contiguous_01_count(const BitString& w);

// f(w; z): strictly increasing index tuples embedding w into z.
// Dynamic programming, O(|w|·|z|) big-integer additions; f(eps; z) = 1.
Bigint subsequence_count_oracle(const BitString& w, const BitString& z);

// Same DP in 64-bit arithmetic. Counts are bounded by C(|z|, |w|), so this is
// overflow-safe for |z| <= 64; used by the brute-force distance kernels.
std::uint64_t subseq_count_u64(const BitString& w, const BitString& z);

long hamming_distance(const BitString& x, const BitString& y);

// The string pair (01)^k 1 (01)^{k+1} / (01)^{k+1} 1 (01)^k of length 4k+3.
struct PaddedPair {
    long k = 0;
    long n = 0;
    BitString x;
    BitString y;
};

PaddedPair make_padded_pair(long k);  // k >= 1

// A pair agreeing on a prefix and suffix and differing everywhere between.
struct EadPair {
    BitString x;
    BitString y;
    long k1 = 0;  // agreement holds at all indices <= k1 and >= k2 (1-based)
    long k2 = 0;
};

struct EadWitness {
    long k1 = 0;
    long k2 = 0;
};

// Maximal k1 / minimal k2 witnessing the definition; nullopt when the strings
// are equal or some interior index agrees. Lengths must match.
std::optional<EadWitness> is_ead_pair(const BitString& x, const BitString& y);

// Builds x = prefix·middle·suffix and y = prefix·(~middle)·suffix.
EadPair make_ead_pair(const BitString& prefix, const BitString& x_middle, const BitString& suffix);

}  // namespace tracelab
