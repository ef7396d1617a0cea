#pragma once
// Exact and log-space binomial machinery plus the closed-form string counts
// (zigzag subsequence counts, f_c class counts, ending-bit refinements).
//
// Binomials are total functions: out-of-range arguments give 0 so summation
// ranges can be extended freely.

#include <cstdint>
#include <utility>
#include <vector>

#include "tracelab/bigint.hpp"
#include "tracelab/bitstring.hpp"

namespace tracelab {

// Standalone exact binomial; 0 when r < 0, r > n, or n < 0.
Bigint binomial_exact(long n, long r);

// Cached factorials (exact, up to an internal storage cap) and high-precision
// log-factorials. The log side is built once with 256-bit MPFR and stored as
// long double, so exp(log_binomial) tracks the exact value to ~1e-12 relative
// even at n = 10^6.
class BinomialTable {
  public:
    explicit BinomialTable(long max_n, long exact_cap = 4096);

    long max_n() const { return max_n_; }

    const Bigint& factorial(long n) const;  // n <= exact storage cap
    Bigint binomial(long n, long r) const;  // total; falls back past the cap

    long double log_factorial(long n) const { return log_fact_[static_cast<std::size_t>(n)]; }
    // Natural log of C(n, r); -inf when the coefficient vanishes.
    long double log_binomial(long n, long r) const;

  private:
    long max_n_;
    long exact_max_;
    std::vector<Bigint> fact_;
    std::vector<long double> log_fact_;
};

// Dense Pascal triangle of exact values up to rows <= max_n; O(1) lookup for
// the hot evaluators. Memory is O(max_n^2) big integers, fine for n <= ~1000.
class PascalTable {
  public:
    explicit PascalTable(long max_n);
    long max_n() const { return max_n_; }
    const Bigint& at(long n, long r) const {  // requires 0 <= r <= n <= max_n
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
    }
    const Bigint& binomial(long n, long r) const {
        if (n < 0 || r < 0 || r > n) return zero_;
        return at(n, r);
    }

  private:
    long max_n_;
    std::vector<std::vector<Bigint>> rows_;
    Bigint zero_;
};

// f(w; s_k) for the zigzag string s_k = (01)^k: C(k + f_c(w), |w|).
Bigint zigzag_subseq_count(long k, const BitString& w);

// Number of length-l strings with f_c = a: C(l+1, 2a+1).
Bigint fc_class_count(long l, long a);

enum class LastBit { zero, one, any };

// Number of length-l strings with f_c = a ending in the given bit, via the
// closed forms T(l,a,0) = C(l, 2a+1), T(l,a,1) = C(l, 2a). The empty string
// (l = 0) counts as ending in 1, matching the junction bookkeeping of the
// pair-sum evaluator. The forms are verified against the DP table in tests.
Bigint segment_count(long l, long a, LastBit last);

// Reference DP for segment counts: T(l,a,0) = T(l-1,a,0) + T(l-1,a,1),
// T(l,a,1) = T(l-1,a-1,0) + T(l-1,a,1), T(0,0,1) = 1.
class FcClassTable {
  public:
    explicit FcClassTable(long max_l);
    long max_l() const { return max_l_; }
    const Bigint& count(long l, long a, int last) const;
    Bigint count(long l, long a, LastBit last) const;

  private:
    long max_l_;
    std::vector<Bigint> table_;  // (l, a, last) flattened
    Bigint zero_;
};

// (sum_C C(D,C)·C(E,F-C), C(D+E,F)); callers assert equality.
std::pair<Bigint, Bigint> vandermonde_check(long D, long E, long F);

}  // namespace tracelab
