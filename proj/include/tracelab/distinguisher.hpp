#pragma once
// Hypothesis testing over traces: likelihood-ratio classification with
// empirical sample-complexity search, power-sum signatures, minimal
// distinguishing subsequence words, the mean-count test, and the
// sign-polynomial root-multiplicity search backing the large-Hamming-distance
// distinguisher.

#include <cstdint>
#include <optional>
#include <vector>

#include "tracelab/bigint.hpp"
#include "tracelab/bitstring.hpp"
#include "tracelab/channel.hpp"

namespace tracelab {

struct LrtResult {
    PairSide decision = PairSide::x;  // x on ties (log ratio exactly 0)
    double log_likelihood_ratio = 0.0;
    std::uint64_t traces_used = 0;
};

// Sums per-trace ln(mu_x(w)/mu_y(w)); the length prefactors cancel, so each
// term is ln f(w;x) - ln f(w;y). A trace impossible under both sources, or
// contradictory infinite evidence, raises std::logic_error.
LrtResult lrt_classify(const std::vector<BitString>& traces, const BitString& x,
                       const BitString& y, double q);

struct ErrorRate {
    double rate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
};

// Runs `trials` experiments (even trials drawn from x, odd from y), each
// classifying T traces; returns the misclassification rate. Trial t's traces
// use streams ((stream_base + t) << 32) | trace_index.
ErrorRate empirical_error_rate(const BitString& x, const BitString& y, double q, std::uint64_t T,
                               std::uint64_t trials, const ChannelSpec& spec, int threads = 0,
                               std::uint64_t stream_base = 0);

// One-sided Wilson score upper bound.
double wilson_upper_bound(std::uint64_t errors, std::uint64_t trials, double z = 1.6448536269514722);

struct ComplexityStep {
    std::uint64_t T = 0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double rate = 0.0;
    double wilson_upper = 0.0;
};

struct ComplexityResult {
    bool found = false;
    std::uint64_t t_star = 0;
    std::vector<ComplexityStep> steps;
};

inline constexpr std::uint64_t kComplexityCapT = 1ull << 24;

// Doubling search for the smallest power-of-two T whose Wilson upper bound
// (95%) falls below target_delta; found = false once T would exceed 2^24.
ComplexityResult estimate_sample_complexity(const BitString& x, const BitString& y, double q,
                                            double target_delta, const ChannelSpec& spec,
                                            std::uint64_t trials = 500, int threads = 0);

struct DeckSignature {
    long n = 0;
    std::vector<Bigint> power_sums;  // entry m = sum over i with x_i = 1 of i^m
};

DeckSignature deck_signature(const BitString& x, long max_order);

// Smallest m <= max_order where the power sums of x and y differ.
std::optional<long> first_power_sum_difference(const BitString& x, const BitString& y,
                                               long max_order);

struct DistinguishingWord {
    BitString w;
    Bigint fx;
    Bigint fy;
};

// Breadth-first over lengths 1..max_len (lexicographic within a length);
// first w with f(w;x) != f(w;y), or nullopt.
std::optional<DistinguishingWord> find_min_distinguishing_word(const BitString& x,
                                                               const BitString& y, long max_len);

// Decides x iff the mean of f(w; trace) is at least as close to fx·(1-q)^|w|
// as to fy·(1-q)^|w|. Requires fx != fy.
PairSide mean_based_distinguish(const std::vector<BitString>& traces, const BitString& w,
                                const Bigint& fx, const Bigint& fy, double q);

struct PolySpec {
    std::vector<int> coefficients;  // index = degree, each entry +1 or -1
};

// Largest m with (z-1)^m dividing the polynomial; coefficients indexed by
// degree. The zero polynomial is rejected.
long root_multiplicity_at_one(const std::vector<Bigint>& coefficients);
long root_multiplicity_at_one(const PolySpec& p);

struct MultiplicityResult {
    long max_multiplicity = 0;
    PolySpec witness;
};

// Maximum multiplicity over all +-1 polynomials of the given degree (sign
// symmetry halves the search by fixing the leading coefficient to +1);
// degree <= 22.
MultiplicityResult max_multiplicity_exhaustive(long degree, int threads = 0);

}  // namespace tracelab
