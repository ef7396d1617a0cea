#pragma once
// Identity-verification sweeps shared by the CLI `verify` subcommand, the
// unit tests, and the acceptance suite. Every sweep compares a closed form
// against an independent route (enumeration, DP oracle, or brute force) and
// counts exact mismatches.

#include <cstdint>
#include <string>

namespace tracelab {

struct VerifyResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::string detail;  // first failure, for diagnostics

    bool ok() const { return failures == 0; }
};

// f(w; s_k) == C(k + f_c(w), |w|) against the DP oracle, exhaustive over
// k <= max_k and |w| <= max_wlen.
VerifyResult verify_zigzag_closed_form(long max_k, long max_wlen);

// Class counts and ending-bit refinements against exhaustive enumeration and
// the DP table, for all lengths <= max_l.
VerifyResult verify_fc_class_counts(long max_l);

// sum_C C(D,C)·C(E,F-C) == C(D+E,F) over 0 <= D,E,F <= max.
VerifyResult verify_vandermonde(long max);

// Padded-pair closed-form counts against the DP oracle: exhaustive for
// |w| <= exhaustive_wlen plus n_random random longer words per k.
VerifyResult verify_padded_closed_form(long max_k, long exhaustive_wlen, std::uint64_t n_random,
                                       std::uint64_t seed);

// The uncorrected avoid-term variant must disagree with the oracle (k = 1,
// w = "1" among others); this sweep FAILS if the variant matches everywhere.
VerifyResult verify_printed_avoid_term_fails();

// Per-profile squared-difference sums: production evaluator vs direct
// casework vs exhaustive enumeration, all profiles for k <= max_k, plus the
// 4^-n weighted-total identity against the brute-force trace sum at q = 1/2.
VerifyResult verify_pairsum(long max_k, int threads = 0);

}  // namespace tracelab
