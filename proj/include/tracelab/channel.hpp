#pragma once
// Deletion-channel sampling and exact trace probability mass functions.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tracelab/bigint.hpp"
#include "tracelab/binomial.hpp"
#include "tracelab/bitstring.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

struct ChannelSpec {
    double q = 0.5;        // deletion probability
    std::uint64_t seed = 0;
};

enum class PairSide { x, y };

// Each bit survives independently with probability 1-q. The result is a pure
// function of (spec.seed, stream_id); bit i consumes draw i of the stream.
BitString sample_trace(const BitString& x, const ChannelSpec& spec, std::uint64_t stream_id);

// f(w; x_n) resp. f(w; y_n) in O(|w|) binomial evaluations: the count of
// embeddings avoiding the defect 1 is C(2k+1+f_c(w), |w|) (the string left
// after deleting it is (01)^{2k+1}), plus one term per position j with
// w_j = 1 pairing the prefix into (01)^k and the suffix into (01)^{k+1}
// (roles swapped for the y variant). An optional PascalTable serves the
// binomial lookups in hot loops.
Bigint padded_subseq_count(const PaddedPair& pair, const BitString& w, PairSide side,
                           const PascalTable* table = nullptr);

// Same casework but with the avoid-term C(2k+f_c(w), |w|). Kept only so tests
// can demonstrate this variant disagrees with the oracle.
Bigint padded_subseq_count_printed_variant(const PaddedPair& pair, const BitString& w, PairSide side);

// ln f(w; side of pair), computed by log-sum-exp over the closed-form terms;
// table.max_n() must cover pair.n. Used by the large-n Monte Carlo paths.
double log_padded_subseq_count(const PaddedPair& pair, const BitString& w, PairSide side,
                               const BinomialTable& table);

// mu_x(w) = (1-q)^{|w|} q^{n-|w|} f(w; x); 0 when |w| > |x| or f = 0.
double trace_pmf(const BitString& x, const BitString& w, double q);
double trace_pmf(const PaddedPair& pair, PairSide side, const BitString& w, double q);

// Natural log of the pmf; -inf when the pmf is 0. Safe for |x| >> 10^3 where
// the linear value underflows.
double log_trace_pmf(const BitString& x, const BitString& w, double q);

// Exact rational pmf for small-n fixtures (q given as a rational).
Rational trace_pmf_exact(const BitString& x, const BitString& w, const Rational& q);

// E[f(w; trace of x)] = f(w; x)·(1-q)^{|w|}: each of the f(w;x) occurrences
// survives intact with probability (1-q)^{|w|}.
double expected_subseq_count(const BitString& x, const BitString& w, double q);

// One ASCII bit-string per line after a `# x=<string> q=<float> seed=<int>` header.
void write_trace_dump(std::ostream& out, const BitString& x, const ChannelSpec& spec,
                      const std::vector<BitString>& traces);

}  // namespace tracelab
