#include "tracelab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace tracelab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Deletion threshold on 32-bit uniforms; exact for q = 0, 1/2, 1.
std::uint64_t delete_threshold(double q) {
    if (q <= 0.0) return 0;
    if (q >= 1.0) return 1ull << 32;
    return static_cast<std::uint64_t>(std::llround(q * 4294967296.0));
}

// f_c of every suffix w_{i,m}, 1-based; sfc[m+1] = 0.
std::vector<long> suffix_fc(const BitString& w) {
    const long m = static_cast<long>(w.size());
    std::vector<long> sfc(static_cast<std::size_t>(m) + 2, 0);
    for (long i = m - 1; i >= 1; --i) {
        sfc[static_cast<std::size_t>(i)] =
            sfc[static_cast<std::size_t>(i) + 1] + (w.bit1(i) == 0 && w.bit1(i + 1) == 1 ? 1 : 0);
    }
    return sfc;
}

}  // namespace

BitString sample_trace(const BitString& x, const ChannelSpec& spec, std::uint64_t stream_id) {
    CounterRng rng(spec.seed, stream_id);
    const std::uint64_t threshold = delete_threshold(spec.q);
    BitString trace;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::uint64_t u = rng.next_u32();
        if (u >= threshold) trace.push_back(x.bit(i));
    }
    return trace;
}

Bigint padded_subseq_count(const PaddedPair& pair, const BitString& w, PairSide side,
                           const PascalTable* table) {
    const long m = static_cast<long>(w.size());
    const long k = pair.k;
    if (m > pair.n) return 0;
    auto binom = [table](long n, long r) -> Bigint {
        if (table != nullptr) return table->binomial(n, r);
        return binomial_exact(n, r);
    };
    const std::vector<long> sfc = suffix_fc(w);
    const long fc_total = m > 0 ? sfc[1] : 0;

    // Embeddings that avoid the defect 1.
    Bigint total = binom(2 * k + 1 + fc_total, m);

    // Embeddings using it at position j (w_j = 1): prefix into (01)^k and
    // suffix into (01)^{k+1} for the x variant; swapped for y.
    const long prefix_pad = (side == PairSide::x) ? k : k + 1;
    const long suffix_pad = (side == PairSide::x) ? k + 1 : k;
    long prefix_fc = 0;  // f_c(w_{1,j-1}), updated before each j
    for (long j = 1; j <= m; ++j) {
        if (j >= 3 && w.bit1(j - 2) == 0 && w.bit1(j - 1) == 1) ++prefix_fc;
        if (w.bit1(j) == 1) {
            total += binom(prefix_pad + prefix_fc, j - 1) *
                     binom(suffix_pad + sfc[static_cast<std::size_t>(j) + 1], m - j);
        }
    }
    return total;
}

Bigint padded_subseq_count_printed_variant(const PaddedPair& pair, const BitString& w, PairSide side) {
    Bigint corrected = padded_subseq_count(pair, w, side);
    const long m = static_cast<long>(w.size());
    const long fc_total = contiguous_01_count(w);
    return corrected - binomial_exact(2 * pair.k + 1 + fc_total, m) +
           binomial_exact(2 * pair.k + fc_total, m);
}

double log_padded_subseq_count(const PaddedPair& pair, const BitString& w, PairSide side,
                               const BinomialTable& table) {
    const long m = static_cast<long>(w.size());
    const long k = pair.k;
    if (m > pair.n) return kNegInf;
    const std::vector<long> sfc = suffix_fc(w);
    const long fc_total = m > 0 ? sfc[1] : 0;

    std::vector<long double> terms;
    terms.reserve(static_cast<std::size_t>(m) + 1);
    terms.push_back(table.log_binomial(2 * k + 1 + fc_total, m));

    const long prefix_pad = (side == PairSide::x) ? k : k + 1;
    const long suffix_pad = (side == PairSide::x) ? k + 1 : k;
    long prefix_fc = 0;  // f_c(w_{1,j-1})
    for (long j = 1; j <= m; ++j) {
        if (j >= 3 && w.bit1(j - 2) == 0 && w.bit1(j - 1) == 1) ++prefix_fc;
        if (w.bit1(j) == 1) {
            terms.push_back(table.log_binomial(prefix_pad + prefix_fc, j - 1) +
                            table.log_binomial(suffix_pad + sfc[static_cast<std::size_t>(j) + 1], m - j));
        }
    }
    long double peak = -std::numeric_limits<long double>::infinity();
    for (long double t : terms) peak = std::max(peak, t);
    if (std::isinf(static_cast<double>(peak))) return kNegInf;
    long double acc = 0.0L;
    for (long double t : terms) acc += std::exp(t - peak);
    return static_cast<double>(peak + std::log(acc));
}

double trace_pmf(const BitString& x, const BitString& w, double q) {
    if (w.size() > x.size()) return 0.0;
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(w.size());
    Bigint f = subsequence_count_oracle(w, x);
    if (f == 0) return 0.0;
    return f.get_d() * std::pow(1.0 - q, m) * std::pow(q, n - m);
}

double trace_pmf(const PaddedPair& pair, PairSide side, const BitString& w, double q) {
    if (static_cast<long>(w.size()) > pair.n) return 0.0;
    Bigint f = padded_subseq_count(pair, w, side);
    if (f == 0) return 0.0;
    const double m = static_cast<double>(w.size());
    return f.get_d() * std::pow(1.0 - q, m) * std::pow(q, static_cast<double>(pair.n) - m);
}

double log_trace_pmf(const BitString& x, const BitString& w, double q) {
    if (w.size() > x.size()) return kNegInf;
    Bigint f = subsequence_count_oracle(w, x);
    if (f == 0) return kNegInf;
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(w.size());
    double log_prefactor = 0.0;
    if (m > 0) {
        if (q >= 1.0) return kNegInf;
        log_prefactor += m * std::log1p(-q);
    }
    if (n - m > 0) {
        if (q <= 0.0) return kNegInf;
        log_prefactor += (n - m) * std::log(q);
    }
    return bigint_log(f) + log_prefactor;
}

Rational trace_pmf_exact(const BitString& x, const BitString& w, const Rational& q) {
    if (w.size() > x.size()) return 0;
    Bigint f = subsequence_count_oracle(w, x);
    if (f == 0) return 0;
    Rational keep = 1 - q;
    Rational out(f);
    for (std::size_t i = 0; i < w.size(); ++i) out *= keep;
    for (std::size_t i = 0; i < x.size() - w.size(); ++i) out *= q;
    return out;
}

double expected_subseq_count(const BitString& x, const BitString& w, double q) {
    Bigint f = subsequence_count_oracle(w, x);
    return f.get_d() * std::pow(1.0 - q, static_cast<double>(w.size()));
}

void write_trace_dump(std::ostream& out, const BitString& x, const ChannelSpec& spec,
                      const std::vector<BitString>& traces) {
    out << "# x=" << x.str() << " q=" << spec.q << " seed=" << spec.seed << "\n";
    for (const auto& t : traces) out << t.str() << "\n";
}

}  // namespace tracelab
