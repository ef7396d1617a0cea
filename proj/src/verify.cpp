#include "tracelab/verify.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "tracelab/binomial.hpp"
#include "tracelab/bitstring.hpp"
#include "tracelab/channel.hpp"
#include "tracelab/distance.hpp"
#include "tracelab/pairsum.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

namespace {

void record_failure(VerifyResult& r, const std::string& what) {
    if (r.failures == 0) r.detail = what;
    ++r.failures;
}

}  // namespace

VerifyResult verify_zigzag_closed_form(long max_k, long max_wlen) {
    VerifyResult result{"zigzag closed form"};
    for (long k = 0; k <= max_k; ++k) {
        BitString s_k;
        for (long i = 0; i < k; ++i) {
            s_k.push_back(0);
            s_k.push_back(1);
        }
        for (long len = 0; len <= max_wlen; ++len) {
            for (std::uint64_t v = 0; v < (1ull << len); ++v) {
                BitString w = BitString::from_value(v, static_cast<int>(len));
                ++result.checks;
                if (zigzag_subseq_count(k, w) != subsequence_count_oracle(w, s_k)) {
                    std::ostringstream os;
                    os << "k=" << k << " w=" << w.str();
                    record_failure(result, os.str());
                }
            }
        }
    }
    return result;
}

VerifyResult verify_fc_class_counts(long max_l) {
    VerifyResult result{"f_c class counts"};
    FcClassTable dp(max_l);
    for (long l = 0; l <= max_l; ++l) {
        std::vector<std::array<Bigint, 2>> enumerated(static_cast<std::size_t>(l / 2 + 2));
        if (l == 0) {
            enumerated[0][1] = 1;  // empty string, ends-in-1 convention
        } else {
            for (std::uint64_t v = 0; v < (1ull << l); ++v) {
                BitString w = BitString::from_value(v, static_cast<int>(l));
                long a = contiguous_01_count(w);
                enumerated[static_cast<std::size_t>(a)][w.bit(static_cast<std::size_t>(l - 1))] += 1;
            }
        }
        for (long a = 0; a <= l / 2; ++a) {
            const Bigint& e0 = enumerated[static_cast<std::size_t>(a)][0];
            const Bigint& e1 = enumerated[static_cast<std::size_t>(a)][1];
            ++result.checks;
            if (e0 + e1 != fc_class_count(l, a)) {
                record_failure(result, "class count l=" + std::to_string(l) + " a=" + std::to_string(a));
            }
            ++result.checks;
            if (e0 != segment_count(l, a, LastBit::zero) || e1 != segment_count(l, a, LastBit::one)) {
                record_failure(result, "segment closed form l=" + std::to_string(l) + " a=" + std::to_string(a));
            }
            ++result.checks;
            if (e0 != dp.count(l, a, 0) || e1 != dp.count(l, a, 1)) {
                record_failure(result, "segment DP l=" + std::to_string(l) + " a=" + std::to_string(a));
            }
        }
    }
    return result;
}

VerifyResult verify_vandermonde(long max) {
    VerifyResult result{"vandermonde convolution"};
    for (long D = 0; D <= max; ++D) {
        for (long E = 0; E <= max; ++E) {
            for (long F = 0; F <= max; ++F) {
                ++result.checks;
                auto [lhs, rhs] = vandermonde_check(D, E, F);
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "D=" << D << " E=" << E << " F=" << F;
                    record_failure(result, os.str());
                }
            }
        }
    }
    return result;
}

VerifyResult verify_padded_closed_form(long max_k, long exhaustive_wlen, std::uint64_t n_random,
                                       std::uint64_t seed) {
    VerifyResult result{"padded-pair closed form"};
    for (long k = 1; k <= max_k; ++k) {
        PaddedPair pair = make_padded_pair(k);
        for (long len = 0; len <= std::min<long>(exhaustive_wlen, pair.n); ++len) {
            for (std::uint64_t v = 0; v < (1ull << len); ++v) {
                BitString w = BitString::from_value(v, static_cast<int>(len));
                ++result.checks;
                if (padded_subseq_count(pair, w, PairSide::x) != subsequence_count_oracle(w, pair.x) ||
                    padded_subseq_count(pair, w, PairSide::y) != subsequence_count_oracle(w, pair.y)) {
                    record_failure(result, "k=" + std::to_string(k) + " w=" + w.str());
                }
            }
        }
        CounterRng rng(seed, static_cast<std::uint64_t>(k));
        for (std::uint64_t i = 0; i < n_random; ++i) {
            long len = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(pair.n) + 1));
            BitString w;
            for (long b = 0; b < len; ++b) w.push_back(static_cast<int>(rng.next_u32() & 1u));
            ++result.checks;
            if (padded_subseq_count(pair, w, PairSide::x) != subsequence_count_oracle(w, pair.x) ||
                padded_subseq_count(pair, w, PairSide::y) != subsequence_count_oracle(w, pair.y)) {
                record_failure(result, "random k=" + std::to_string(k) + " w=" + w.str());
            }
        }
    }
    return result;
}

VerifyResult verify_printed_avoid_term_fails() {
    VerifyResult result{"printed avoid-term variant disagrees with oracle"};
    // The variant with C(2k+f_c, m) must fail somewhere; k=1, w="1" suffices.
    PaddedPair pair = make_padded_pair(1);
    BitString w("1");
    ++result.checks;
    Bigint printed = padded_subseq_count_printed_variant(pair, w, PairSide::x);
    Bigint oracle = subsequence_count_oracle(w, pair.x);
    if (printed == oracle) {
        record_failure(result, "printed variant unexpectedly matches oracle at k=1 w=1");
    }
    ++result.checks;
    if (padded_subseq_count(pair, w, PairSide::x) != oracle) {
        record_failure(result, "corrected form does not match oracle at k=1 w=1");
    }
    return result;
}

VerifyResult verify_pairsum(long max_k, int threads) {
    VerifyResult result{"pair-sum evaluators"};
    for (long k = 1; k <= max_k; ++k) {
        PaddedPair pair = make_padded_pair(k);
        PascalTable table(pair.n + 2);
        FcClassTable fc_table(pair.n);
        double weighted_total = 0.0;
        for (long m = 0; m <= pair.n; ++m) {
            for (long f = 0; f <= m / 2; ++f) {
                CountProfile profile{m, f};
                Bigint fast = inner_diff_sq_sum(pair, profile, table);
                Bigint reference = inner_diff_sq_sum_reference(pair, profile, fc_table, table);
                Bigint brute = inner_diff_sq_bruteforce(pair, profile);
                ++result.checks;
                if (fast != reference || fast != brute) {
                    std::ostringstream os;
                    os << "k=" << k << " m=" << m << " f=" << f << " fast=" << fast.get_str()
                       << " ref=" << reference.get_str() << " brute=" << brute.get_str();
                    record_failure(result, os.str());
                }
                Bigint denom = 1;
                mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(),
                             static_cast<mp_bitcnt_t>(2 * pair.n));
                weighted_total += bigint_ratio_to_double(fast, denom);
            }
        }
        // 4^-n weighted total equals the brute-force sum of (mu - nu)^2 at q = 1/2.
        double brute_total = sum_sq_diff_bruteforce(pair.x, pair.y, 0.5, threads);
        ++result.checks;
        if (std::fabs(weighted_total - brute_total) > 1e-12) {
            std::ostringstream os;
            os << "k=" << k << " weighted=" << weighted_total << " brute=" << brute_total;
            record_failure(result, os.str());
        }
    }
    return result;
}

}  // namespace tracelab
