#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tracelab/channel.hpp"
#include "tracelab/stats.hpp"
#include "tracelab/verify.hpp"
#include "testutil.hpp"

using namespace tracelab;

TEST_CASE("philox4x32-10 known-answer vectors") {
    auto r1 = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(r1 == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    auto r2 = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                {0xffffffffu, 0xffffffffu});
    CHECK(r2 == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    auto r3 = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                {0xa4093822u, 0x299f31d0u});
    CHECK(r3 == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("counter rng streams are reproducible and distinct") {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        std::uint32_t va = a.next_u32();
        all_equal = all_equal && (va == b.next_u32());
        any_diff = any_diff || (va != c.next_u32());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("sample_trace degenerate deletion probabilities") {
    BitString x("0110101");
    CHECK(sample_trace(x, {0.0, 5}, 0) == x);
    CHECK(sample_trace(x, {1.0, 5}, 0).empty());
    CHECK(sample_trace(x, {0.5, 5}, 3) == sample_trace(x, {0.5, 5}, 3));
}

TEST_CASE("near-total deletion leaves the trace empty almost always") {
    BitString x("0110101");
    ChannelSpec spec{0.999, 11};
    const int samples = 100000;
    int empty = 0;
    for (int i = 0; i < samples; ++i) {
        if (sample_trace(x, spec, static_cast<std::uint64_t>(i)).empty()) ++empty;
    }
    double p = std::pow(0.999, 7);
    double freq = static_cast<double>(empty) / samples;
    double sigma = std::sqrt(p * (1 - p) / samples);
    CHECK(std::fabs(freq - p) <= 4 * sigma);
}

TEST_CASE("mean trace length matches n(1-q)") {
    BitString x("0110101");
    ChannelSpec spec{0.5, 12};
    const int samples = 100000;
    double total = 0;
    for (int i = 0; i < samples; ++i) {
        total += static_cast<double>(sample_trace(x, spec, static_cast<std::uint64_t>(i)).size());
    }
    double mean = total / samples;
    double sigma_mean = std::sqrt(7 * 0.25 / samples);
    CHECK(std::fabs(mean - 3.5) <= 3 * sigma_mean);
}

TEST_CASE("trace pmf examples at k = 1") {
    PaddedPair pair = make_padded_pair(1);
    CHECK(trace_pmf(pair.x, BitString(""), 0.5) == doctest::Approx(std::pow(2.0, -7)).epsilon(1e-12));
    CHECK(trace_pmf(pair.x, BitString("11"), 0.5) == doctest::Approx(6 * std::pow(2.0, -7)).epsilon(1e-12));
    CHECK(trace_pmf(pair.x, BitString("1111111"), 0.5) == 0.0);
    CHECK(trace_pmf(pair.x, BitString("01010101"), 0.5) == 0.0);  // longer than x
    CHECK(trace_pmf(pair, PairSide::x, BitString("11"), 0.5) ==
          doctest::Approx(6 * std::pow(2.0, -7)).epsilon(1e-12));
}

TEST_CASE("pmf normalization in doubles and exact rationals") {
    for (long k = 1; k <= 2; ++k) {
        PaddedPair pair = make_padded_pair(k);
        for (double q : {0.2, 0.5, 0.8}) {
            double total = 0;
            for (long m = 0; m <= pair.n; ++m) {
                for (std::uint64_t v = 0; v < (1ull << m); ++v) {
                    total += trace_pmf(pair.x, BitString::from_value(v, static_cast<int>(m)), q);
                }
            }
            CHECK(std::fabs(total - 1.0) <= 1e-12);
        }
        Rational q_exact(1, 5);
        Rational total = 0;
        for (long m = 0; m <= pair.n && k == 1; ++m) {
            for (std::uint64_t v = 0; v < (1ull << m); ++v) {
                total += trace_pmf_exact(pair.x, BitString::from_value(v, static_cast<int>(m)), q_exact);
            }
        }
        if (k == 1) CHECK(total == 1);
    }
}

TEST_CASE("padded closed-form counts on pinned examples") {
    PaddedPair pair = make_padded_pair(1);
    CHECK(padded_subseq_count(pair, BitString("1"), PairSide::x) == 4);
    CHECK(padded_subseq_count(pair, BitString("01"), PairSide::x) == 7);
    CHECK(padded_subseq_count(pair, BitString("01"), PairSide::y) == 8);
    CHECK(padded_subseq_count(pair, BitString("11"), PairSide::x) == 6);
    CHECK(padded_subseq_count(pair, BitString(""), PairSide::x) == 1);
}

TEST_CASE("padded closed form matches the oracle exhaustively (small)") {
    VerifyResult r = verify_padded_closed_form(3, 7, 500, 99);
    CHECK(r.failures == 0);
}

TEST_CASE("the uncorrected avoid-term disagrees with the oracle") {
    VerifyResult r = verify_printed_avoid_term_fails();
    CHECK(r.failures == 0);
    // Pin the actual numbers at k=1, w="1": four 1s in x_7.
    PaddedPair pair = make_padded_pair(1);
    CHECK(subsequence_count_oracle(BitString("1"), pair.x) == 4);
    CHECK(padded_subseq_count_printed_variant(pair, BitString("1"), PairSide::x) == 3);
}

TEST_CASE("log-space padded counts match the exact ones") {
    PaddedPair pair = make_padded_pair(6);
    BinomialTable table(pair.n + 2);
    CounterRng rng(5, 0);
    for (int trial = 0; trial < 50; ++trial) {
        long len = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(pair.n) + 1));
        BitString w = testutil::random_bits(rng, len);
        for (PairSide side : {PairSide::x, PairSide::y}) {
            Bigint exact = padded_subseq_count(pair, w, side);
            double lg = log_padded_subseq_count(pair, w, side, table);
            if (exact == 0) {
                CHECK(std::isinf(lg));
            } else {
                CHECK(lg == doctest::Approx(bigint_log(exact)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("log_trace_pmf matches the linear pmf") {
    PaddedPair pair = make_padded_pair(2);
    CounterRng rng(6, 0);
    for (int trial = 0; trial < 40; ++trial) {
        BitString w = testutil::random_bits(rng, static_cast<long>(rng.next_below(12)));
        for (double q : {0.25, 0.5}) {
            double lin = trace_pmf(pair.x, w, q);
            double lg = log_trace_pmf(pair.x, w, q);
            if (lin == 0.0) {
                CHECK(std::isinf(lg));
            } else {
                CHECK(std::exp(lg) == doctest::Approx(lin).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("expected subsequence count and the survival exponent") {
    BitString x("0011");
    BitString w("01");
    CHECK(expected_subseq_count(x, BitString(""), 0.7) == 1.0);
    CHECK(expected_subseq_count(x, w, 0.0) == 4.0);
    CHECK(expected_subseq_count(x, w, 0.5) == doctest::Approx(1.0));

    // Monte Carlo mean of f(w; trace) sits near f·(1-q)^|w|, three standard
    // errors wide; the inverted exponent (1-q)^{-|w|} = 16 is far outside.
    ChannelSpec spec{0.5, 21};
    const int samples = 100000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < samples; ++i) {
        BitString t = sample_trace(x, spec, static_cast<std::uint64_t>(i));
        double f = subsequence_count_oracle(w, t).get_d();
        sum += f;
        sum_sq += f * f;
    }
    double mean = sum / samples;
    double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
    CHECK(std::fabs(mean - 1.0) <= 3 * se);
    double printed_form = 4.0 * std::pow(0.5, -2.0);  // 16
    CHECK(std::fabs(mean - printed_form) > 100 * se);
}

TEST_CASE("sampled trace frequencies pass a chi-square fit against the pmf") {
    PaddedPair pair = make_padded_pair(1);
    ChannelSpec spec{0.5, 31};
    const std::uint64_t samples = 1000000;
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < samples; ++i) {
        ++counts[sample_trace(pair.x, spec, i).str()];
    }
    double stat = 0.0;
    long bins = 0;
    for (long m = 0; m <= pair.n; ++m) {
        for (std::uint64_t v = 0; v < (1ull << m); ++v) {
            BitString w = BitString::from_value(v, static_cast<int>(m));
            double p = trace_pmf(pair.x, w, 0.5);
            auto it = counts.find(w.str());
            std::uint64_t observed = it == counts.end() ? 0 : it->second;
            if (p == 0.0) {
                CHECK(observed == 0);  // impossible traces never occur
                continue;
            }
            double expected = p * static_cast<double>(samples);
            stat += (observed - expected) * (observed - expected) / expected;
            ++bins;
        }
    }
    double p_value = chi_sq_survival(stat, static_cast<double>(bins - 1));
    CHECK(p_value > 1e-3);
}

TEST_CASE("trace dump format") {
    BitString x("0101");
    ChannelSpec spec{0.5, 9};
    std::vector<BitString> traces{sample_trace(x, spec, 0), sample_trace(x, spec, 1)};
    std::ostringstream os;
    write_trace_dump(os, x, spec, traces);
    std::string text = os.str();
    CHECK(text.rfind("# x=0101 q=0.5 seed=9\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
