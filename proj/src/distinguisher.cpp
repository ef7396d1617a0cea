#include "tracelab/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tracelab/distance.hpp"
#include "tracelab/parallel.hpp"

namespace tracelab {

LrtResult lrt_classify(const std::vector<BitString>& traces, const BitString& x,
                       const BitString& y, double /*q*/) {
    if (x.size() != y.size()) throw std::invalid_argument("lrt_classify: length mismatch");
    double llr = 0.0;
    long plus_inf = 0, minus_inf = 0;
    for (const auto& w : traces) {
        if (w.size() > x.size()) throw std::invalid_argument("lrt_classify: trace longer than source");
        Bigint fx = subsequence_count_oracle(w, x);
        Bigint fy = subsequence_count_oracle(w, y);
        if (fx == 0 && fy == 0) {
            throw std::logic_error("lrt_classify: trace impossible under both sources");
        }
        if (fy == 0) {
            ++plus_inf;
        } else if (fx == 0) {
            ++minus_inf;
        } else {
            llr += bigint_log(fx) - bigint_log(fy);
        }
    }
    if (plus_inf > 0 && minus_inf > 0) {
        throw std::logic_error("lrt_classify: contradictory infinite evidence");
    }
    if (plus_inf > 0) llr = std::numeric_limits<double>::infinity();
    if (minus_inf > 0) llr = -std::numeric_limits<double>::infinity();
    return {llr >= 0.0 ? PairSide::x : PairSide::y, llr, traces.size()};
}

ErrorRate empirical_error_rate(const BitString& x, const BitString& y, double q, std::uint64_t T,
                               std::uint64_t trials, const ChannelSpec& spec, int threads,
                               std::uint64_t stream_base) {
    if (trials < 100) throw std::invalid_argument("empirical_error_rate: need trials >= 100");
    ChannelSpec local = spec;
    local.q = q;
    auto chunks = run_chunked<std::uint64_t>(
        trials, 16, threads, [&](std::size_t begin, std::size_t end) {
            std::uint64_t errors = 0;
            std::vector<BitString> traces;
            traces.reserve(T);
            for (std::size_t t = begin; t < end; ++t) {
                const bool from_x = (t % 2 == 0);
                const BitString& source = from_x ? x : y;
                traces.clear();
                for (std::uint64_t i = 0; i < T; ++i) {
                    traces.push_back(sample_trace(source, local, ((stream_base + t) << 32) | i));
                }
                LrtResult r = lrt_classify(traces, x, y, q);
                const bool said_x = (r.decision == PairSide::x);
                if (said_x != from_x) ++errors;
            }
            return errors;
        });
    std::uint64_t errors = 0;
    for (auto e : chunks) errors += e;
    double rate = static_cast<double>(errors) / static_cast<double>(trials);
    double se = std::sqrt(std::max(rate * (1.0 - rate), 0.0) / static_cast<double>(trials));
    return {rate, se, trials, errors};
}

double wilson_upper_bound(std::uint64_t errors, std::uint64_t trials, double z) {
    double n = static_cast<double>(trials);
    double p = static_cast<double>(errors) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = p + z2 / (2.0 * n);
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return (center + half) / denom;
}

ComplexityResult estimate_sample_complexity(const BitString& x, const BitString& y, double q,
                                            double target_delta, const ChannelSpec& spec,
                                            std::uint64_t trials, int threads) {
    if (!(target_delta > 0.0 && target_delta < 0.5)) {
        throw std::invalid_argument("estimate_sample_complexity: need 0 < delta < 1/2");
    }
    ComplexityResult result;
    std::uint64_t step = 0;
    for (std::uint64_t T = 1; T <= kComplexityCapT; T <<= 1, ++step) {
        ErrorRate r = empirical_error_rate(x, y, q, T, trials, spec, threads, step * trials);
        double upper = wilson_upper_bound(r.errors, r.trials);
        result.steps.push_back({T, r.trials, r.errors, r.rate, upper});
        if (upper < target_delta) {
            result.found = true;
            result.t_star = T;
            return result;
        }
    }
    return result;  // cap exceeded
}

DeckSignature deck_signature(const BitString& x, long max_order) {
    if (max_order < 0) throw std::invalid_argument("deck_signature: max_order must be >= 0");
    DeckSignature sig;
    sig.n = static_cast<long>(x.size());
    sig.power_sums.assign(static_cast<std::size_t>(max_order) + 1, Bigint(0));
    for (long i = 1; i <= sig.n; ++i) {
        if (x.bit1(static_cast<std::size_t>(i)) != 1) continue;
        Bigint power = 1;
        for (long m = 0; m <= max_order; ++m) {
            sig.power_sums[static_cast<std::size_t>(m)] += power;
            power *= i;
        }
    }
    return sig;
}

std::optional<long> first_power_sum_difference(const BitString& x, const BitString& y,
                                               long max_order) {
    DeckSignature sx = deck_signature(x, max_order);
    DeckSignature sy = deck_signature(y, max_order);
    for (long m = 0; m <= max_order; ++m) {
        if (sx.power_sums[static_cast<std::size_t>(m)] != sy.power_sums[static_cast<std::size_t>(m)]) {
            return m;
        }
    }
    return std::nullopt;
}

std::optional<DistinguishingWord> find_min_distinguishing_word(const BitString& x,
                                                               const BitString& y, long max_len) {
    for (long len = 1; len <= max_len; ++len) {
        if (len > 62) throw infeasible_error("find_min_distinguishing_word: length > 62");
        for (std::uint64_t v = 0; v < (1ull << len); ++v) {
            BitString w;
            for (long j = len - 1; j >= 0; --j) w.push_back(static_cast<int>((v >> j) & 1u));
            Bigint fx = subsequence_count_oracle(w, x);
            Bigint fy = subsequence_count_oracle(w, y);
            if (fx != fy) return DistinguishingWord{w, fx, fy};
        }
    }
    return std::nullopt;
}

PairSide mean_based_distinguish(const std::vector<BitString>& traces, const BitString& w,
                                const Bigint& fx, const Bigint& fy, double q) {
    if (fx == fy) throw std::invalid_argument("mean_based_distinguish: need fx != fy");
    if (traces.empty()) throw std::invalid_argument("mean_based_distinguish: no traces");
    double sum = 0.0;
    for (const auto& trace : traces) {
        sum += subsequence_count_oracle(w, trace).get_d();
    }
    double mean = sum / static_cast<double>(traces.size());
    double keep = std::pow(1.0 - q, static_cast<double>(w.size()));
    double tx = fx.get_d() * keep;
    double ty = fy.get_d() * keep;
    return std::fabs(mean - tx) <= std::fabs(mean - ty) ? PairSide::x : PairSide::y;
}

long root_multiplicity_at_one(const std::vector<Bigint>& coefficients) {
    bool all_zero = true;
    for (const auto& c : coefficients) {
        if (c != 0) {
            all_zero = false;
            break;
        }
    }
    if (coefficients.empty() || all_zero) {
        throw std::invalid_argument("root_multiplicity_at_one: zero polynomial");
    }
    std::vector<Bigint> cur = coefficients;
    long mult = 0;
    for (;;) {
        Bigint at_one = 0;
        for (const auto& c : cur) at_one += c;
        if (at_one != 0) return mult;
        // Synthetic division by (z - 1); exact since the remainder is p(1) = 0.
        std::vector<Bigint> quot(cur.size() - 1);
        Bigint carry = 0;
        for (std::size_t i = cur.size(); i-- > 1;) {
            carry += cur[i];
            quot[i - 1] = carry;
        }
        cur = std::move(quot);
        ++mult;
    }
}

long root_multiplicity_at_one(const PolySpec& p) {
    std::vector<Bigint> coeffs(p.coefficients.size());
    for (std::size_t i = 0; i < p.coefficients.size(); ++i) coeffs[i] = p.coefficients[i];
    return root_multiplicity_at_one(coeffs);
}

namespace {

// Multiplicity of (z-1) in a +-1 polynomial given by sign bits (bit i set =>
// coefficient of z^i is +1), leading coefficient forced +1. Coefficient growth
// during the division chain stays far below 64 bits at degree <= 22.
long sign_pattern_multiplicity(std::uint64_t bits, long degree) {
    long sz = degree + 1;
    std::int64_t cur[64];
    for (long i = 0; i < degree; ++i) cur[i] = ((bits >> i) & 1u) ? 1 : -1;
    cur[degree] = 1;
    long mult = 0;
    while (sz > 1) {
        std::int64_t at_one = 0;
        for (long i = 0; i < sz; ++i) at_one += cur[i];
        if (at_one != 0) return mult;
        // In-place synthetic division by (z - 1): b_{i-1} = a_i + b_i.
        std::int64_t carry = 0;
        std::int64_t orig = cur[sz - 1];
        for (long i = sz - 1; i >= 1; --i) {
            carry += orig;
            orig = cur[i - 1];
            cur[i - 1] = carry;
        }
        --sz;
        ++mult;
    }
    return mult;
}

}  // namespace

MultiplicityResult max_multiplicity_exhaustive(long degree, int threads) {
    if (degree < 0) throw std::invalid_argument("max_multiplicity_exhaustive: degree < 0");
    if (degree > 22) {
        throw infeasible_error("max_multiplicity_exhaustive: 2^degree search needs degree <= 22");
    }
    struct ChunkBest {
        long mult = -1;
        std::uint64_t bits = 0;
    };
    const std::uint64_t total = (degree == 0) ? 1 : (1ull << degree);
    auto chunks = run_chunked<ChunkBest>(
        total, 1ull << 14, threads, [&](std::size_t begin, std::size_t end) {
            ChunkBest best;
            for (std::uint64_t v = begin; v < end; ++v) {
                long mu = sign_pattern_multiplicity(v, degree);
                if (mu > best.mult) best = {mu, v};
            }
            return best;
        });
    ChunkBest best;
    for (const auto& c : chunks) {
        if (c.mult > best.mult) best = c;  // earliest chunk wins ties
    }
    MultiplicityResult result;
    result.max_multiplicity = best.mult;
    result.witness.coefficients.resize(static_cast<std::size_t>(degree) + 1);
    for (long i = 0; i < degree; ++i) {
        result.witness.coefficients[static_cast<std::size_t>(i)] = ((best.bits >> i) & 1u) ? 1 : -1;
    }
    result.witness.coefficients[static_cast<std::size_t>(degree)] = 1;
    return result;
}

}  // namespace tracelab
