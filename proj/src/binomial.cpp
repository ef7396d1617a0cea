#include "tracelab/binomial.hpp"

#include <limits>
#include <stdexcept>

namespace tracelab {

Bigint binomial_exact(long n, long r) {
    if (n < 0 || r < 0 || r > n) return 0;
    Bigint out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

BinomialTable::BinomialTable(long max_n, long exact_cap)
    : max_n_(max_n), exact_max_(std::min(max_n, exact_cap)) {
    if (max_n < 0) throw std::invalid_argument("BinomialTable: max_n must be >= 0");
    fact_.resize(static_cast<std::size_t>(exact_max_) + 1);
    fact_[0] = 1;
    for (long i = 1; i <= exact_max_; ++i) fact_[static_cast<std::size_t>(i)] = fact_[static_cast<std::size_t>(i - 1)] * i;

    log_fact_.resize(static_cast<std::size_t>(max_n_) + 1);
    mpfr_t acc, term;
    mpfr_init2(acc, 256);
    mpfr_init2(term, 256);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    log_fact_[0] = 0.0L;
    for (long i = 1; i <= max_n_; ++i) {
        mpfr_set_ui(term, static_cast<unsigned long>(i), MPFR_RNDN);
        mpfr_log(term, term, MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
        log_fact_[static_cast<std::size_t>(i)] = mpfr_get_ld(acc, MPFR_RNDN);
    }
    mpfr_clear(acc);
    mpfr_clear(term);
}

const Bigint& BinomialTable::factorial(long n) const {
    if (n < 0 || n > exact_max_) throw std::out_of_range("BinomialTable::factorial");
    return fact_[static_cast<std::size_t>(n)];
}

Bigint BinomialTable::binomial(long n, long r) const {
    if (n < 0 || r < 0 || r > n) return 0;
    if (n > exact_max_) return binomial_exact(n, r);
    Bigint out = fact_[static_cast<std::size_t>(n)];
    out /= fact_[static_cast<std::size_t>(r)];
    out /= fact_[static_cast<std::size_t>(n - r)];
    return out;
}

long double BinomialTable::log_binomial(long n, long r) const {
    if (n < 0 || r < 0 || r > n) return -std::numeric_limits<long double>::infinity();
    return log_fact_[static_cast<std::size_t>(n)] - log_fact_[static_cast<std::size_t>(r)] -
           log_fact_[static_cast<std::size_t>(n - r)];
}

PascalTable::PascalTable(long max_n) : max_n_(max_n), zero_(0) {
    if (max_n < 0) throw std::invalid_argument("PascalTable: max_n must be >= 0");
    rows_.resize(static_cast<std::size_t>(max_n_) + 1);
    for (long n = 0; n <= max_n_; ++n) {
        auto& row = rows_[static_cast<std::size_t>(n)];
        row.resize(static_cast<std::size_t>(n) + 1);
        row[0] = 1;
        row[static_cast<std::size_t>(n)] = 1;
        for (long r = 1; r < n; ++r) {
            row[static_cast<std::size_t>(r)] = rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(r - 1)] +
                                               rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(r)];
        }
    }
}

Bigint zigzag_subseq_count(long k, const BitString& w) {
    if (k < 0) throw std::invalid_argument("zigzag_subseq_count: k must be >= 0");
    return binomial_exact(k + contiguous_01_count(w), static_cast<long>(w.size()));
}

Bigint fc_class_count(long l, long a) {
    if (l < 0 || a < 0) return 0;
    return binomial_exact(l + 1, 2 * a + 1);
}

Bigint segment_count(long l, long a, LastBit last) {
    if (l < 0 || a < 0) return 0;
    switch (last) {
        case LastBit::zero:
            return binomial_exact(l, 2 * a + 1);
        case LastBit::one:
            return binomial_exact(l, 2 * a);
        case LastBit::any:
            return binomial_exact(l, 2 * a) + binomial_exact(l, 2 * a + 1);
    }
    return 0;
}

FcClassTable::FcClassTable(long max_l) : max_l_(max_l), zero_(0) {
    if (max_l < 0) throw std::invalid_argument("FcClassTable: max_l must be >= 0");
    const long a_dim = max_l_ / 2 + 2;
    table_.assign(static_cast<std::size_t>((max_l_ + 1) * a_dim * 2), Bigint(0));
    auto idx = [a_dim](long l, long a, int last) {
        return static_cast<std::size_t>((l * a_dim + a) * 2 + last);
    };
    table_[idx(0, 0, 1)] = 1;  // empty string counts as ending in 1
    for (long l = 1; l <= max_l_; ++l) {
        for (long a = 0; a <= l / 2; ++a) {
            table_[idx(l, a, 0)] = table_[idx(l - 1, a, 0)] + table_[idx(l - 1, a, 1)];
            Bigint ones = table_[idx(l - 1, a, 1)];
            if (a >= 1) ones += table_[idx(l - 1, a - 1, 0)];
            table_[idx(l, a, 1)] = ones;
        }
    }
}

const Bigint& FcClassTable::count(long l, long a, int last) const {
    if (l < 0 || l > max_l_ || a < 0 || a > l / 2) return zero_;
    const long a_dim = max_l_ / 2 + 2;
    return table_[static_cast<std::size_t>((l * a_dim + a) * 2 + last)];
}

Bigint FcClassTable::count(long l, long a, LastBit last) const {
    switch (last) {
        case LastBit::zero:
            return count(l, a, 0);
        case LastBit::one:
            return count(l, a, 1);
        case LastBit::any:
            return count(l, a, 0) + count(l, a, 1);
    }
    return 0;
}

std::pair<Bigint, Bigint> vandermonde_check(long D, long E, long F) {
    Bigint lhs = 0;
    for (long c = 0; c <= D; ++c) lhs += binomial_exact(D, c) * binomial_exact(E, F - c);
    return {lhs, binomial_exact(D + E, F)};
}

}  // namespace tracelab
