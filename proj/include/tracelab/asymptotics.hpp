#pragma once
// Numerical audits of the binomial approximation estimates: the two-sided
// Stirling ratio expansion, the relevant-parameter-range bound, the parity
// pairing of adjacent terms, and the reflection symmetries used to cancel the
// leading difference terms.
//
// Big-O constants are unspecified in the estimates themselves, so each audit
// reports a fitted constant (the max normalized deviation over a sweep); CI
// pins those against stored first-run baselines.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/bigint.hpp"

namespace tracelab {

// Parameters of the ratio C(A+D, eA+s)·C(B-D, eB-s) / (C(A, eA)·C(B, eB))
// with eta = e bounded away from 0 and 1 and eta·A, eta·B integral.
struct StirlingRatioParams {
    long A = 0;
    long B = 0;
    double eta = 0.5;
    long delta = 0;
    long sigma = 0;
};

// Whether all four binomials are nonzero (arguments in range).
bool stirling_params_valid(const StirlingRatioParams& p);

// Closed-form approximation of the RECIPROCAL ratio: exp of the six quadratic
// terms, ignoring the 1+O(...) factors. Returns exactly 1 at delta=sigma=0.
// eta outside (0.05, 0.95) is rejected.
double stirling_pair_ratio_approx(const StirlingRatioParams& p);

// Exact reciprocal ratio via 256-bit log-gamma.
double stirling_pair_ratio_exact_reciprocal(const StirlingRatioParams& p);

// The plain (non-reciprocal) ratio, for the maximized-at-the-center check.
double stirling_pair_ratio_raw(const StirlingRatioParams& p);

// Sweep grid; when delta/sigma ranges are absent, |delta|,|sigma| <= A^(1/3).
// JSON keys: A_list, eta, delta_range, sigma_range.
struct StirlingAuditGrid {
    std::vector<long> A_list{1000, 10000, 100000};
    double eta = 0.5;
    std::optional<std::pair<long, long>> delta_range;
    std::optional<std::pair<long, long>> sigma_range;

    static StirlingAuditGrid from_json(const std::string& text);
};

struct AuditReport {
    std::string description;
    std::uint64_t points = 0;
    double max_relative_deviation = 0.0;
    StirlingRatioParams argmax;
    double fitted_constant = 0.0;   // max of deviation / predicted error scale
    double eq_corollary_max = 0.0;  // fitted K with ratio <= K * center value

    std::string to_json() const;
};

AuditReport stirling_pair_ratio_audit(const StirlingAuditGrid& grid);

// Product C(k+a, j-1)·C(k+1+f-a, m-j) against the e^(-ln^2 k)·C(4k/3, m/2)^2
// threshold; flagged = product exceeds threshold, which the range estimate
// confines to |a-f/2|, |j-m/2| <= sqrt(k)·ln k.
struct RangeCheckResult {
    double log_lhs = 0.0;
    double log_threshold = 0.0;
    double lhs = 0.0;
    double threshold = 0.0;
    bool flagged = false;
};

RangeCheckResult relevant_range_check(long k, long m, long f, long a, long j);

// Restricted parity sums around b = a + (t-j)/3: the even-spaced sum against
// half of the unit-spaced sum; deviation is |lhs/rhs - 1/2|·(t-j)/ln^2 k.
struct ParityPairingResult {
    Bigint lhs_sum;
    Bigint rhs_sum;
    double ratio = 0.0;
    double normalized_deviation = 0.0;
};

ParityPairingResult parity_pairing_check(long k, long m, long f, long a, long j, long t);

// Relative gap of the 2/3-1/3 weighted combination of the odd neighbours
// against the even term; decays like 1/(t-j) at b = a + (t-j)/3.
double weighted_parity_identity_gap(long k, long m, long f, long a, long j, long t, long b);

// delta and eps are integers; arguments whose thirds are non-integral are
// floored (sweeps use multiples of 3, where everything is exact).
struct SymmetryParams {
    long k = 0;
    long m = 0;
    long f = 0;
    long delta = 0;
    long eps = 0;
};

enum class SymmetryDisplay {
    padded_profile,  // products of C(k+f/2 ± ..., m/2 ± ...)
    count_profile,   // products of C(m/2 ± ..., f ± ...)
};

// Exact LHS/RHS ratio of the chosen display; 0/0 counts as ratio 1.
Rational reflection_symmetry_ratio(const SymmetryParams& p, SymmetryDisplay which);

// |ratio - 1| · sqrt(k) / ln^3 k.
double reflection_symmetry_check(const SymmetryParams& p, SymmetryDisplay which);

struct SweepReport {
    std::string description;
    std::uint64_t points = 0;
    double max_normalized_deviation = 0.0;
    std::string argmax_desc;

    std::string to_json() const;
};

SweepReport parity_pairing_sweep(const std::vector<long>& k_list);
SweepReport reflection_sweep(const std::vector<long>& k_list, SymmetryDisplay which);

}  // namespace tracelab
