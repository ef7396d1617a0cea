#pragma once
// Polynomial-time exact evaluation of the per-profile squared-difference sums
//
//     S(m, f) = sum over {w : |w| = m, f_c(w) = f} of (f(w;x_n) - f(w;y_n))^2,
//
// the weighted surrogate distance they induce at q = 1/2, and the scaling
// study over n.
//
// Three exact routes are kept on purpose:
//   - inner_diff_sq_bruteforce: enumeration + DP oracle (small m, the judge);
//   - inner_diff_sq_sum_reference: direct junction casework over
//     (j, t, a, b, c1, c2) with DP segment counts;
//   - inner_diff_sq_sum: the production evaluator, which reorganizes the same
//     casework into a prefix-injection recurrence over (t, b, ending bit) and
//     runs in O(m·f) big-integer operations per profile.
// The three agree bit-for-bit; tests enforce it.

#include <cstdint>
#include <string>
#include <vector>

#include "tracelab/bigint.hpp"
#include "tracelab/binomial.hpp"
#include "tracelab/bitstring.hpp"
#include "tracelab/channel.hpp"
#include "tracelab/distance.hpp"

namespace tracelab {

struct CountProfile {
    long m = 0;  // trace length
    long f = 0;  // contiguous-01 count
};

// Production evaluator; exact for every profile, including the boundary cases
// (j = 1, t = j, t = j + 1, t = m) and all four junction-bit combinations.
Bigint inner_diff_sq_sum(const PaddedPair& pair, CountProfile profile, const PascalTable& table);

// Direct sum over (j <= t, a, b, junction bits); counts come from the DP
// segment table rather than the closed forms, so the two implementations
// share no counting code.
Bigint inner_diff_sq_sum_reference(const PaddedPair& pair, CountProfile profile,
                                   const FcClassTable& fc_table, const PascalTable& table);

// Exhaustive enumeration of {0,1}^m filtered to f_c = f, differences taken
// from the DP oracle. Cost 2^m; the independent judge for the other two.
Bigint inner_diff_sq_bruteforce(const PaddedPair& pair, CountProfile profile);

struct SurrogateReport {
    long k = 0;
    long n = 0;
    bool windowed = false;
    long radius = 0;
    // "corrected" = C(2k+1+f, m) in the weight denominator; "printed" keeps
    // C(2k+f, m) and exists for comparison output only.
    std::string weight_convention = "corrected";
    std::vector<std::tuple<long, long, double>> per_profile;  // (m, f, contribution)
    // Profiles with a vanishing weight denominator (the m = 2k+2+f boundary
    // layer, reachable only at small k): outside the bound's validity, skipped.
    std::vector<std::pair<long, long>> skipped_profiles;
    double total = 0.0;

    std::string to_json() const;
};

// sum over profiles of S(m,f) / (2^n · C(2k+1+f, m)); windowed restricts the
// profile grid to the high-probability window. q = 1/2 only by construction.
SurrogateReport surrogate_distance(const PaddedPair& pair, bool windowed,
                                   bool paper_weights = false, int threads = 0);

struct ScalingPoint {
    long k = 0;
    long n = 0;
    double value = 0.0;
    double slope_so_far = 0.0;  // OLS slope over points up to here; NaN below 2 points
};

struct ScalingFit {
    std::vector<ScalingPoint> points;
    double slope = 0.0;
    double stderr_ = 0.0;
    std::string method;

    std::string to_csv() const;  // columns n,k,method,value,slope_so_far
};

enum class ScalingMethod { exact_surrogate, mc_chi_sq };

// Least-squares fit of ln(value) against ln(n); needs >= 3 points.
ScalingFit scaling_fit(const std::vector<long>& k_list, ScalingMethod method,
                       const ChannelSpec& spec, std::uint64_t mc_samples = 1000000,
                       bool windowed = true, int threads = 0);

// Plain OLS on (ln n, ln value); exposed for synthetic inputs.
std::pair<double, double> fit_loglog(const std::vector<std::pair<double, double>>& points);

}  // namespace tracelab
