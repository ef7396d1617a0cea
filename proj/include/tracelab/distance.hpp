#pragma once
// Exact statistical distances between trace distributions (brute force over
// the whole trace space, n <= 24), the high-probability trace window, and a
// Monte Carlo chi-square estimator for large n.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tracelab/bitstring.hpp"
#include "tracelab/channel.hpp"

namespace tracelab {

// Declared infeasibility (size caps); the CLI maps this to exit code 1.
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Traces with length near 2k and f_c near 2k/3. The radius is floored to an
// integer; comparisons against the rational center 2k/3 are exact. log means
// natural log.
struct ESetSpec {
    long k = 1;
    long radius = 0;

    static ESetSpec for_pair(long k);
    static ESetSpec with_radius(long k, long radius);

    bool contains(long m, long fc) const {
        return std::labs(m - 2 * k) <= radius && std::labs(3 * fc - 2 * k) <= 3 * radius;
    }
    bool contains(const BitString& w) const {
        return contains(static_cast<long>(w.size()), contiguous_01_count(w));
    }
};

struct DistanceReport {
    long k = 0;
    long n = 0;
    double q = 0.5;
    long radius = 0;
    double hellinger_sq = 0.0;
    double tv = 0.0;
    double chi_sq_restricted = 0.0;
    double mu_mass_outside_E = 0.0;
    double nu_mass_outside_E = 0.0;
    // mu-mass of E-words with nu = 0 (possible for small k on the boundary
    // layer |w| = 2k+2+f_c; excluded from the chi-square sum).
    double support_exception_mass = 0.0;
    // (m, f) -> contribution to chi_sq_restricted, E-window profiles only.
    std::vector<std::tuple<long, long, double>> per_profile;

    std::string to_json() const;
};

inline constexpr long kBruteForceMaxN = 24;

// sum_w (sqrt(mu_x) - sqrt(mu_y))^2 over all w in {0,1}^{<=n}.
double hellinger_sq_bruteforce(const BitString& x, const BitString& y, double q, int threads = 0);

// sum_w |mu_x - mu_y| / 2.
double tv_bruteforce(const BitString& x, const BitString& y, double q, int threads = 0);

// sum over {w in E, nu(w) > 0} of (mu - nu)^2 / nu. E-words outside supp(nu)
// exist for small k (the |w| = 2k+2+f_c layer can intersect the window); they
// are excluded here and their mu-mass is reported separately.
double chi_sq_restricted_bruteforce(const PaddedPair& pair, double q, const ESetSpec& eset,
                                    int threads = 0);

// sum over the support of nu of (mu - nu)^2 / nu. Terms with nu = 0 are
// outside the sampling estimator's reach and are excluded by convention.
double chi_sq_unrestricted_bruteforce(const BitString& x, const BitString& y, double q,
                                      int threads = 0);

// sum_w (mu(w) - nu(w))^2 over the whole trace space.
double sum_sq_diff_bruteforce(const BitString& x, const BitString& y, double q, int threads = 0);

// Mass of E under the chosen trace measure.
double eset_mass_bruteforce(const PaddedPair& pair, PairSide side, double q, const ESetSpec& eset,
                            int threads = 0);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

McEstimate eset_mass_mc(const PaddedPair& pair, PairSide side, double q, const ESetSpec& eset,
                        std::uint64_t samples, const ChannelSpec& spec, int threads = 0);

// Unbiased sampling estimate of sum_{supp nu} (mu-nu)^2/nu = E_nu[(mu/nu - 1)^2]:
// traces of y are sampled and both pmfs evaluated via the padded closed forms
// (the (1-q)^m q^(n-m) prefactors cancel in the ratio). O(n) per trace.
McEstimate chi_sq_monte_carlo(const PaddedPair& pair, double q, std::uint64_t samples,
                              const ChannelSpec& spec, int threads = 0);

// Same estimator for arbitrary equal-length strings via the DP oracle
// (small n only; used by tests and the x = y sanity case).
McEstimate chi_sq_monte_carlo_general(const BitString& x, const BitString& y, double q,
                                      std::uint64_t samples, const ChannelSpec& spec,
                                      int threads = 0);

// Full brute-force report for a padded pair.
DistanceReport distance_report_bruteforce(const PaddedPair& pair, double q, const ESetSpec& eset,
                                          int threads = 0);

}  // namespace tracelab
