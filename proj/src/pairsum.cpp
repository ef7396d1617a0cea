#include "tracelab/pairsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tracelab/parallel.hpp"
#include "tracelab/summation.hpp"

namespace tracelab {

namespace {

// d_j(a, c) = C(k+a, j-1)·C(k+1+c, m-j) - C(k+1+a, j-1)·C(k+c, m-j),
// the per-position difference between the x and y defect terms when the
// prefix has f_c = a and the suffix has f_c = c.
struct DiffTerm {
    const PascalTable& table;
    long k, m;

    Bigint operator()(long j, long a, long c) const {
        if (a < 0 || c < 0) return 0;
        Bigint v = table.binomial(k + a, j - 1) * table.binomial(k + 1 + c, m - j);
        v -= table.binomial(k + 1 + a, j - 1) * table.binomial(k + c, m - j);
        return v;
    }
};

bool profile_in_range(const PaddedPair& pair, CountProfile p) {
    return p.m >= 1 && p.m <= pair.n && p.f >= 0 && p.f <= p.m / 2;
}

}  // namespace

Bigint inner_diff_sq_sum(const PaddedPair& pair, CountProfile profile, const PascalTable& table) {
    if (!profile_in_range(pair, profile)) return 0;
    const long m = profile.m;
    const long f = profile.f;
    DiffTerm d{table, pair.k, m};

    // Segment counts via the verified closed forms. T(l,a,1) = C(l,2a) and
    // T(l,a,0) = C(l,2a+1); the empty segment counts as ending in 1.
    auto t_end0 = [&](long l, long a) -> const Bigint& { return table.binomial(l, 2 * a + 1); };
    auto t_end1 = [&](long l, long a) -> const Bigint& { return table.binomial(l, 2 * a); };
    // Number of length-l strings with f_c = h, any ending.
    auto suffix_count = [&](long l, long h) -> const Bigint& { return table.binomial(l + 1, 2 * h + 1); };

    Bigint diag = 0;
    Bigint off = 0;
    Bigint tmp, dj;

    // Diagonal t = j: prefix count · d_j^2 · suffix count.
    for (long j = 1; j <= m; ++j) {
        for (long bp = 0; bp <= f; ++bp) {
            const long c = f - bp;
            const Bigint& suf = suffix_count(m - j, c);
            if (suf == 0) continue;
            if (bp >= 1) {
                const Bigint& p0 = t_end0(j - 1, bp - 1);
                if (p0 != 0) {
                    dj = d(j, bp - 1, c);
                    tmp = dj * dj;
                    tmp *= p0;
                    tmp *= suf;
                    diag += tmp;
                }
            }
            const Bigint& p1 = t_end1(j - 1, bp);
            if (p1 != 0) {
                dj = d(j, bp, c);
                tmp = dj * dj;
                tmp *= p1;
                tmp *= suf;
                diag += tmp;
            }
        }
    }

    // Off-diagonal j < t, reorganized: W_t(b, e) aggregates all (j, prefix)
    // choices with the middle segment w_{j+1..t-1} ending in bit e and
    // f_c(w_{1,t-1}) = b, each weighted by the prefix count times d_j. The
    // middle-segment recurrence (append one bit) advances W in t.
    const std::size_t width = static_cast<std::size_t>(f) + 1;
    std::vector<Bigint> w0(width), w1(width), nw0(width), nw1(width), g(width);

    for (long t = 2; t <= m; ++t) {
        // Injection at j = t-1 (empty middle, counts as ending in 1).
        const long j = t - 1;
        for (long b = 0; b <= f; ++b) {
            g[static_cast<std::size_t>(b)] = 0;
            const long c = f - b;
            if (c < 0) continue;
            if (b >= 1) {
                const Bigint& p0 = t_end0(j - 1, b - 1);
                if (p0 != 0) g[static_cast<std::size_t>(b)] += p0 * d(j, b - 1, c);
            }
            const Bigint& p1 = t_end1(j - 1, b);
            if (p1 != 0) g[static_cast<std::size_t>(b)] += p1 * d(j, b, c);
        }
        for (long b = 0; b <= f; ++b) {
            auto bi = static_cast<std::size_t>(b);
            nw0[bi] = w0[bi] + w1[bi];
            nw1[bi] = w1[bi] + g[bi];
            if (b >= 1) nw1[bi] += w0[bi - 1];
        }
        std::swap(w0, nw0);
        std::swap(w1, nw1);

        for (long b = 0; b <= f; ++b) {
            auto bi = static_cast<std::size_t>(b);
            if (w0[bi] != 0 && f - b - 1 >= 0) {
                const Bigint& suf = suffix_count(m - t, f - b - 1);
                if (suf != 0) {
                    tmp = d(t, b, f - b - 1);
                    tmp *= suf;
                    tmp *= w0[bi];
                    off += tmp;
                }
            }
            if (w1[bi] != 0) {
                const Bigint& suf = suffix_count(m - t, f - b);
                if (suf != 0) {
                    tmp = d(t, b, f - b);
                    tmp *= suf;
                    tmp *= w1[bi];
                    off += tmp;
                }
            }
        }
    }

    off *= 2;
    diag += off;
    return diag;
}

Bigint inner_diff_sq_sum_reference(const PaddedPair& pair, CountProfile profile,
                                   const FcClassTable& fc_table, const PascalTable& table) {
    if (!profile_in_range(pair, profile)) return 0;
    const long m = profile.m;
    const long f = profile.f;
    if (fc_table.max_l() < m) throw std::invalid_argument("reference: fc_table too small");
    DiffTerm d{table, pair.k, m};

    Bigint total = 0;
    Bigint tmp;
    for (long j = 1; j <= m; ++j) {
        for (int c1 = 0; c1 <= 1; ++c1) {
            for (long a = 0; a <= f; ++a) {
                const Bigint& prefix_cnt = fc_table.count(j - 1, a, c1);
                if (prefix_cnt == 0) continue;
                const long bp = a + (c1 == 0 ? 1 : 0);  // f_c consumed through w_j
                const long cj = f - bp;
                if (cj < 0) continue;
                Bigint dj = d(j, a, cj);

                // t = j
                Bigint suffix_cnt = fc_table.count(m - j, cj, LastBit::any);
                if (suffix_cnt != 0) {
                    tmp = dj * dj;
                    tmp *= prefix_cnt;
                    tmp *= suffix_cnt;
                    total += tmp;
                }

                // t > j
                for (long t = j + 1; t <= m; ++t) {
                    for (int c2 = 0; c2 <= 1; ++c2) {
                        for (long b = bp; b <= f; ++b) {
                            const Bigint& mid_cnt = fc_table.count(t - 1 - j, b - bp, c2);
                            if (mid_cnt == 0) continue;
                            const long ct = f - b - (c2 == 0 ? 1 : 0);
                            if (ct < 0) continue;
                            Bigint sfx = fc_table.count(m - t, ct, LastBit::any);
                            if (sfx == 0) continue;
                            tmp = d(t, b, ct);
                            tmp *= dj;
                            tmp *= prefix_cnt;
                            tmp *= mid_cnt;
                            tmp *= sfx;
                            tmp *= 2;
                            total += tmp;
                        }
                    }
                }
            }
        }
    }
    return total;
}

Bigint inner_diff_sq_bruteforce(const PaddedPair& pair, CountProfile profile) {
    if (!profile_in_range(pair, profile)) return 0;
    const long m = profile.m;
    if (m > 30) throw infeasible_error("inner_diff_sq_bruteforce: 2^m enumeration needs m <= 30");
    Bigint total = 0;
    for (std::uint64_t bits = 0; bits < (1ull << m); ++bits) {
        BitString w = BitString::from_value(bits, static_cast<int>(m));
        if (contiguous_01_count(w) != profile.f) continue;
        Bigint diff = subsequence_count_oracle(w, pair.x) - subsequence_count_oracle(w, pair.y);
        total += diff * diff;
    }
    return total;
}

namespace {

std::vector<CountProfile> profile_grid(const PaddedPair& pair, bool windowed, const ESetSpec& eset) {
    std::vector<CountProfile> grid;
    for (long m = 0; m <= pair.n; ++m) {
        for (long f = 0; f <= m / 2; ++f) {
            if (windowed && !eset.contains(m, f)) continue;
            grid.push_back({m, f});
        }
    }
    return grid;
}

}  // namespace

SurrogateReport surrogate_distance(const PaddedPair& pair, bool windowed, bool paper_weights,
                                   int threads) {
    SurrogateReport report;
    report.k = pair.k;
    report.n = pair.n;
    report.windowed = windowed;
    report.weight_convention = paper_weights ? "printed" : "corrected";
    ESetSpec eset = ESetSpec::for_pair(pair.k);
    report.radius = eset.radius;

    PascalTable table(pair.n + 2);
    std::vector<CountProfile> grid = profile_grid(pair, windowed, eset);
    const long avoid_pad = paper_weights ? 2 * pair.k : 2 * pair.k + 1;

    auto contributions = run_chunked<std::vector<double>>(
        grid.size(), 4, threads, [&](std::size_t begin, std::size_t end) {
            std::vector<double> out;
            out.reserve(end - begin);
            for (std::size_t i = begin; i < end; ++i) {
                Bigint s = inner_diff_sq_sum(pair, grid[i], table);
                if (s == 0) {
                    out.push_back(0.0);
                    continue;
                }
                Bigint denom = table.binomial(avoid_pad + grid[i].f, grid[i].m);
                if (denom == 0) {
                    // Boundary profiles (m = 2k+2+f) fall outside the weight's
                    // validity: the bound nu >= 2^-n C(2k+1+f, m) is vacuous
                    // there. Skip and report, mirroring the support convention
                    // of the chi-square sums.
                    out.push_back(std::numeric_limits<double>::quiet_NaN());
                    continue;
                }
                mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(),
                             static_cast<mp_bitcnt_t>(pair.n));
                out.push_back(bigint_ratio_to_double(s, denom));
            }
            return out;
        });

    NeumaierSum total;
    std::size_t idx = 0;
    for (const auto& chunk : contributions) {
        for (double c : chunk) {
            if (std::isnan(c)) {
                report.skipped_profiles.emplace_back(grid[idx].m, grid[idx].f);
            } else if (c != 0.0) {
                report.per_profile.emplace_back(grid[idx].m, grid[idx].f, c);
                total.add(c);
            }
            ++idx;
        }
    }
    report.total = total.value();
    return report;
}

std::pair<double, double> fit_loglog(const std::vector<std::pair<double, double>>& points) {
    const std::size_t n = points.size();
    if (n < 2) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
        mx += std::log(x);
        my += std::log(y);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        double dx = std::log(x) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    double slope = sxy / sxx;
    if (n == 2) return {slope, 0.0};
    double ssr = 0;
    double intercept = my - slope * mx;
    for (const auto& [x, y] : points) {
        double r = std::log(y) - (intercept + slope * std::log(x));
        ssr += r * r;
    }
    double se = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    return {slope, se};
}

ScalingFit scaling_fit(const std::vector<long>& k_list, ScalingMethod method,
                       const ChannelSpec& spec, std::uint64_t mc_samples, bool windowed,
                       int threads) {
    if (k_list.size() < 3) throw std::invalid_argument("scaling_fit: need at least 3 points");
    ScalingFit fit;
    fit.method = (method == ScalingMethod::exact_surrogate) ? "exact" : "mc";
    std::vector<std::pair<double, double>> log_points;
    for (long k : k_list) {
        PaddedPair pair = make_padded_pair(k);
        double value = 0.0;
        if (method == ScalingMethod::exact_surrogate) {
            value = surrogate_distance(pair, windowed, false, threads).total;
        } else {
            value = chi_sq_monte_carlo(pair, spec.q, mc_samples, spec, threads).estimate;
        }
        log_points.emplace_back(static_cast<double>(pair.n), value);
        double slope_so_far = std::numeric_limits<double>::quiet_NaN();
        if (log_points.size() >= 2) slope_so_far = fit_loglog(log_points).first;
        fit.points.push_back({k, pair.n, value, slope_so_far});
    }
    auto [slope, se] = fit_loglog(log_points);
    fit.slope = slope;
    fit.stderr_ = se;
    return fit;
}

std::string SurrogateReport::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["n"] = n;
    j["windowed"] = windowed;
    j["radius"] = radius;
    j["weight_convention"] = weight_convention;
    j["total"] = total;
    nlohmann::json profiles = nlohmann::json::array();
    for (const auto& [m, f, contribution] : per_profile) profiles.push_back({m, f, contribution});
    j["per_profile"] = profiles;
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& [m, f] : skipped_profiles) skipped.push_back({m, f});
    j["skipped_profiles"] = skipped;
    return j.dump(2);
}

std::string ScalingFit::to_csv() const {
    std::ostringstream out;
    out << "n,k,method,value,slope_so_far\n";
    out.precision(17);
    for (const auto& p : points) {
        out << p.n << "," << p.k << "," << method << "," << p.value << "," << p.slope_so_far << "\n";
    }
    return out.str();
}

}  // namespace tracelab
