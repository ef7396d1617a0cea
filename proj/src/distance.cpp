#include "tracelab/distance.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "tracelab/parallel.hpp"
#include "tracelab/summation.hpp"

namespace tracelab {

ESetSpec ESetSpec::for_pair(long k) {
    if (k < 1) throw std::invalid_argument("ESetSpec: k must be >= 1");
    long radius = static_cast<long>(std::floor(std::sqrt(static_cast<double>(k)) *
                                               std::log(static_cast<double>(k))));
    return ESetSpec{k, radius};
}

ESetSpec ESetSpec::with_radius(long k, long radius) {
    if (k < 1) throw std::invalid_argument("ESetSpec: k must be >= 1");
    return ESetSpec{k, radius};
}

namespace {

// Accumulators for one pass over the whole trace space.
struct EnumAccum {
    NeumaierSum hellinger;
    NeumaierSum tv;
    NeumaierSum chi_restricted;
    NeumaierSum chi_unrestricted;
    NeumaierSum diff_sq;
    NeumaierSum mu_in_E;
    NeumaierSum nu_in_E;
    std::map<std::pair<long, long>, NeumaierSum> profile_chi;
    NeumaierSum support_exception_mass;  // mu-mass of E-words outside supp(nu)

    void merge(const EnumAccum& o) {
        hellinger.merge(o.hellinger);
        tv.merge(o.tv);
        chi_restricted.merge(o.chi_restricted);
        chi_unrestricted.merge(o.chi_unrestricted);
        diff_sq.merge(o.diff_sq);
        mu_in_E.merge(o.mu_in_E);
        nu_in_E.merge(o.nu_in_E);
        for (const auto& [profile, sum] : o.profile_chi) profile_chi[profile].merge(sum);
        support_exception_mass.merge(o.support_exception_mass);
    }

    void visit(long m, long fc, double mu, double nu, const ESetSpec* eset) {
        double rs = std::sqrt(mu) - std::sqrt(nu);
        hellinger.add(rs * rs);
        tv.add(std::fabs(mu - nu) * 0.5);
        diff_sq.add((mu - nu) * (mu - nu));
        if (nu > 0.0) {
            double d = mu - nu;
            chi_unrestricted.add(d * d / nu);
        }
        if (eset != nullptr && eset->contains(m, fc)) {
            mu_in_E.add(mu);
            nu_in_E.add(nu);
            if (nu == 0.0) {
                // Outside supp(nu): excluded from the chi-square by the same
                // support convention the sampling estimator uses. Nonzero mass
                // here only happens at small k on the m = 2k+2+f_c boundary.
                if (mu > 0.0) support_exception_mass.add(mu);
            } else {
                double d = mu - nu;
                double term = d * d / nu;
                chi_restricted.add(term);
                profile_chi[{m, fc}].add(term);
            }
        }
    }
};

// Depth-first walk over every w in {0,1}^{<=n}, maintaining for both source
// strings the count of embeddings of the current prefix ending at each
// position (64-bit; counts are bounded by C(n, m), safe for n <= 24).
class PairWalker {
  public:
    PairWalker(const BitString& x, const BitString& y, double q, const ESetSpec* eset)
        : x_(x), y_(y), n_(static_cast<long>(x.size())), eset_(eset) {
        pre_.resize(static_cast<std::size_t>(n_) + 1);
        for (long m = 0; m <= n_; ++m) {
            pre_[static_cast<std::size_t>(m)] = std::pow(1.0 - q, static_cast<double>(m)) *
                                                std::pow(q, static_cast<double>(n_ - m));
        }
        state_x_.assign(static_cast<std::size_t>(n_) + 1,
                        std::vector<std::uint64_t>(static_cast<std::size_t>(n_) + 1, 0));
        state_y_ = state_x_;
        state_x_[0][0] = 1;
        state_y_[0][0] = 1;
        fc_.assign(static_cast<std::size_t>(n_) + 1, 0);
        last_.assign(static_cast<std::size_t>(n_) + 1, -1);
    }

    // Visits the root (empty trace) plus all words of depth in [1, limit).
    void walk_shallow(EnumAccum& acc, long limit) {
        acc.visit(0, 0, pre_[0], pre_[0], eset_);
        if (limit >= 2) descend(acc, 0, limit - 1);
    }

    // Visits the subtree rooted at the given prefix (inclusive).
    void walk_subtree(EnumAccum& acc, std::uint64_t prefix_bits, long prefix_len) {
        for (long d = 0; d < prefix_len; ++d) {
            if (!push(static_cast<int>((prefix_bits >> d) & 1u), d)) return;
        }
        visit_node(acc, prefix_len);
        descend(acc, prefix_len, n_);
    }

  private:
    // Extends the prefix by bit c; returns false when no completion of this
    // prefix can embed in either string (both counts zero), pruning the walk.
    bool push(int c, long depth) {
        std::uint64_t fx = advance(x_, state_x_[static_cast<std::size_t>(depth)],
                                   state_x_[static_cast<std::size_t>(depth) + 1], c);
        std::uint64_t fy = advance(y_, state_y_[static_cast<std::size_t>(depth)],
                                   state_y_[static_cast<std::size_t>(depth) + 1], c);
        fx_top_ = fx;
        fy_top_ = fy;
        fc_[static_cast<std::size_t>(depth) + 1] =
            fc_[static_cast<std::size_t>(depth)] + (last_[static_cast<std::size_t>(depth)] == 0 && c == 1 ? 1 : 0);
        last_[static_cast<std::size_t>(depth) + 1] = c;
        return fx != 0 || fy != 0;
    }

    std::uint64_t advance(const BitString& z, const std::vector<std::uint64_t>& cur,
                          std::vector<std::uint64_t>& next, int c) const {
        std::uint64_t run = 0;
        std::uint64_t total = 0;
        next[0] = 0;
        for (long p = 0; p < n_; ++p) {
            run += cur[static_cast<std::size_t>(p)];
            std::uint64_t v = (z.bit(static_cast<std::size_t>(p)) == c) ? run : 0;
            next[static_cast<std::size_t>(p) + 1] = v;
            total += v;
        }
        return total;
    }

    void visit_node(EnumAccum& acc, long depth) {
        double scale = pre_[static_cast<std::size_t>(depth)];
        acc.visit(depth, fc_[static_cast<std::size_t>(depth)],
                  static_cast<double>(fx_top_) * scale, static_cast<double>(fy_top_) * scale, eset_);
    }

    void descend(EnumAccum& acc, long depth, long max_depth) {
        if (depth >= max_depth) return;
        for (int c = 0; c <= 1; ++c) {
            if (!push(c, depth)) continue;
            visit_node(acc, depth + 1);
            descend(acc, depth + 1, max_depth);
        }
    }

    const BitString& x_;
    const BitString& y_;
    long n_;
    const ESetSpec* eset_;
    std::vector<double> pre_;
    std::vector<std::vector<std::uint64_t>> state_x_;
    std::vector<std::vector<std::uint64_t>> state_y_;
    std::vector<long> fc_;
    std::vector<int> last_;
    std::uint64_t fx_top_ = 1;
    std::uint64_t fy_top_ = 1;
};

EnumAccum enumerate_pair_measures(const BitString& x, const BitString& y, double q,
                                  const ESetSpec* eset, int threads) {
    if (x.size() != y.size()) throw std::invalid_argument("enumerate_pair_measures: length mismatch");
    const long n = static_cast<long>(x.size());
    if (n > kBruteForceMaxN) {
        throw infeasible_error("brute-force distance requires n <= " + std::to_string(kBruteForceMaxN));
    }

    EnumAccum total;
    if (n < 14) {  // serial for small sizes
        PairWalker walker(x, y, q, eset);
        walker.walk_shallow(total, n + 1);
        return total;
    }

    const long split_depth = 8;
    {
        PairWalker walker(x, y, q, eset);
        walker.walk_shallow(total, split_depth);
    }
    const std::uint64_t n_subtrees = 1ull << split_depth;
    auto chunks = run_chunked<EnumAccum>(
        n_subtrees, 1, threads, [&](std::size_t begin, std::size_t /*end*/) {
            EnumAccum acc;
            PairWalker walker(x, y, q, eset);
            walker.walk_subtree(acc, begin, split_depth);
            return acc;
        });
    for (const auto& acc : chunks) total.merge(acc);
    return total;
}

}  // namespace

double hellinger_sq_bruteforce(const BitString& x, const BitString& y, double q, int threads) {
    return enumerate_pair_measures(x, y, q, nullptr, threads).hellinger.value();
}

double tv_bruteforce(const BitString& x, const BitString& y, double q, int threads) {
    return enumerate_pair_measures(x, y, q, nullptr, threads).tv.value();
}

double chi_sq_restricted_bruteforce(const PaddedPair& pair, double q, const ESetSpec& eset,
                                    int threads) {
    return enumerate_pair_measures(pair.x, pair.y, q, &eset, threads).chi_restricted.value();
}

double chi_sq_unrestricted_bruteforce(const BitString& x, const BitString& y, double q,
                                      int threads) {
    return enumerate_pair_measures(x, y, q, nullptr, threads).chi_unrestricted.value();
}

double sum_sq_diff_bruteforce(const BitString& x, const BitString& y, double q, int threads) {
    return enumerate_pair_measures(x, y, q, nullptr, threads).diff_sq.value();
}

double eset_mass_bruteforce(const PaddedPair& pair, PairSide side, double q, const ESetSpec& eset,
                            int threads) {
    EnumAccum acc = enumerate_pair_measures(pair.x, pair.y, q, &eset, threads);
    return side == PairSide::x ? acc.mu_in_E.value() : acc.nu_in_E.value();
}

McEstimate eset_mass_mc(const PaddedPair& pair, PairSide side, double q, const ESetSpec& eset,
                        std::uint64_t samples, const ChannelSpec& spec, int threads) {
    if (samples == 0) throw std::invalid_argument("eset_mass_mc: samples must be positive");
    const BitString& source = (side == PairSide::x) ? pair.x : pair.y;
    ChannelSpec local = spec;
    local.q = q;
    auto chunks = run_chunked<std::uint64_t>(
        samples, 4096, threads, [&](std::size_t begin, std::size_t end) {
            std::uint64_t hits = 0;
            for (std::size_t i = begin; i < end; ++i) {
                BitString trace = sample_trace(source, local, i);
                if (eset.contains(trace)) ++hits;
            }
            return hits;
        });
    std::uint64_t hits = 0;
    for (auto h : chunks) hits += h;
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(samples));
    return {p, se, samples};
}

namespace {

McEstimate mc_from_moments(const std::vector<std::pair<NeumaierSum, NeumaierSum>>& chunks,
                           std::uint64_t samples) {
    NeumaierSum sum, sum_sq;
    for (const auto& [s, s2] : chunks) {
        sum.merge(s);
        sum_sq.merge(s2);
    }
    double mean = sum.value() / static_cast<double>(samples);
    double var = sum_sq.value() / static_cast<double>(samples) - mean * mean;
    double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
    return {mean, se, samples};
}

}  // namespace

McEstimate chi_sq_monte_carlo(const PaddedPair& pair, double q, std::uint64_t samples,
                              const ChannelSpec& spec, int threads) {
    if (samples < 1000) throw std::invalid_argument("chi_sq_monte_carlo: need samples >= 1000");
    BinomialTable table(pair.n + 2);
    ChannelSpec local = spec;
    local.q = q;
    auto chunks = run_chunked<std::pair<NeumaierSum, NeumaierSum>>(
        samples, 4096, threads, [&](std::size_t begin, std::size_t end) {
            NeumaierSum s, s2;
            for (std::size_t i = begin; i < end; ++i) {
                BitString w = sample_trace(pair.y, local, i);
                double lx = log_padded_subseq_count(pair, w, PairSide::x, table);
                double ly = log_padded_subseq_count(pair, w, PairSide::y, table);
                double r = std::exp(lx - ly);  // prefactors cancel in mu/nu
                double v = (r - 1.0) * (r - 1.0);
                s.add(v);
                s2.add(v * v);
            }
            return std::make_pair(s, s2);
        });
    return mc_from_moments(chunks, samples);
}

McEstimate chi_sq_monte_carlo_general(const BitString& x, const BitString& y, double q,
                                      std::uint64_t samples, const ChannelSpec& spec, int threads) {
    if (samples < 1000) throw std::invalid_argument("chi_sq_monte_carlo: need samples >= 1000");
    if (x.size() != y.size()) throw std::invalid_argument("chi_sq_monte_carlo: length mismatch");
    ChannelSpec local = spec;
    local.q = q;
    auto chunks = run_chunked<std::pair<NeumaierSum, NeumaierSum>>(
        samples, 4096, threads, [&](std::size_t begin, std::size_t end) {
            NeumaierSum s, s2;
            for (std::size_t i = begin; i < end; ++i) {
                BitString w = sample_trace(y, local, i);
                Bigint fx = subsequence_count_oracle(w, x);
                Bigint fy = subsequence_count_oracle(w, y);
                double r = bigint_ratio_to_double(fx, fy);
                double v = (r - 1.0) * (r - 1.0);
                s.add(v);
                s2.add(v * v);
            }
            return std::make_pair(s, s2);
        });
    return mc_from_moments(chunks, samples);
}

DistanceReport distance_report_bruteforce(const PaddedPair& pair, double q, const ESetSpec& eset,
                                          int threads) {
    EnumAccum acc = enumerate_pair_measures(pair.x, pair.y, q, &eset, threads);
    DistanceReport report;
    report.k = pair.k;
    report.n = pair.n;
    report.q = q;
    report.radius = eset.radius;
    report.hellinger_sq = acc.hellinger.value();
    report.tv = acc.tv.value();
    report.chi_sq_restricted = acc.chi_restricted.value();
    report.mu_mass_outside_E = 1.0 - acc.mu_in_E.value();
    report.nu_mass_outside_E = 1.0 - acc.nu_in_E.value();
    report.support_exception_mass = acc.support_exception_mass.value();
    for (const auto& [profile, sum] : acc.profile_chi) {
        report.per_profile.emplace_back(profile.first, profile.second, sum.value());
    }
    return report;
}

std::string DistanceReport::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["n"] = n;
    j["q"] = q;
    j["radius"] = radius;
    j["hellinger_sq"] = hellinger_sq;
    j["tv"] = tv;
    j["chi_sq_restricted"] = chi_sq_restricted;
    j["masses"] = {{"mu_outside_E", mu_mass_outside_E},
                   {"nu_outside_E", nu_mass_outside_E},
                   {"mu_on_E_outside_supp_nu", support_exception_mass}};
    nlohmann::json profiles = nlohmann::json::array();
    for (const auto& [m, f, contribution] : per_profile) {
        profiles.push_back({m, f, contribution});
    }
    j["per_profile"] = profiles;
    return j.dump(2);
}

}  // namespace tracelab
