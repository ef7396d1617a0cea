#include "tracelab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tracelab/binomial.hpp"

namespace tracelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long floor_div(long num, long den) {
    long q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

long eta_times(double eta, long v) {
    double x = eta * static_cast<double>(v);
    long r = std::lround(x);
    if (std::fabs(x - static_cast<double>(r)) > 1e-9) {
        throw std::invalid_argument("stirling ratio: eta*A and eta*B must be integral");
    }
    return r;
}

// ln C(n, r) at 256-bit precision; -inf when the coefficient vanishes.
void mpfr_log_binomial(mpfr_t out, long n, long r) {
    if (n < 0 || r < 0 || r > n) {
        mpfr_set_inf(out, -1);
        return;
    }
    mpfr_t t;
    mpfr_init2(t, 256);
    mpfr_set_ui(out, static_cast<unsigned long>(n) + 1, MPFR_RNDN);
    mpfr_lngamma(out, out, MPFR_RNDN);
    mpfr_set_ui(t, static_cast<unsigned long>(r) + 1, MPFR_RNDN);
    mpfr_lngamma(t, t, MPFR_RNDN);
    mpfr_sub(out, out, t, MPFR_RNDN);
    mpfr_set_ui(t, static_cast<unsigned long>(n - r) + 1, MPFR_RNDN);
    mpfr_lngamma(t, t, MPFR_RNDN);
    mpfr_sub(out, out, t, MPFR_RNDN);
    mpfr_clear(t);
}

struct RatioArgs {
    long n1, r1, n2, r2, n1c, r1c, n2c, r2c;
};

RatioArgs ratio_args(const StirlingRatioParams& p) {
    long eA = eta_times(p.eta, p.A);
    long eB = eta_times(p.eta, p.B);
    return {p.A + p.delta, eA + p.sigma, p.B - p.delta, eB - p.sigma, p.A, eA, p.B, eB};
}

}  // namespace

bool stirling_params_valid(const StirlingRatioParams& p) {
    if (p.A <= 0 || p.B <= 0) return false;
    if (p.eta <= 0.05 || p.eta >= 0.95) return false;
    RatioArgs a = ratio_args(p);
    auto ok = [](long n, long r) { return n >= 0 && r >= 0 && r <= n; };
    return ok(a.n1, a.r1) && ok(a.n2, a.r2) && ok(a.n1c, a.r1c) && ok(a.n2c, a.r2c);
}

double stirling_pair_ratio_approx(const StirlingRatioParams& p) {
    if (p.eta <= 0.05 || p.eta >= 0.95) {
        throw std::invalid_argument("stirling_pair_ratio_approx: eta must lie in (0.05, 0.95)");
    }
    if (p.A <= 0 || p.B <= 0) throw std::invalid_argument("stirling_pair_ratio_approx: A, B > 0");
    const double ds = static_cast<double>(p.delta - p.sigma);
    const double s = static_cast<double>(p.sigma);
    const double d = static_cast<double>(p.delta);
    const double A = static_cast<double>(p.A);
    const double B = static_cast<double>(p.B);
    double expo = 0.5 * ds * ds / ((1.0 - p.eta) * A) + 0.5 * s * s / (p.eta * A) - 0.5 * d * d / A +
                  0.5 * ds * ds / ((1.0 - p.eta) * B) + 0.5 * s * s / (p.eta * B) - 0.5 * d * d / B;
    return std::exp(expo);
}

double stirling_pair_ratio_exact_reciprocal(const StirlingRatioParams& p) {
    RatioArgs a = ratio_args(p);
    mpfr_t acc, t;
    mpfr_init2(acc, 256);
    mpfr_init2(t, 256);
    mpfr_log_binomial(acc, a.n1c, a.r1c);
    mpfr_log_binomial(t, a.n2c, a.r2c);
    mpfr_add(acc, acc, t, MPFR_RNDN);
    mpfr_log_binomial(t, a.n1, a.r1);
    mpfr_sub(acc, acc, t, MPFR_RNDN);
    mpfr_log_binomial(t, a.n2, a.r2);
    mpfr_sub(acc, acc, t, MPFR_RNDN);
    mpfr_exp(acc, acc, MPFR_RNDN);
    double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(acc);
    mpfr_clear(t);
    return out;
}

double stirling_pair_ratio_raw(const StirlingRatioParams& p) {
    double r = stirling_pair_ratio_exact_reciprocal(p);
    return r == 0.0 ? kInf : 1.0 / r;
}

StirlingAuditGrid StirlingAuditGrid::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    StirlingAuditGrid grid;
    if (j.contains("A_list")) grid.A_list = j["A_list"].get<std::vector<long>>();
    if (j.contains("eta")) grid.eta = j["eta"].get<double>();
    if (j.contains("delta_range")) {
        auto r = j["delta_range"].get<std::vector<long>>();
        grid.delta_range = std::make_pair(r.at(0), r.at(1));
    }
    if (j.contains("sigma_range")) {
        auto r = j["sigma_range"].get<std::vector<long>>();
        grid.sigma_range = std::make_pair(r.at(0), r.at(1));
    }
    return grid;
}

AuditReport stirling_pair_ratio_audit(const StirlingAuditGrid& grid) {
    AuditReport report;
    report.description = "two-sided Stirling binomial-ratio audit";
    for (long A : grid.A_list) {
        long cube = std::max<long>(1, std::lround(std::cbrt(static_cast<double>(A))));
        auto [dlo, dhi] = grid.delta_range.value_or(std::make_pair(-cube, cube));
        auto [slo, shi] = grid.sigma_range.value_or(std::make_pair(-cube, cube));
        for (long delta = dlo; delta <= dhi; ++delta) {
            for (long sigma = slo; sigma <= shi; ++sigma) {
                StirlingRatioParams p{A, A, grid.eta, delta, sigma};
                if (!stirling_params_valid(p)) continue;
                double exact = stirling_pair_ratio_exact_reciprocal(p);
                double approx = stirling_pair_ratio_approx(p);
                double dev = std::fabs(approx / exact - 1.0);
                double minab = static_cast<double>(std::min(p.A, p.B));
                double cubic = std::pow(std::fabs(static_cast<double>(delta)), 3) +
                               std::pow(std::fabs(static_cast<double>(sigma)), 3) +
                               std::pow(std::fabs(static_cast<double>(delta - sigma)), 3);
                double scale = cubic / (minab * minab) + 4.0 / minab;
                double normalized = dev / scale;
                ++report.points;
                if (dev > report.max_relative_deviation) {
                    report.max_relative_deviation = dev;
                    report.argmax = p;
                }
                report.fitted_constant = std::max(report.fitted_constant, normalized);
                report.eq_corollary_max = std::max(report.eq_corollary_max, stirling_pair_ratio_raw(p));
            }
        }
    }
    return report;
}

RangeCheckResult relevant_range_check(long k, long m, long f, long a, long j) {
    RangeCheckResult out;
    Bigint lhs = binomial_exact(k + a, j - 1) * binomial_exact(k + 1 + f - a, m - j);
    Bigint center = binomial_exact(4 * k / 3, m / 2);
    double lnk = std::log(static_cast<double>(k));
    out.log_threshold = -lnk * lnk + 2.0 * bigint_log(center);
    out.log_lhs = lhs == 0 ? -kInf : bigint_log(lhs);
    out.lhs = lhs.get_d();
    out.threshold = std::exp(out.log_threshold);
    out.flagged = out.log_lhs > out.log_threshold;
    return out;
}

ParityPairingResult parity_pairing_check(long k, long m, long f, long a, long j, long t) {
    if (t <= j + 5) throw std::invalid_argument("parity_pairing_check: need t > j + 5");
    ParityPairingResult out;
    const long u = t - j;
    const double lnk = std::log(static_cast<double>(k));
    const double width = std::sqrt(static_cast<double>(u)) * lnk;
    const double center = static_cast<double>(a) + static_cast<double>(u) / 3.0;

    out.lhs_sum = 0;
    long blo = static_cast<long>(std::ceil(center - width));
    long bhi = static_cast<long>(std::floor(center + width));
    for (long b = blo; b <= bhi; ++b) {
        out.lhs_sum += binomial_exact(u - 1, 2 * b - 2 * a - 1) * binomial_exact(m - t + 1, 2 * f - 2 * b - 1);
    }

    out.rhs_sum = 0;
    long clo = static_cast<long>(std::ceil(2.0 * center - 2.0 * width));
    long chi = static_cast<long>(std::floor(2.0 * center + 2.0 * width));
    for (long b = clo; b <= chi; ++b) {
        out.rhs_sum += binomial_exact(u - 1, b - 2 * a - 1) * binomial_exact(m - t + 1, 2 * f - b - 1);
    }

    if (out.rhs_sum == 0) {
        out.ratio = kInf;
        out.normalized_deviation = kInf;
        return out;
    }
    out.ratio = bigint_ratio_to_double(out.lhs_sum, out.rhs_sum);
    out.normalized_deviation = std::fabs(out.ratio - 0.5) * static_cast<double>(u) / (lnk * lnk);
    return out;
}

double weighted_parity_identity_gap(long k, long m, long f, long a, long j, long t, long b) {
    (void)k;
    const long u = t - j;
    Bigint lhs3 = 2 * binomial_exact(u - 1, 2 * b - 2 * a - 1) * binomial_exact(m - t + 1, 2 * f - 2 * b + 1) +
                  binomial_exact(u - 1, 2 * b - 2 * a + 1) * binomial_exact(m - t + 1, 2 * f - 2 * b - 1);
    Bigint rhs = binomial_exact(u - 1, 2 * b - 2 * a) * binomial_exact(m - t + 1, 2 * f - 2 * b);
    if (rhs == 0) return kInf;
    Rational ratio(lhs3, 3 * rhs);
    ratio.canonicalize();
    return std::fabs(rational_to_double(ratio) - 1.0);
}

namespace {

struct SymArgs {
    long n1, r1, n2, r2;
};

// Arguments of one side's product; shifts carried in thirds and floored.
SymArgs display_args(const SymmetryParams& p, SymmetryDisplay which, bool reflected) {
    const long f2 = p.f / 2;
    const long m2 = p.m / 2;
    if (which == SymmetryDisplay::padded_profile) {
        long top3 = reflected ? p.delta - 5 * p.eps : p.delta + 3 * p.eps;
        long bot = reflected ? p.delta - 2 * p.eps : p.delta;
        return {p.k + f2 + floor_div(top3, 3), m2 + bot,
                p.k + f2 + floor_div(-top3, 3), m2 - bot};
    }
    long top = reflected ? 2 * p.eps - p.delta : p.delta;
    long bot3 = reflected ? 10 * p.eps - 2 * p.delta : 2 * p.delta + 6 * p.eps;
    return {m2 + top, p.f + floor_div(bot3, 3), m2 - top, p.f + floor_div(-bot3, 3)};
}

}  // namespace

Rational reflection_symmetry_ratio(const SymmetryParams& p, SymmetryDisplay which) {
    SymArgs lhs = display_args(p, which, false);
    SymArgs rhs = display_args(p, which, true);
    Bigint num = binomial_exact(lhs.n1, lhs.r1) * binomial_exact(lhs.n2, lhs.r2);
    Bigint den = binomial_exact(rhs.n1, rhs.r1) * binomial_exact(rhs.n2, rhs.r2);
    if (den == 0) {
        if (num == 0) return Rational(1);
        throw std::domain_error("reflection_symmetry_ratio: reflected product vanishes");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

double reflection_symmetry_check(const SymmetryParams& p, SymmetryDisplay which) {
    double lnk = std::log(static_cast<double>(p.k));
    Rational ratio = reflection_symmetry_ratio(p, which);
    return std::fabs(rational_to_double(ratio) - 1.0) * std::sqrt(static_cast<double>(p.k)) /
           (lnk * lnk * lnk);
}

std::string AuditReport::to_json() const {
    nlohmann::json j;
    j["description"] = description;
    j["points"] = points;
    j["max_relative_deviation"] = max_relative_deviation;
    j["argmax"] = {{"A", argmax.A}, {"B", argmax.B}, {"eta", argmax.eta},
                   {"delta", argmax.delta}, {"sigma", argmax.sigma}};
    j["fitted_constant"] = fitted_constant;
    j["eq_corollary_max"] = eq_corollary_max;
    return j.dump(2);
}

std::string SweepReport::to_json() const {
    nlohmann::json j;
    j["description"] = description;
    j["points"] = points;
    j["max_normalized_deviation"] = max_normalized_deviation;
    j["argmax"] = argmax_desc;
    return j.dump(2);
}

SweepReport parity_pairing_sweep(const std::vector<long>& k_list) {
    SweepReport report;
    report.description = "parity pairing: even-b sum vs half of all-b sum";
    for (long k : k_list) {
        const long m = 2 * k;
        const long f = (2 * k) / 3;
        const long a = f / 2;
        for (long u : {7L, 11L, 17L, 25L, 41L, 61L}) {
            if (u > m / 2) continue;
            long j = m / 2 - u / 2;
            long t = j + u;
            ParityPairingResult r = parity_pairing_check(k, m, f, a, j, t);
            ++report.points;
            if (r.normalized_deviation > report.max_normalized_deviation) {
                report.max_normalized_deviation = r.normalized_deviation;
                std::ostringstream os;
                os << "k=" << k << " u=" << u;
                report.argmax_desc = os.str();
            }
        }
    }
    return report;
}

SweepReport reflection_sweep(const std::vector<long>& k_list, SymmetryDisplay which) {
    SweepReport report;
    report.description = which == SymmetryDisplay::padded_profile
                             ? "reflection symmetry of the padded-profile product"
                             : "reflection symmetry of the count-profile product";
    for (long k : k_list) {
        const long m = 2 * k;
        const long f = (2 * k) / 3;
        long radius = static_cast<long>(std::sqrt(static_cast<double>(k)) *
                                        std::log(static_cast<double>(k)));
        radius -= radius % 3;
        for (long delta = -radius; delta <= radius; delta += std::max<long>(3, radius / 5)) {
            for (long eps = -radius; eps <= radius; eps += std::max<long>(3, radius / 5)) {
                SymmetryParams p{k, m, f, delta, eps};
                Rational ratio = reflection_symmetry_ratio(p, which);
                if (ratio == 0) continue;
                double dev = reflection_symmetry_check(p, which);
                ++report.points;
                if (dev > report.max_normalized_deviation) {
                    report.max_normalized_deviation = dev;
                    std::ostringstream os;
                    os << "k=" << k << " delta=" << delta << " eps=" << eps;
                    report.argmax_desc = os.str();
                }
            }
        }
    }
    return report;
}

}  // namespace tracelab
