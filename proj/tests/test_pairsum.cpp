#include <doctest.h>

#include <cmath>

#include "tracelab/pairsum.hpp"
#include "tracelab/verify.hpp"
#include "testutil.hpp"

using namespace tracelab;

TEST_CASE("per-profile sums on pinned k=1 examples") {
    PaddedPair pair = make_padded_pair(1);
    PascalTable table(pair.n + 2);
    CHECK(inner_diff_sq_sum(pair, {2, 1}, table) == 1);  // only w = "01", (7-8)^2
    CHECK(inner_diff_sq_sum(pair, {1, 0}, table) == 0);  // f("0"), f("1") agree across the pair
    CHECK(inner_diff_sq_sum(pair, {0, 0}, table) == 0);
    CHECK(inner_diff_sq_sum(pair, {3, 5}, table) == 0);  // out-of-range profile
}

TEST_CASE("all three evaluators agree exhaustively for k <= 3") {
    VerifyResult r = verify_pairsum(3, 1);
    INFO(r.detail);
    CHECK(r.failures == 0);
}

TEST_CASE("production evaluator matches the casework reference at k = 4 and 5") {
    for (long k : {4L, 5L}) {
        PaddedPair pair = make_padded_pair(k);
        PascalTable table(pair.n + 2);
        FcClassTable fc_table(pair.n);
        for (long m = 0; m <= pair.n; ++m) {
            for (long f = 0; f <= m / 2; ++f) {
                CountProfile profile{m, f};
                CHECK(inner_diff_sq_sum(pair, profile, table) ==
                      inner_diff_sq_sum_reference(pair, profile, fc_table, table));
            }
        }
    }
}

TEST_CASE("surrogate: windowed is a sub-sum of unwindowed") {
    for (long k : {3L, 5L, 8L}) {
        PaddedPair pair = make_padded_pair(k);
        double windowed = surrogate_distance(pair, true).total;
        double unwindowed = surrogate_distance(pair, false).total;
        CHECK(windowed <= unwindowed + 1e-18);
        CHECK(unwindowed > 0.0);
    }
}

TEST_CASE("surrogate decreases in k") {
    // Strictly decreasing once past the tiny-k transient (the value peaks at
    // k = 3 and falls monotonically afterwards).
    double prev = std::numeric_limits<double>::infinity();
    for (long k = 3; k <= 10; ++k) {
        PaddedPair pair = make_padded_pair(k);
        double v = surrogate_distance(pair, false).total;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("uncorrected weights only loosen the bound") {
    PaddedPair pair = make_padded_pair(4);
    double corrected = surrogate_distance(pair, false, false).total;
    double printed = surrogate_distance(pair, false, true).total;
    CHECK(printed >= corrected);
}

TEST_CASE("per-profile contributions sum to the reported total") {
    PaddedPair pair = make_padded_pair(5);
    SurrogateReport r = surrogate_distance(pair, false);
    double sum = 0;
    for (const auto& [m, f, c] : r.per_profile) {
        (void)m;
        (void)f;
        sum += c;
    }
    CHECK(sum == doctest::Approx(r.total).epsilon(1e-9));
    CHECK(r.to_json().find("per_profile") != std::string::npos);
}

TEST_CASE("loglog fit recovers a synthetic power law exactly") {
    std::vector<std::pair<double, double>> points;
    for (double n : {51.0, 75.0, 103.0, 151.0, 203.0}) {
        points.emplace_back(n, 3.7 * std::pow(n, -1.5));
    }
    auto [slope, se] = fit_loglog(points);
    CHECK(std::fabs(slope - (-1.5)) <= 1e-9);
    CHECK(se <= 1e-9);
}

TEST_CASE("scaling_fit input validation and csv shape") {
    CHECK_THROWS_AS(scaling_fit({1, 2}, ScalingMethod::exact_surrogate, {0.5, 0}),
                    std::invalid_argument);
    ScalingFit fit = scaling_fit({3, 5, 8}, ScalingMethod::exact_surrogate, {0.5, 0}, 0, false, 1);
    CHECK(fit.points.size() == 3);
    std::string csv = fit.to_csv();
    CHECK(csv.rfind("n,k,method,value,slope_so_far\n", 0) == 0);
    CHECK(std::isnan(fit.points[0].slope_so_far));
    CHECK_FALSE(std::isnan(fit.points[2].slope_so_far));
}

TEST_CASE("parallel surrogate evaluation is bit-stable") {
    PaddedPair pair = make_padded_pair(6);
    SurrogateReport serial = surrogate_distance(pair, false, false, 1);
    SurrogateReport parallel = surrogate_distance(pair, false, false, 4);
    CHECK(serial.total == parallel.total);
    CHECK(serial.per_profile == parallel.per_profile);
}
