#include "tracelab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracelab/asymptotics.hpp"
#include "tracelab/bitstring.hpp"
#include "tracelab/channel.hpp"
#include "tracelab/distance.hpp"
#include "tracelab/distinguisher.hpp"
#include "tracelab/pairsum.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/verify.hpp"
#include "tracelab/version.hpp"

namespace tracelab {

namespace {

using nlohmann::json;

// All output is buffered and written in one shot; runs with identical argv
// and seed are byte-identical.
void write_output(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::string header_comment(const json& config) {
    std::ostringstream os;
    os << "# tracelab " << kVersion << " " << version_hash() << "\n";
    os << "# config " << config.dump() << "\n";
    return os.str();
}

json with_version(const json& config) {
    json j;
    j["tool"] = "tracelab";
    j["version"] = kVersion;
    j["version_hash"] = version_hash();
    j["config"] = config;
    return j;
}

struct PairArgs {
    long k = 0;
    std::string x_str;
    std::string y_str;

    // Either --k or both --x and --y.
    std::pair<BitString, BitString> resolve() const {
        if (k > 0) {
            PaddedPair pair = make_padded_pair(k);
            return {pair.x, pair.y};
        }
        if (x_str.empty() || y_str.empty()) {
            throw CLI::ValidationError("pair", "provide --k, or both --x and --y");
        }
        return {BitString(x_str), BitString(y_str)};
    }

    json to_json() const {
        auto [x, y] = resolve();
        return json{{"x", x.str()}, {"y", y.str()}};
    }
};

int cmd_gen_pair(long k, const std::string& format, const std::string& out_path) {
    PaddedPair pair = make_padded_pair(k);
    json config{{"subcommand", "gen-pair"}, {"k", k}, {"format", format}};
    std::ostringstream os;
    if (format == "json") {
        json j = with_version(config);
        j["k"] = pair.k;
        j["n"] = pair.n;
        j["x"] = pair.x.str();
        j["y"] = pair.y.str();
        os << j.dump(2) << "\n";
    } else {
        os << header_comment(config);
        os << "x=" << pair.x.str() << " y=" << pair.y.str() << " n=" << pair.n << "\n";
    }
    write_output(os.str(), out_path);
    return 0;
}

int cmd_sample(const PairArgs& pa, bool use_y, double q, std::uint64_t seed, std::uint64_t samples,
               const std::string& out_path) {
    BitString source;
    if (pa.k > 0) {
        PaddedPair pair = make_padded_pair(pa.k);
        source = use_y ? pair.y : pair.x;
    } else if (!pa.x_str.empty()) {
        source = BitString(pa.x_str);
    } else {
        throw CLI::ValidationError("sample", "provide --k or --x");
    }
    ChannelSpec spec{q, seed};
    std::vector<BitString> traces;
    traces.reserve(samples);
    for (std::uint64_t i = 0; i < samples; ++i) traces.push_back(sample_trace(source, spec, i));

    json config{{"subcommand", "sample"}, {"x", source.str()}, {"q", q},
                {"seed", seed},           {"samples", samples}};
    std::ostringstream os;
    os << "# x=" << source.str() << " q=" << q << " seed=" << seed << "\n";
    os << header_comment(config);
    for (const auto& t : traces) os << t.str() << "\n";
    write_output(os.str(), out_path);
    return 0;
}

int cmd_distance(long k, double q, long radius, const std::string& method, std::uint64_t samples,
                 std::uint64_t seed, int threads, const std::string& out_path) {
    PaddedPair pair = make_padded_pair(k);
    ESetSpec eset = radius >= 0 ? ESetSpec::with_radius(k, radius) : ESetSpec::for_pair(k);
    json config{{"subcommand", "distance"}, {"k", k},           {"q", q},
                {"radius", eset.radius},    {"method", method}, {"samples", samples},
                {"seed", seed},             {"threads", threads}};
    json j = with_version(config);
    if (method == "mc") {
        McEstimate est = chi_sq_monte_carlo(pair, q, samples, ChannelSpec{q, seed}, threads);
        j["chi_sq_mc"] = {{"estimate", est.estimate}, {"std_error", est.std_error}, {"samples", est.samples}};
    } else {
        DistanceReport report = distance_report_bruteforce(pair, q, eset, threads);
        j["report"] = json::parse(report.to_json());
    }
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_surrogate(long k, bool windowed, bool paper_weights, int threads,
                  const std::string& out_path) {
    PaddedPair pair = make_padded_pair(k);
    SurrogateReport report = surrogate_distance(pair, windowed, paper_weights, threads);
    json config{{"subcommand", "surrogate"},
                {"k", k},
                {"windowed", windowed},
                {"paper_weights", paper_weights},
                {"threads", threads}};
    json j = with_version(config);
    j["report"] = json::parse(report.to_json());
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_scaling(const std::vector<long>& k_list, const std::string& method, std::uint64_t samples,
                double q, std::uint64_t seed, bool unwindowed, int threads,
                const std::string& out_path) {
    ScalingMethod m = (method == "mc") ? ScalingMethod::mc_chi_sq : ScalingMethod::exact_surrogate;
    ChannelSpec spec{q, seed};
    ScalingFit fit = scaling_fit(k_list, m, spec, samples, !unwindowed, threads);
    json config{{"subcommand", "scaling"}, {"k_list", k_list},   {"method", method},
                {"samples", samples},      {"q", q},             {"seed", seed},
                {"unwindowed", unwindowed}, {"threads", threads}};
    std::ostringstream os;
    os << header_comment(config);
    os << fit.to_csv();
    os.precision(17);
    os << "# slope " << fit.slope << " stderr " << fit.stderr_ << "\n";
    write_output(os.str(), out_path);
    return 0;
}

int cmd_distinguish(const PairArgs& pa, double q, const std::vector<std::uint64_t>& t_list,
                    std::uint64_t trials, std::uint64_t seed, int threads,
                    const std::string& out_path) {
    auto [x, y] = pa.resolve();
    json config{{"subcommand", "distinguish"}, {"pair", pa.to_json()}, {"q", q},
                {"T_list", t_list},            {"trials", trials},     {"seed", seed},
                {"threads", threads}};
    std::ostringstream os;
    os << with_version(config).dump() << "\n";
    ChannelSpec spec{q, seed};
    std::uint64_t base = 0;
    for (std::uint64_t T : t_list) {
        ErrorRate r = empirical_error_rate(x, y, q, T, trials, spec, threads, base);
        base += trials;
        json line{{"pair", pa.to_json()},  {"q", q},          {"T", T},
                  {"trials", r.trials},    {"errors", r.errors}, {"rate", r.rate},
                  {"wilson_upper", wilson_upper_bound(r.errors, r.trials)}};
        os << line.dump() << "\n";
    }
    write_output(os.str(), out_path);
    return 0;
}

int cmd_complexity(const PairArgs& pa, double q, double delta, std::uint64_t trials,
                   std::uint64_t seed, int threads, const std::string& out_path) {
    auto [x, y] = pa.resolve();
    json config{{"subcommand", "complexity"}, {"pair", pa.to_json()}, {"q", q},
                {"delta", delta},             {"trials", trials},     {"seed", seed},
                {"threads", threads}};
    ComplexityResult result = estimate_sample_complexity(x, y, q, delta, ChannelSpec{q, seed},
                                                         trials, threads);
    std::ostringstream os;
    os << with_version(config).dump() << "\n";
    for (const auto& s : result.steps) {
        json line{{"T", s.T},         {"trials", s.trials},  {"errors", s.errors},
                  {"rate", s.rate},   {"wilson_upper", s.wilson_upper}};
        os << line.dump() << "\n";
    }
    json summary{{"found", result.found}};
    if (result.found) summary["t_star"] = result.t_star;
    else summary["detail"] = "doubling search hit the T cap";
    os << summary.dump() << "\n";
    write_output(os.str(), out_path);
    return result.found ? 0 : 1;
}

int cmd_deck(const std::string& x_str, const std::string& y_str, long max_order,
             const std::string& format, const std::string& out_path) {
    BitString x(x_str);
    DeckSignature sx = deck_signature(x, max_order);
    json config{{"subcommand", "deck"}, {"x", x_str}, {"y", y_str}, {"max_order", max_order},
                {"format", format}};
    std::ostringstream os;
    if (format == "csv") {
        os << header_comment(config);
        os << "order,power_sum_x" << (y_str.empty() ? "" : ",power_sum_y") << "\n";
        DeckSignature sy;
        if (!y_str.empty()) sy = deck_signature(BitString(y_str), max_order);
        for (long m = 0; m <= max_order; ++m) {
            os << m << "," << sx.power_sums[static_cast<std::size_t>(m)].get_str();
            if (!y_str.empty()) os << "," << sy.power_sums[static_cast<std::size_t>(m)].get_str();
            os << "\n";
        }
    } else {
        json j = with_version(config);
        json px = json::array();
        for (const auto& v : sx.power_sums) px.push_back(v.get_str());
        j["power_sums_x"] = px;
        if (!y_str.empty()) {
            BitString y(y_str);
            DeckSignature sy = deck_signature(y, max_order);
            json py = json::array();
            for (const auto& v : sy.power_sums) py.push_back(v.get_str());
            j["power_sums_y"] = py;
            auto diff = first_power_sum_difference(x, y, max_order);
            j["first_power_sum_difference"] = diff ? json(*diff) : json(nullptr);
        }
        j["n"] = sx.n;
        os << j.dump(2) << "\n";
    }
    write_output(os.str(), out_path);
    return 0;
}

std::string witness_str(const PolySpec& p) {
    std::string s;
    for (int c : p.coefficients) s.push_back(c > 0 ? '+' : '-');
    return s;
}

int cmd_poly_mult(long degree, long table_max, int threads, const std::string& out_path) {
    json config{{"subcommand", "poly-mult"}, {"degree", degree}, {"table", table_max},
                {"threads", threads}};
    std::ostringstream os;
    if (table_max >= 0) {
        os << header_comment(config);
        os << "degree,max_multiplicity,witness\n";
        for (long n = 0; n <= table_max; ++n) {
            MultiplicityResult r = max_multiplicity_exhaustive(n, threads);
            os << n << "," << r.max_multiplicity << "," << witness_str(r.witness) << "\n";
        }
    } else {
        MultiplicityResult r = max_multiplicity_exhaustive(degree, threads);
        json j = with_version(config);
        j["degree"] = degree;
        j["max_multiplicity"] = r.max_multiplicity;
        j["witness"] = witness_str(r.witness);
        os << j.dump(2) << "\n";
    }
    write_output(os.str(), out_path);
    return 0;
}

int cmd_verify(const std::string& target, long max, std::vector<long> k_list,
               const std::string& grid_path, std::uint64_t seed, int threads,
               const std::string& out_path) {
    json config{{"subcommand", "verify"}, {"target", target}, {"max", max},
                {"k_list", k_list},       {"grid", grid_path}, {"seed", seed},
                {"threads", threads}};
    std::ostringstream os;
    os << header_comment(config);
    std::vector<VerifyResult> results;
    if (target == "lemma1") {
        results.push_back(verify_zigzag_closed_form(max > 0 ? max : 12, 8));
    } else if (target == "lemma3") {
        results.push_back(verify_fc_class_counts(max > 0 ? max : 12));
    } else if (target == "vandermonde") {
        results.push_back(verify_vandermonde(max > 0 ? max : 20));
    } else if (target == "closed-form") {
        results.push_back(verify_padded_closed_form(max > 0 ? max : 4, 9, 10000, seed));
        results.push_back(verify_printed_avoid_term_fails());
    } else if (target == "pairsum") {
        results.push_back(verify_pairsum(max > 0 ? max : 3, threads));
    } else if (target == "lemma2") {
        StirlingAuditGrid grid;
        if (!grid_path.empty()) {
            std::ifstream in(grid_path);
            if (!in) throw std::runtime_error("cannot open grid config: " + grid_path);
            std::stringstream buf;
            buf << in.rdbuf();
            grid = StirlingAuditGrid::from_json(buf.str());
        }
        AuditReport report = stirling_pair_ratio_audit(grid);
        os << report.to_json() << "\n";
        write_output(os.str(), out_path);
        return std::isfinite(report.fitted_constant) ? 0 : 1;
    } else if (target == "lemma5") {
        SweepReport report = parity_pairing_sweep(k_list.empty() ? std::vector<long>{50, 100, 200} : k_list);
        os << report.to_json() << "\n";
        write_output(os.str(), out_path);
        return std::isfinite(report.max_normalized_deviation) ? 0 : 1;
    } else if (target == "lemma6" || target == "lemma7") {
        std::vector<long> ks = k_list.empty() ? std::vector<long>{100, 400} : k_list;
        SweepReport report = reflection_sweep(ks, SymmetryDisplay::padded_profile);
        os << report.to_json() << "\n";
        int rc = std::isfinite(report.max_normalized_deviation) ? 0 : 1;
        if (target == "lemma7") {
            SweepReport second = reflection_sweep(ks, SymmetryDisplay::count_profile);
            os << second.to_json() << "\n";
            rc = (rc == 0 && std::isfinite(second.max_normalized_deviation)) ? 0 : 1;
        }
        write_output(os.str(), out_path);
        return rc;
    } else {
        throw CLI::ValidationError(
            "verify", "unknown target (expected lemma1|lemma2|lemma3|lemma5|lemma6|lemma7|"
                      "vandermonde|closed-form|pairsum)");
    }
    int rc = 0;
    for (const auto& r : results) {
        os << r.name << ": checks=" << r.checks << " failures=" << r.failures;
        if (!r.ok()) {
            os << " first=" << r.detail;
            rc = 1;
        }
        os << "\n";
    }
    write_output(os.str(), out_path);
    return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"tracelab: deletion-channel trace statistics for padded defect pairs"};
    app.require_subcommand(1);

    // Shared option storage.
    PairArgs pa;
    double q = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t samples = 1000000;
    std::uint64_t trials = 500;
    double delta = 0.1;
    int threads = 0;  // 0 -> TRACELAB_THREADS or hardware
    std::string out_path;
    std::string format = "json";
    long radius = -1;
    long max = 0;
    std::vector<long> k_list;
    std::vector<std::uint64_t> t_list{64};
    std::string method = "brute";
    std::string grid_path;
    bool windowed = false;
    bool unwindowed = false;
    bool paper_weights = false;
    bool use_y = false;
    long max_order = 8;
    long degree = 8;
    long table_max = -1;
    std::string target;

    auto add_pair_opts = [&](CLI::App* cmd) {
        cmd->add_option("--k", pa.k, "padded-pair index (n = 4k+3)");
        cmd->add_option("--x", pa.x_str, "explicit source string (ASCII 0/1)");
        cmd->add_option("--y", pa.y_str, "explicit second string (ASCII 0/1)");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--threads", threads, "worker threads (default: TRACELAB_THREADS or all)");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    auto* gen = app.add_subcommand("gen-pair", "print the padded pair for k");
    gen->add_option("--k", pa.k, "pair index")->required();
    gen->add_option("--format", format, "text|json");
    gen->add_option("--out", out_path, "output file");

    auto* sample = app.add_subcommand("sample", "dump deletion-channel traces");
    add_pair_opts(sample);
    sample->add_flag("--from-y", use_y, "sample the y variant of the pair");
    sample->add_option("--q", q, "deletion probability");
    sample->add_option("--samples", samples, "number of traces");
    add_common(sample);

    auto* dist = app.add_subcommand("distance", "exact or sampled distances between the pair's trace laws");
    dist->add_option("--k", pa.k, "pair index")->required();
    dist->add_option("--q", q, "deletion probability");
    dist->add_option("--radius", radius, "window radius override");
    dist->add_option("--method", method, "brute|mc");
    dist->add_option("--samples", samples, "MC sample count");
    add_common(dist);

    auto* surr = app.add_subcommand("surrogate", "exact weighted surrogate distance at q=1/2");
    surr->add_option("--k", pa.k, "pair index")->required();
    surr->add_flag("--windowed", windowed, "restrict profiles to the high-probability window");
    surr->add_flag("--paper-weights", paper_weights, "use the uncorrected weight denominator (comparison only)");
    add_common(surr);

    auto* scal = app.add_subcommand("scaling", "slope of ln(distance) against ln(n)");
    scal->add_option("--k-list", k_list, "comma-separated k values")->delimiter(',')->required();
    scal->add_option("--method", method, "exact|mc");
    scal->add_option("--samples", samples, "MC samples per point");
    scal->add_option("--q", q, "deletion probability (mc method)");
    scal->add_flag("--unwindowed", unwindowed, "exact method: sum all profiles");
    add_common(scal);

    auto* disting = app.add_subcommand("distinguish", "empirical likelihood-ratio error rates");
    add_pair_opts(disting);
    disting->add_option("--q", q, "deletion probability");
    disting->add_option("--T", t_list, "traces per trial (comma list)")->delimiter(',');
    disting->add_option("--trials", trials, "trials per T");
    add_common(disting);

    auto* compl_ = app.add_subcommand("complexity", "doubling search for the trace budget");
    add_pair_opts(compl_);
    compl_->add_option("--q", q, "deletion probability");
    compl_->add_option("--delta", delta, "target error probability");
    compl_->add_option("--trials", trials, "trials per step");
    add_common(compl_);

    auto* verify = app.add_subcommand("verify", "identity and estimate audits");
    verify->add_option("target", target, "lemma1|lemma2|lemma3|lemma5|lemma6|lemma7|vandermonde|closed-form|pairsum")
        ->required();
    verify->add_option("--max", max, "sweep bound");
    verify->add_option("--k-list", k_list, "k values for the lemma sweeps")->delimiter(',');
    verify->add_option("--grid", grid_path, "JSON grid config (lemma2)");
    add_common(verify);

    auto* deck = app.add_subcommand("deck", "power-sum signature");
    deck->add_option("--x", pa.x_str, "source string")->required();
    deck->add_option("--y", pa.y_str, "optional second string");
    deck->add_option("--max-order", max_order, "highest power-sum order");
    deck->add_option("--format", format, "json|csv");
    deck->add_option("--out", out_path, "output file");

    auto* poly = app.add_subcommand("poly-mult", "max multiplicity of the root 1 over sign polynomials");
    poly->add_option("--degree", degree, "single degree to search");
    poly->add_option("--table", table_max, "emit a CSV table for degrees 0..N");
    poly->add_option("--threads", threads, "worker threads");
    poly->add_option("--out", out_path, "output file");

    std::vector<std::string> argv_copy(args);
    try {
        std::vector<const char*> argv;
        argv.push_back("tracelab");
        for (const auto& a : argv_copy) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (gen->parsed()) return cmd_gen_pair(pa.k, format, out_path);
        if (sample->parsed()) return cmd_sample(pa, use_y, q, seed, samples, out_path);
        if (dist->parsed()) return cmd_distance(pa.k, q, radius, method, samples, seed, threads, out_path);
        if (surr->parsed()) return cmd_surrogate(pa.k, windowed, paper_weights, threads, out_path);
        if (scal->parsed()) {
            if (method == "brute") method = "exact";
            return cmd_scaling(k_list, method, samples, q, seed, unwindowed, threads, out_path);
        }
        if (disting->parsed()) return cmd_distinguish(pa, q, t_list, trials, seed, threads, out_path);
        if (compl_->parsed()) return cmd_complexity(pa, q, delta, trials, seed, threads, out_path);
        if (verify->parsed()) return cmd_verify(target, max, k_list, grid_path, seed, threads, out_path);
        if (deck->parsed()) return cmd_deck(pa.x_str, pa.y_str, max_order, format, out_path);
        if (poly->parsed()) return cmd_poly_mult(degree, table_max, threads, out_path);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace tracelab
