#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tracelab/cli.hpp"

using namespace tracelab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/tracelab_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("gen-pair prints the pair") {
    TempFile f("genpair.txt");
    CHECK(run_cli({"gen-pair", "--k", "1", "--out", f.path}) == 0);
    std::string out = slurp(f.path);
    CHECK(out.find("x=0110101 y=0101101 n=7") != std::string::npos);
    CHECK(out.find("# tracelab") != std::string::npos);
    CHECK(out.find("# config") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({"gen-pair", "--nonsense", "5"}) == 2);
    CHECK(run_cli({"no-such-subcommand"}) == 2);
    CHECK(run_cli({"verify", "lemma4"}) == 2);  // not a verify target
    CHECK(run_cli({"gen-pair", "--k", "0"}) == 2);
}

TEST_CASE("declared caps exit with code 1") {
    TempFile f("toolarge.json");
    CHECK(run_cli({"distance", "--k", "7", "--out", f.path}) == 1);  // n = 31 > brute-force cap
}

TEST_CASE("sample dump has the documented header") {
    TempFile f("dump.txt");
    CHECK(run_cli({"sample", "--k", "1", "--q", "0.5", "--seed", "7", "--samples", "5", "--out",
                   f.path}) == 0);
    std::string out = slurp(f.path);
    CHECK(out.rfind("# x=0110101 q=0.5 seed=7\n", 0) == 0);
    int lines = 0;
    for (char c : out) lines += (c == '\n');
    CHECK(lines == 5 + 3);  // dump header + tool header + config + traces
}

TEST_CASE("verify targets run clean") {
    TempFile f("verify.txt");
    CHECK(run_cli({"verify", "vandermonde", "--max", "10", "--out", f.path}) == 0);
    CHECK(run_cli({"verify", "lemma1", "--max", "6", "--out", f.path}) == 0);
    CHECK(run_cli({"verify", "lemma3", "--max", "10", "--out", f.path}) == 0);
    std::string out = slurp(f.path);
    CHECK(out.find("failures=0") != std::string::npos);
}

TEST_CASE("deck output formats") {
    TempFile j("deck.json");
    CHECK(run_cli({"deck", "--x", "0011", "--y", "0101", "--max-order", "2", "--out", j.path}) == 0);
    std::string out = slurp(j.path);
    CHECK(out.find("\"power_sums_x\"") != std::string::npos);
    CHECK(out.find("\"7\"") != std::string::npos);
    CHECK(out.find("first_power_sum_difference") != std::string::npos);

    TempFile c("deck.csv");
    CHECK(run_cli({"deck", "--x", "0011", "--max-order", "2", "--format", "csv", "--out", c.path}) == 0);
    CHECK(slurp(c.path).find("order,power_sum_x") != std::string::npos);
}

TEST_CASE("poly-mult single degree and table") {
    TempFile f("poly.json");
    CHECK(run_cli({"poly-mult", "--degree", "3", "--out", f.path}) == 0);
    std::string out = slurp(f.path);
    CHECK(out.find("\"max_multiplicity\": 2") != std::string::npos);

    TempFile t("poly.csv");
    CHECK(run_cli({"poly-mult", "--table", "5", "--out", t.path}) == 0);
    CHECK(slurp(t.path).find("degree,max_multiplicity,witness") != std::string::npos);
}

TEST_CASE("complexity subcommand emits step lines and a summary") {
    TempFile f("complexity.jsonl");
    CHECK(run_cli({"complexity", "--k", "1", "--delta", "0.3", "--trials", "120", "--seed", "5",
                   "--out", f.path}) == 0);
    std::string out = slurp(f.path);
    CHECK(out.find("\"t_star\"") != std::string::npos);
    CHECK(out.find("wilson_upper") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical, including threaded ones") {
    TempFile a("det_a"), b("det_b"), c("det_c");

    CHECK(run_cli({"distance", "--k", "3", "--threads", "4", "--out", a.path}) == 0);
    CHECK(run_cli({"distance", "--k", "3", "--threads", "4", "--out", b.path}) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(run_cli({"distance", "--k", "3", "--threads", "1", "--out", c.path}) == 0);
    std::string threaded = slurp(a.path), serial = slurp(c.path);
    // The thread count is part of the embedded config; the payload must match.
    threaded.erase(threaded.find("\"threads\""), 14);
    serial.erase(serial.find("\"threads\""), 14);
    CHECK(threaded.substr(threaded.find("report")) == serial.substr(serial.find("report")));

    CHECK(run_cli({"scaling", "--k-list", "2,3,4", "--method", "exact", "--threads", "4", "--out",
                   a.path}) == 0);
    CHECK(run_cli({"scaling", "--k-list", "2,3,4", "--method", "exact", "--threads", "4", "--out",
                   b.path}) == 0);
    CHECK(slurp(a.path) == slurp(b.path));

    CHECK(run_cli({"distinguish", "--k", "1", "--T", "4,16", "--trials", "120", "--seed", "3",
                   "--threads", "4", "--out", a.path}) == 0);
    CHECK(run_cli({"distinguish", "--k", "1", "--T", "4,16", "--trials", "120", "--seed", "3",
                   "--threads", "4", "--out", b.path}) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
}
