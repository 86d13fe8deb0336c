// End-to-end tests of the command-line binary: value formatting, stream
// separation (results on stdout, timings on stderr), the JSON analyze
// report, and the documented exit codes. The binary path is injected by the
// build as USTATS_CLI_PATH.

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "json.hpp"
#include "ustats/ustats.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const std::string& scratch_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/ustats_cli_XXXXXX";
        char* made = mkdtemp(tmpl);
        REQUIRE(made != nullptr);
        return std::string(made);
    }();
    return dir;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string write_file(const std::string& name, const std::string& contents) {
    std::string path = scratch_dir() + "/" + name;
    std::ofstream out(path);
    REQUIRE(out.good());
    out << contents;
    REQUIRE(out.good());
    return path;
}

/// Runs the CLI with `args` appended, capturing both streams.
CliResult run_cli(const std::string& args) {
    static int invocation = 0;
    const std::string tag = std::to_string(invocation++);
    const std::string out_path = scratch_dir() + "/out." + tag;
    const std::string err_path = scratch_dir() + "/err." + tag;
    const std::string cmd = std::string("\"") + USTATS_CLI_PATH + "\" " + args + " >\"" +
                            out_path + "\" 2>\"" + err_path + "\"";
    int status = std::system(cmd.c_str());
    CliResult r;
    REQUIRE(status != -1);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max({std::abs(got), std::abs(want), 1.0});
}

/// CSV text and the equal in-memory sample, from one list of rows.
struct Fixture {
    std::string csv;
    ustats::Sample sample;
};

Fixture make_fixture(std::vector<std::vector<double>> rows) {
    std::ostringstream csv;
    csv.precision(17);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) csv << ",";
            csv << row[i];
        }
        csv << "\n";
    }
    return Fixture{csv.str(), ustats::Sample(std::move(rows))};
}

/// Asserts the given top-level keys appear in this order in the raw dump.
void check_key_order(const std::string& dump, const std::vector<std::string>& keys) {
    std::size_t last = 0;
    for (const std::string& key : keys) {
        std::size_t pos = dump.find("\"" + key + "\"");
        REQUIRE_MESSAGE(pos != std::string::npos, "missing key ", key);
        CHECK_MESSAGE(pos > last, "key ", key, " out of order");
        last = pos;
    }
}

/// Drops lines containing the run timestamp so reruns compare byte-equal.
std::string without_timestamp(const std::string& dump) {
    std::string out;
    for (const std::string& line : lines_of(dump))
        if (!contains(line, "generated_at")) out += line + "\n";
    return out;
}

const char* kK4Edges = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

}  // namespace

TEST_CASE("cli u and v print bare values for prod2 on 1,2,3") {
    std::string data = write_file("data123.csv", "1\n2\n3\n");

    CliResult u = run_cli("u --kernel prod2 --data \"" + data + "\"");
    CHECK(u.exit_code == 0);
    CHECK(u.out == "22\n");
    CHECK(contains(u.err, "tensorize_seconds = "));
    CHECK(contains(u.err, "contract_seconds = "));

    CliResult v = run_cli("v --kernel prod2 --data \"" + data + "\"");
    CHECK(v.exit_code == 0);
    CHECK(v.out == "36\n");
    CHECK(contains(v.err, "tensorize_seconds = "));

    // Timing lines carry fixed six-decimal seconds.
    for (const std::string& line : lines_of(u.err)) {
        if (!contains(line, "_seconds = ")) continue;
        std::string value = line.substr(line.find("= ") + 2);
        std::size_t dot = value.find('.');
        REQUIRE(dot != std::string::npos);
        CHECK(value.size() - dot - 1 == 6);
    }
}

TEST_CASE("cli statistics match the library to full printed precision") {
    Fixture fx = make_fixture({{1.0, 0.5, -0.25},
                               {0.75, -1.0, 0.5},
                               {1.25, 0.25, -0.75},
                               {0.5, 1.0, 1.5},
                               {-0.5, 0.75, 0.25},
                               {1.5, -0.5, -1.0}});
    std::string data = write_file("hoif6.csv", fx.csv);
    ustats::MDKernel kernel = ustats::hoif_kernel(3, ustats::truncation_phi(1));

    double u_want = ustats::u_statistic(kernel, fx.sample, {});
    CliResult u = run_cli("u --kernel hoif:3:1 --data \"" + data + "\"");
    REQUIRE(u.exit_code == 0);
    CHECK(rel_err(std::stod(u.out), u_want) <= 1e-12);

    double v_want = ustats::v_statistic(kernel, fx.sample, {});
    CliResult v = run_cli("v --kernel hoif:3:1 --data \"" + data + "\"");
    REQUIRE(v.exit_code == 0);
    CHECK(rel_err(std::stod(v.out), v_want) <= 1e-12);

    SUBCASE("strategy and thread flags do not change the value") {
        CliResult alt = run_cli("u --kernel hoif:3:1 --data \"" + data +
                                "\" --order-strategy min-fill --threads 2");
        REQUIRE(alt.exit_code == 0);
        CHECK(rel_err(std::stod(alt.out), u_want) <= 1e-12);

        CliResult exh = run_cli("u --kernel hoif:3:1 --data \"" + data +
                                "\" --order-strategy exhaustive");
        REQUIRE(exh.exit_code == 0);
        CHECK(rel_err(std::stod(exh.out), u_want) <= 1e-12);
    }
}

TEST_CASE("cli analyze reports the documented json fields in order") {
    CliResult r = run_cli("analyze --builtin hoif:4 --n 100");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);

    CHECK(j["schema"] == 1);
    CHECK(j["m"] == 4);
    CHECK(j["signature"] == nlohmann::json::parse("[[0,1],[1,2],[2,3]]"));
    CHECK(j["graph"]["vertices"] == 4);
    CHECK(j["graph"]["edges"] == 3);
    CHECK(j["treewidth"]["lower"] == 1);
    CHECK(j["treewidth"]["upper"] == 1);
    CHECK(j["treewidth"]["exact"] == 1);
    CHECK(j["terms"]["bell"] == 15);
    CHECK(j["terms"]["sparsified"] == 5);
    CHECK(j["terms"]["M"] == 2);
    CHECK(j["terms"]["by_width"] == nlohmann::json::parse(R"({"1":4,"2":1})"));
    CHECK(j["n"] == 100);
    // 3 tuples x (4 partitions at n^2 + 1 partition at n^3).
    CHECK(j["flops_estimate"] == "3120000");
    CHECK(!j.contains("executed_flops"));
    CHECK(j["generated_at"].is_string());
    CHECK(!j["generated_at"].get<std::string>().empty());

    check_key_order(r.out, {"schema", "signature", "m", "graph", "treewidth", "terms", "n",
                            "flops_estimate", "generated_at"});
}

TEST_CASE("cli analyze accepts a signature string and is deterministic") {
    CliResult text = run_cli("analyze --signature \"1 2, 2 3, 3 4\" --n 100");
    CliResult again = run_cli("analyze --signature \"1 2, 2 3, 3 4\" --n 100");
    CliResult builtin = run_cli("analyze --builtin hoif:4 --n 100");
    REQUIRE(text.exit_code == 0);
    REQUIRE(again.exit_code == 0);
    REQUIRE(builtin.exit_code == 0);
    CHECK(without_timestamp(text.out) == without_timestamp(again.out));
    CHECK(without_timestamp(text.out) == without_timestamp(builtin.out));

    // Zero-based input canonicalizes to the same report.
    CliResult zero = run_cli("analyze --signature \"0 1, 1 2, 2 3\" --n 100");
    REQUIRE(zero.exit_code == 0);
    CHECK(without_timestamp(zero.out) == without_timestamp(builtin.out));
}

TEST_CASE("cli analyze agrees with the library report for hoif:7") {
    CliResult r = run_cli("analyze --builtin hoif:7 --n 10");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);

    ustats::ComplexityReport want =
        ustats::complexity_report(ustats::chain_signature(7), 10, {});
    CHECK(j["terms"]["bell"] == 877);
    CHECK(j["terms"]["sparsified"] == 203);
    CHECK(j["terms"]["M"] == 2);
    CHECK(j["treewidth"]["exact"] == 1);
    CHECK(j["flops_estimate"].get<std::string>() == want.flops_estimate);

    std::int64_t total = 0;
    for (const auto& [width, count] : j["terms"]["by_width"].items())
        total += count.get<std::int64_t>();
    CHECK(total == 203);
}

TEST_CASE("cli analyze prices the other builtin shapes") {
    SUBCASE("prod2") {
        CliResult r = run_cli("analyze --builtin prod2 --n 10");
        REQUIRE(r.exit_code == 0);
        nlohmann::json j = nlohmann::json::parse(r.out);
        CHECK(j["m"] == 2);
        CHECK(j["graph"]["vertices"] == 2);
        CHECK(j["graph"]["edges"] == 0);
        CHECK(j["terms"]["bell"] == 2);
        CHECK(j["terms"]["sparsified"] == 2);
        CHECK(j["terms"]["M"] == 0);
        CHECK(j["treewidth"]["exact"] == 0);
        CHECK(j["terms"]["by_width"] == nlohmann::json::parse(R"({"0":2})"));
        CHECK(j["flops_estimate"] == "40");  // 2 tuples x 2 partitions x n
    }
    SUBCASE("motif:r6 is the complete four-vertex shape") {
        CliResult r = run_cli("analyze --builtin motif:r6 --n 10");
        REQUIRE(r.exit_code == 0);
        nlohmann::json j = nlohmann::json::parse(r.out);
        CHECK(j["m"] == 4);
        CHECK(j["graph"]["vertices"] == 4);
        CHECK(j["graph"]["edges"] == 6);
        CHECK(j["treewidth"]["exact"] == 3);
        CHECK(j["terms"]["bell"] == 15);
        // Every index pair co-occurs, so only the all-distinct partition runs.
        CHECK(j["terms"]["sparsified"] == 1);
        CHECK(j["terms"]["M"] == 3);
        CHECK(j["terms"]["by_width"] == nlohmann::json::parse(R"({"3":1})"));
        CHECK(j["flops_estimate"] == "60000");  // 6 tuples x n^4
    }
    SUBCASE("dcov is two disjoint pairs") {
        CliResult r = run_cli("analyze --builtin dcov --n 10");
        REQUIRE(r.exit_code == 0);
        nlohmann::json j = nlohmann::json::parse(r.out);
        CHECK(j["m"] == 4);
        CHECK(j["graph"]["edges"] == 2);
        CHECK(j["treewidth"]["exact"] == 1);
        CHECK(j["terms"]["bell"] == 15);
        CHECK(j["terms"]["sparsified"] == 7);
        CHECK(j["terms"]["M"] == 1);
        CHECK(j["terms"]["by_width"] == nlohmann::json::parse(R"({"1":7})"));
        CHECK(j["flops_estimate"] == "1400");  // 2 tuples x 7 partitions x n^2
    }
}

TEST_CASE("cli analyze --run reports the executed multiply-add count") {
    CliResult r = run_cli("analyze --builtin hoif:3 --n 8 --run --threads 1");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j.contains("executed_flops"));

    // Replicate the CLI's synthetic run: default seed, three standard-normal
    // columns per row, the k=1 truncation kernel.
    std::mt19937_64 rng(20260819);
    std::normal_distribution<double> gauss;
    std::vector<ustats::Observation> rows(8);
    for (auto& row : rows) {
        row.resize(3);
        for (double& v : row) v = gauss(rng);
    }
    ustats::Sample sample(std::move(rows));
    ustats::Config config;
    config.threads = 1;
    ustats::RunStats stats;
    (void)ustats::u_statistic(ustats::hoif_kernel(3, ustats::truncation_phi(1)), sample, config,
                              &stats);
    CHECK(j["executed_flops"].get<std::string>() == std::to_string(stats.multiply_adds));

    check_key_order(r.out, {"flops_estimate", "executed_flops", "generated_at"});

    CliResult bad = run_cli("analyze --builtin motif:r2 --n 8 --run");
    CHECK(bad.exit_code == 2);
    CliResult sig = run_cli("analyze --signature \"1 2\" --n 8 --run");
    CHECK(sig.exit_code == 2);
}

TEST_CASE("cli motifs prints one count per pattern") {
    std::string k4 = write_file("k4.edges", kK4Edges);

    CliResult three = run_cli("motifs --graph \"" + k4 + "\" --order 3");
    REQUIRE(three.exit_code == 0);
    CHECK(three.out == "r1 = 0\nr2 = 4\n");

    CliResult four = run_cli("motifs --graph \"" + k4 + "\" --order 4");
    REQUIRE(four.exit_code == 0);
    CHECK(four.out == "r3 = 0\nr4 = 0\nr5 = 0\nr6 = 0\nr7 = 0\nr8 = 1\n");

    std::string p4 = write_file("p4.edges", "0 1\n1 2\n2 3\n");
    CliResult path3 = run_cli("motifs --graph \"" + p4 + "\" --order 3");
    REQUIRE(path3.exit_code == 0);
    CHECK(path3.out == "r1 = 2\nr2 = 0\n");
    CliResult path4 = run_cli("motifs --graph \"" + p4 + "\" --order 4");
    REQUIRE(path4.exit_code == 0);
    CHECK(path4.out == "r3 = 0\nr4 = 1\nr5 = 0\nr6 = 0\nr7 = 0\nr8 = 0\n");

    CliResult bad = run_cli("motifs --graph \"" + k4 + "\" --order 5");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli treewidth prints bounds and an optional witness") {
    std::string p4 = write_file("tw_p4.edges", "0 1\n1 2\n2 3\n");
    CliResult path = run_cli("treewidth --graph \"" + p4 + "\"");
    REQUIRE(path.exit_code == 0);
    CHECK(path.out == "vertices = 4\nedges = 3\nlower = 1\nupper = 1\n");

    std::ostringstream k5_edges;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) k5_edges << a << " " << b << "\n";
    std::string k5 = write_file("k5.edges", k5_edges.str());
    CliResult exact = run_cli("treewidth --graph \"" + k5 + "\" --exact");
    REQUIRE(exact.exit_code == 0);
    CHECK(contains(exact.out, "lower = 4\n"));
    CHECK(contains(exact.out, "upper = 4\n"));
    CHECK(contains(exact.out, "exact = 4\n"));

    // The witness line lists a permutation of the vertices.
    std::vector<std::string> lines = lines_of(exact.out);
    REQUIRE(!lines.empty());
    std::string order_line = lines.back();
    REQUIRE(order_line.rfind("order =", 0) == 0);
    std::stringstream ss(order_line.substr(7));
    std::vector<int> order;
    int v = 0;
    while (ss >> v) order.push_back(v);
    std::sort(order.begin(), order.end());
    CHECK(order == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("cli dcov prints the statistic and an oracle check") {
    std::vector<std::vector<double>> x_rows, y_rows;
    for (int i = 0; i < 10; ++i) {
        double a = 0.25 * i - 1.0;
        double b = 1.0 - 0.125 * i;
        x_rows.push_back({a, b});
        y_rows.push_back({0.5 * (i % 3), a + 0.25, 0.5 * b});
    }
    Fixture fx = make_fixture(x_rows);
    Fixture fy = make_fixture(y_rows);
    std::string x_path = write_file("dcov_x.csv", fx.csv);
    std::string y_path = write_file("dcov_y.csv", fy.csv);

    double want = ustats::dcov_squared(fx.sample, fy.sample, {});
    CliResult plain = run_cli("dcov --x \"" + x_path + "\" --y \"" + y_path + "\"");
    REQUIRE(plain.exit_code == 0);
    CHECK(rel_err(std::stod(plain.out), want) <= 1e-12);

    CliResult oracle = run_cli("dcov --x \"" + x_path + "\" --y \"" + y_path + "\" --oracle");
    REQUIRE(oracle.exit_code == 0);
    std::vector<std::string> lines = lines_of(oracle.out);
    REQUIRE(lines.size() == 2);
    CHECK(rel_err(std::stod(lines[0]), want) <= 1e-12);
    REQUIRE(lines[1].rfind("oracle_relative_error = ", 0) == 0);
    CHECK(std::stod(lines[1].substr(24)) <= 1e-10);

    std::string one_row = write_file("dcov_one.csv", "1\n");
    CliResult mismatch = run_cli("dcov --x \"" + x_path + "\" --y \"" + one_row + "\"");
    CHECK(mismatch.exit_code == 2);
}

TEST_CASE("cli exit codes follow the documented contract") {
    SUBCASE("argument and parse failures exit 2") {
        CHECK(run_cli("frobnicate").exit_code == 2);
        CHECK(run_cli("analyze --n 5").exit_code == 2);  // neither spec source

        std::string data = write_file("ec_data.csv", "1\n2\n3\n");
        CliResult both = run_cli("analyze --signature \"1 2\" --builtin prod2 --n 5");
        CHECK(both.exit_code == 2);

        CHECK(run_cli("u --kernel bogus --data \"" + data + "\"").exit_code == 2);
        CHECK(run_cli("u --kernel hoif:1:1 --data \"" + data + "\"").exit_code == 2);
        CHECK(run_cli("u --kernel prod2 --data /nonexistent.csv").exit_code == 2);

        std::string bad = write_file("ec_bad.csv", "1,2\n1,x\n");
        CHECK(run_cli("u --kernel prod2 --data \"" + bad + "\"").exit_code == 2);
        std::string ragged = write_file("ec_ragged.csv", "1,2\n3\n");
        CHECK(run_cli("u --kernel prod2 --data \"" + ragged + "\"").exit_code == 2);

        // Sixty-one rows is past the oracle's cutoff.
        std::ostringstream big;
        for (int i = 0; i < 61; ++i) big << i << "\n";
        std::string big_path = write_file("ec_big.csv", big.str());
        CliResult oracle = run_cli("dcov --x \"" + big_path + "\" --y \"" + big_path +
                                   "\" --oracle");
        CHECK(oracle.exit_code == 2);
    }

    SUBCASE("motif and dcov kernels are redirected to their subcommands") {
        std::string data = write_file("ec_redirect.csv", "1\n2\n3\n");
        CliResult motif = run_cli("u --kernel motif:r2 --data \"" + data + "\"");
        CHECK(motif.exit_code == 2);
        CHECK(contains(motif.err, "subcommand"));
        CliResult dc = run_cli("v --kernel dcov --data \"" + data + "\"");
        CHECK(dc.exit_code == 2);
    }

    SUBCASE("memory cap exits 3") {
        Fixture fx = make_fixture({{1.0, 0.5, -0.25},
                                   {0.75, -1.0, 0.5},
                                   {1.25, 0.25, -0.75},
                                   {0.5, 1.0, 1.5},
                                   {-0.5, 0.75, 0.25},
                                   {1.5, -0.5, -1.0}});
        std::string data = write_file("ec_cap.csv", fx.csv);
        CliResult capped = run_cli("u --kernel hoif:3:1 --data \"" + data + "\" --mem-cap 10");
        CHECK(capped.exit_code == 3);
    }

    SUBCASE("too few observations exits 4, but the v-statistic still runs") {
        std::string one = write_file("ec_one.csv", "1\n");
        CHECK(run_cli("u --kernel prod2 --data \"" + one + "\"").exit_code == 4);
        CliResult v = run_cli("v --kernel prod2 --data \"" + one + "\"");
        CHECK(v.exit_code == 0);
        CHECK(v.out == "1\n");
    }

    SUBCASE("self-loops exit 5") {
        std::string loop = write_file("ec_loop.edges", "0 1\n2 2\n");
        CHECK(run_cli("treewidth --graph \"" + loop + "\"").exit_code == 5);
        CHECK(run_cli("motifs --graph \"" + loop + "\" --order 3").exit_code == 5);
    }
}
