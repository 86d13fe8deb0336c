// ustats — exact U/V-statistics, motif counts, distance covariance, and
// contraction-cost analysis from the command line.
//
// Exit codes: 0 success, 2 argument/parse errors (bad flags, malformed CSV or
// edge list, unusable kernel spec, unreadable file), 3 memory cap exceeded,
// 4 sample too small for the requested statistic, 5 self-loop in an edge list.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ustats/ustats.hpp"

namespace {

using ustats::Config;
using ustats::ErrorCode;
using ustats::IndexTuple;
using ustats::MDKernel;
using ustats::Observation;
using ustats::Sample;
using ustats::SimpleGraph;

/// Failure carrying the process exit code.
struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& message) { throw CliError{code, message}; }

int exit_code_for(const ustats::Error& e) {
    switch (e.code()) {
        case ErrorCode::MemoryCapExceeded: return 3;
        case ErrorCode::SampleTooSmall: return 4;
        default: return 2;
    }
}

std::string format_value(double v) {
    std::ostringstream out;
    out << std::setprecision(15) << v;
    return out.str();
}

// ---------------------------------------------------------------- ingestion

/// Headerless CSV, one observation per row, comma-separated numbers.
Sample read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(2, "cannot open '" + path + "'");
    std::vector<Observation> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Observation row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                die(2, path + ":" + std::to_string(line_no) + ": not a number: '" + cell + "'");
            }
        }
        if (row.empty()) die(2, path + ":" + std::to_string(line_no) + ": empty row");
        if (!rows.empty() && row.size() != rows.front().size())
            die(2, path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, got " +
                       std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) die(2, path + ": no data rows");
    return Sample(std::move(rows));
}

/// Whitespace-separated 0-indexed vertex pairs, one edge per line; duplicates
/// collapse; a self-loop is exit code 5. Vertex count is max id + 1.
SimpleGraph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(2, "cannot open '" + path + "'");
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::stringstream ss(line);
        long long u, v;
        if (!(ss >> u)) continue;  // blank line
        if (!(ss >> v)) die(2, path + ":" + std::to_string(line_no) + ": expected two vertex ids");
        std::string rest;
        if (ss >> rest) die(2, path + ":" + std::to_string(line_no) + ": trailing tokens");
        if (u < 0 || v < 0)
            die(2, path + ":" + std::to_string(line_no) + ": vertex ids must be >= 0");
        if (u == v) die(5, path + ":" + std::to_string(line_no) + ": self-loop on vertex " +
                               std::to_string(u));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
    }
    if (max_id < 0) die(2, path + ": no edges");
    return SimpleGraph::from_edges(max_id + 1, edges);
}

// ------------------------------------------------------------- kernel specs

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

int parse_positive_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size() || v < 1) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        die(2, what + " must be a positive integer, got '" + s + "'");
    }
}

/// Data-backed kernels for u/v: prod2 or hoif:<j>:<k>. The motif and dcov
/// computations have their own subcommands (they do not read a CSV sample).
MDKernel data_kernel(const std::string& spec) {
    if (spec == "prod2") return ustats::prod2_kernel();
    std::vector<std::string> parts = split(spec, ':');
    if (parts[0] == "hoif") {
        if (parts.size() != 3) die(2, "expected hoif:<j>:<k>, got '" + spec + "'");
        int j = parse_positive_int(parts[1], "hoif order j");
        int k = parse_positive_int(parts[2], "hoif basis size k");
        if (j < 2) die(2, "hoif order j must be >= 2");
        return ustats::hoif_kernel(j, ustats::truncation_phi(k));
    }
    if (parts[0] == "motif" || parts[0] == "dcov")
        die(2, "kernel '" + spec + "' is served by the dedicated subcommand");
    die(2, "unknown kernel spec '" + spec + "' (expected prod2 or hoif:<j>:<k>)");
}

/// Signature-only specs for analyze: any of the builtin kernels by shape.
std::vector<IndexTuple> builtin_signature(const std::string& spec) {
    if (spec == "prod2") return {{1}, {2}};
    if (spec == "dcov") return {{1, 2}, {3, 4}};
    std::vector<std::string> parts = split(spec, ':');
    if (parts[0] == "hoif") {
        if (parts.size() != 2 && parts.size() != 3)
            die(2, "expected hoif:<m>, got '" + spec + "'");
        int m = parse_positive_int(parts[1], "hoif order m");
        if (m < 2) die(2, "hoif order m must be >= 2");
        return ustats::chain_signature(m);
    }
    if (parts[0] == "motif") {
        if (parts.size() != 2) die(2, "expected motif:<id>, got '" + spec + "'");
        const ustats::MotifSpec& motif = ustats::motif_by_id(parts[1]);
        std::vector<IndexTuple> sig;
        for (const auto& [a, b] : motif.present) sig.push_back({a, b});
        for (const auto& [a, b] : motif.absent) sig.push_back({a, b});
        return sig;
    }
    die(2, "unknown builtin spec '" + spec + "'");
}

/// "1 2, 2 3, 3 4": tuples separated by commas, indices by whitespace.
std::vector<IndexTuple> parse_signature(const std::string& text) {
    std::vector<IndexTuple> sig;
    for (const std::string& chunk : split(text, ',')) {
        IndexTuple tuple;
        std::stringstream ss(chunk);
        long long id;
        while (ss >> id) {
            if (id < 0) die(2, "signature indices must be >= 0, got " + std::to_string(id));
            tuple.push_back(static_cast<int>(id));
        }
        if (!ss.eof()) die(2, "bad signature tuple: '" + chunk + "'");
        if (tuple.empty()) die(2, "empty tuple in signature '" + text + "'");
        sig.push_back(std::move(tuple));
    }
    if (sig.empty()) die(2, "empty signature");
    return sig;
}

// ------------------------------------------------------------------ helpers

void print_timings(const ustats::RunStats& stats) {
    std::cerr << std::setprecision(6) << std::fixed
              << "tensorize_seconds = " << stats.tensorize_seconds << "\n"
              << "contract_seconds = " << stats.contract_seconds << "\n"
              << std::defaultfloat;
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double euclidean_block(const Observation& a, const Observation& b, std::size_t from,
                       std::size_t count) {
    double acc = 0.0;
    for (std::size_t i = from; i < from + count; ++i) {
        double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

/// Literal quadruple-loop distance covariance, for --oracle.
double dcov_oracle(const Sample& x, const Sample& y, const Config& config) {
    const int n = x.size();
    const std::size_t dx = x.points[0].size();
    const std::size_t dy = y.points[0].size();
    std::vector<Observation> fused(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        fused[i] = x.points[i];
        fused[i].insert(fused[i].end(), y.points[i].begin(), y.points[i].end());
    }
    Sample s(std::move(fused));
    auto bracket = [dx, dy](const Sample& sm, std::span<const int> idx) {
        auto d1 = [&](int a, int b) { return euclidean_block(sm.points[a], sm.points[b], 0, dx); };
        auto d2 = [&](int a, int b) {
            return euclidean_block(sm.points[a], sm.points[b], dx, dy);
        };
        return d1(idx[0], idx[1]) *
               (d2(idx[0], idx[1]) + d2(idx[2], idx[3]) - d2(idx[0], idx[2]) - d2(idx[1], idx[3]));
    };
    double total = ustats::u_brute_force(bracket, 4, s, config);
    long double nn = n;
    return static_cast<double>(total / (nn * (nn - 1) * (nn - 2) * (nn - 3)));
}

// -------------------------------------------------------------- subcommands

struct CommonOpts {
    int threads = 0;
    std::uint64_t mem_cap = Config{}.memory_cap_entries;
    std::string order_strategy = "auto";

    Config config() const {
        Config c;
        c.threads = threads;
        c.memory_cap_entries = mem_cap;
        if (order_strategy == "auto") c.strategy = ustats::OrderStrategy::Auto;
        else if (order_strategy == "exhaustive") c.strategy = ustats::OrderStrategy::Exhaustive;
        else if (order_strategy == "min-degree") c.strategy = ustats::OrderStrategy::GreedyMinDegree;
        else if (order_strategy == "min-fill") c.strategy = ustats::OrderStrategy::GreedyMinFill;
        else die(2, "unknown order strategy '" + order_strategy + "'");
        return c;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--threads", opts.threads, "Max worker threads (0 = machine parallelism)");
    cmd->add_option("--mem-cap", opts.mem_cap, "Max entries in any one tensor");
    cmd->add_option("--order-strategy", opts.order_strategy,
                    "auto | exhaustive | min-degree | min-fill");
}

int run_statistic(const std::string& kernel_spec, const std::string& data_path,
                  const CommonOpts& opts, bool u_mode) {
    MDKernel kernel = data_kernel(kernel_spec);
    Sample sample = read_csv(data_path);
    Config config = opts.config();
    ustats::RunStats stats;
    double value = u_mode ? ustats::u_statistic(kernel, sample, config, &stats)
                          : ustats::v_statistic(kernel, sample, config, &stats);
    std::cout << format_value(value) << "\n";
    print_timings(stats);
    return 0;
}

int run_analyze(const std::string& signature_text, const std::string& builtin, int extent,
                bool run_it, std::uint64_t seed, const CommonOpts& opts) {
    if (signature_text.empty() == builtin.empty())
        die(2, "analyze needs exactly one of --signature and --builtin");
    std::vector<IndexTuple> signature =
        builtin.empty() ? parse_signature(signature_text) : builtin_signature(builtin);
    Config config = opts.config();
    ustats::ComplexityReport report = ustats::complexity_report(signature, extent, config);

    if (run_it) {
        // Price check against a real execution on synthetic standard-normal
        // data (the estimate prices partitions; execution also folds and
        // marginalizes, so this reports what actually ran).
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss;
        std::vector<Observation> rows(static_cast<std::size_t>(extent));
        for (auto& row : rows) {
            row.resize(3);  // enough for hoif:<m> with k=1: [A, Y, Z1]
            for (double& v : row) v = gauss(rng);
        }
        Sample sample(std::move(rows));

        MDKernel kernel;
        if (!builtin.empty() && builtin.rfind("hoif", 0) == 0) {
            kernel = ustats::hoif_kernel(report.index_count, ustats::truncation_phi(1));
        } else if (builtin == "prod2") {
            kernel = ustats::prod2_kernel();
        } else {
            die(2, "--run supports --builtin prod2 or hoif:<m>");
        }
        ustats::RunStats stats;
        (void)ustats::u_statistic(kernel, sample, config, &stats);
        report.executed_flops = stats.multiply_adds;
    }

    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["signature"] = report.signature;
    j["m"] = report.index_count;
    j["graph"] = {{"vertices", report.graph_vertices}, {"edges", report.graph_edges}};
    nlohmann::ordered_json tw;
    tw["lower"] = report.treewidth_lower;
    tw["upper"] = report.treewidth_upper;
    if (report.treewidth_exact) tw["exact"] = *report.treewidth_exact;
    j["treewidth"] = tw;
    nlohmann::ordered_json by_width = nlohmann::ordered_json::object();
    for (const auto& [width, count] : report.count_by_width)
        by_width[std::to_string(width)] = count;
    j["terms"] = {{"bell", report.bell_count},
                  {"sparsified", report.sparsified_count},
                  {"by_width", by_width},
                  {"M", report.max_quotient_width}};
    j["n"] = report.extent;
    j["flops_estimate"] = report.flops_estimate;
    if (report.executed_flops) j["executed_flops"] = std::to_string(*report.executed_flops);
    j["generated_at"] = iso8601_now();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_motifs(const std::string& graph_path, int order, const CommonOpts& opts) {
    if (order != 3 && order != 4) die(2, "--order must be 3 or 4");
    SimpleGraph graph = read_edge_list(graph_path);
    Config config = opts.config();
    for (const ustats::MotifSpec& spec : ustats::motif_catalog()) {
        if (spec.order != order) continue;
        std::cout << spec.id << " = " << ustats::motif_count(graph, spec, config) << "\n";
    }
    return 0;
}

int run_dcov(const std::string& x_path, const std::string& y_path, bool oracle,
             const CommonOpts& opts) {
    Sample x = read_csv(x_path);
    Sample y = read_csv(y_path);
    if (x.size() != y.size())
        die(2, "row-count mismatch: " + std::to_string(x.size()) + " vs " +
                   std::to_string(y.size()));
    Config config = opts.config();
    ustats::RunStats stats;
    double value = ustats::dcov_squared(x, y, config, &stats);
    std::cout << format_value(value) << "\n";
    if (oracle) {
        if (x.size() > 60) die(2, "--oracle is limited to n <= 60");
        double reference = dcov_oracle(x, y, config);
        double scale = std::max(std::abs(reference), 1e-300);
        std::cout << "oracle_relative_error = "
                  << format_value(std::abs(value - reference) / scale) << "\n";
    }
    print_timings(stats);
    return 0;
}

int run_treewidth(const std::string& graph_path, bool exact, const CommonOpts& opts) {
    SimpleGraph graph = read_edge_list(graph_path);
    Config config = opts.config();
    config.exact_treewidth_bound = std::max(config.exact_treewidth_bound, graph.vertex_count());
    std::cout << "vertices = " << graph.vertex_count() << "\n"
              << "edges = " << graph.edge_count() << "\n"
              << "lower = " << ustats::degeneracy(graph) << "\n";
    int upper = std::min(
        ustats::treewidth_upper(graph, ustats::EliminationHeuristic::MinFill).width,
        ustats::treewidth_upper(graph, ustats::EliminationHeuristic::MinDegree).width);
    std::cout << "upper = " << upper << "\n";
    if (exact) {
        ustats::TreewidthResult result = ustats::treewidth_exact(graph, config);
        std::cout << "exact = " << result.width << "\n";
        std::cout << "order =";
        for (int v : result.order) std::cout << " " << v;
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact U/V-statistics via partition-lattice contraction"};
    app.require_subcommand(1);

    CommonOpts u_opts, v_opts, an_opts, mo_opts, dc_opts, tw_opts;

    auto* cmd_u = app.add_subcommand("u", "U-statistic of a built-in kernel over CSV data");
    std::string u_kernel, u_data;
    cmd_u->add_option("--kernel", u_kernel, "prod2 | hoif:<j>:<k>")->required();
    cmd_u->add_option("--data", u_data, "CSV file, one observation per row")->required();
    add_common(cmd_u, u_opts);

    auto* cmd_v = app.add_subcommand("v", "V-statistic of a built-in kernel over CSV data");
    std::string v_kernel, v_data;
    cmd_v->add_option("--kernel", v_kernel, "prod2 | hoif:<j>:<k>")->required();
    cmd_v->add_option("--data", v_data, "CSV file, one observation per row")->required();
    add_common(cmd_v, v_opts);

    auto* cmd_analyze = app.add_subcommand("analyze", "Contraction-cost report as JSON");
    std::string an_signature, an_builtin;
    int an_n = 0;
    bool an_run = false;
    std::uint64_t an_seed = 20260819;
    cmd_analyze->add_option("--signature", an_signature,
                            "Tuples 'i j, k l, ...' (comma-separated, ids by whitespace)");
    cmd_analyze->add_option("--builtin", an_builtin, "prod2 | hoif:<m> | motif:<id> | dcov");
    cmd_analyze->add_option("--n", an_n, "Extent the cost is priced at")->required();
    cmd_analyze->add_flag("--run", an_run, "Also execute on synthetic data; adds executed_flops");
    cmd_analyze->add_option("--seed", an_seed, "Seed for --run synthetic data");
    add_common(cmd_analyze, an_opts);

    auto* cmd_motifs = app.add_subcommand("motifs", "Induced motif counts of a graph");
    std::string mo_graph;
    int mo_order = 0;
    cmd_motifs->add_option("--graph", mo_graph, "Edge list, one '<u> <v>' pair per line")
        ->required();
    cmd_motifs->add_option("--order", mo_order, "3 (r1-r2) or 4 (r3-r8)")->required();
    add_common(cmd_motifs, mo_opts);

    auto* cmd_dcov = app.add_subcommand("dcov", "Unbiased squared distance covariance");
    std::string dc_x, dc_y;
    bool dc_oracle = false;
    cmd_dcov->add_option("--x", dc_x, "First sample CSV")->required();
    cmd_dcov->add_option("--y", dc_y, "Second sample CSV")->required();
    cmd_dcov->add_flag("--oracle", dc_oracle, "Cross-check against the quadruple loop (n <= 60)");
    add_common(cmd_dcov, dc_opts);

    auto* cmd_tw = app.add_subcommand("treewidth", "Treewidth bounds of a graph");
    std::string tw_graph;
    bool tw_exact = false;
    cmd_tw->add_option("--graph", tw_graph, "Edge list, one '<u> <v>' pair per line")->required();
    cmd_tw->add_flag("--exact", tw_exact, "Also compute the exact width and a witness order");
    add_common(cmd_tw, tw_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_u->parsed()) return run_statistic(u_kernel, u_data, u_opts, true);
        if (cmd_v->parsed()) return run_statistic(v_kernel, v_data, v_opts, false);
        if (cmd_analyze->parsed())
            return run_analyze(an_signature, an_builtin, an_n, an_run, an_seed, an_opts);
        if (cmd_motifs->parsed()) return run_motifs(mo_graph, mo_order, mo_opts);
        if (cmd_dcov->parsed()) return run_dcov(dc_x, dc_y, dc_oracle, dc_opts);
        if (cmd_tw->parsed()) return run_treewidth(tw_graph, tw_exact, tw_opts);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const ustats::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
