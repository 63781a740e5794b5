#include "homorbit/cli.hpp"

#include "homorbit/errors.hpp"
#include "homorbit/oracle.hpp"
#include "homorbit/random_graph.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace homorbit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string format_set(const std::vector<int>& vs) {
    std::string out = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(vs[i]);
    }
    return out + "}";
}

unsigned resolved_threads(unsigned threads) {
    if (threads) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void warn_k_max(int k_max, std::ostream& err) {
    if (k_max > kDefaultMaxPatternVertices)
        err << "warning: k-max " << k_max << " above " << kDefaultMaxPatternVertices
            << "; pattern searches scale factorially\n";
}

double run_seconds(const OrbitCountPlan& plan, const Graph& g, unsigned threads) {
    auto start = std::chrono::steady_clock::now();
    CountResult res = count_orbits(plan, g, CountOptions{threads});
    auto stop = std::chrono::steady_clock::now();
    (void)res;
    return std::chrono::duration<double>(stop - start).count();
}

int cmd_analyze(const std::string& pattern_path, int k_max, const std::string& json_path,
                bool dump_decompositions, std::ostream& out, std::ostream& err) {
    warn_k_max(k_max, err);
    Pattern h = parse_pattern(read_file(pattern_path), k_max);
    OrbitPartition orbits = automorphism_orbits(h);
    int licl_value = licl(h);
    int lipco_value = lipco(h);
    Verdict verdict = dichotomy_verdict(lipco_value);

    out << "pattern: k=" << h.vertex_count() << " m=" << h.edges().size() << "\n";
    out << "orbits (" << orbits.orbits.size() << "):";
    for (const auto& o : orbits.orbits) out << ' ' << format_set(o);
    out << "\n";
    out << "licl: " << licl_value << "\n";
    out << "lipco: " << lipco_value << "\n";
    out << "verdict: " << to_string(verdict);
    if (verdict == Verdict::conjecturally_hard)
        out << " (lipco > 5; no near-linear algorithm under the triangle detection "
               "conjecture)";
    out << "\n";

    json doc;
    doc["k"] = h.vertex_count();
    doc["edges"] = h.edges();
    doc["orbits"] = orbits.orbits;
    doc["licl"] = licl_value;
    doc["lipco"] = lipco_value;
    doc["verdict"] = std::string(to_string(verdict));
    doc["merged_patterns"] = json::array();

    out << "independent sets and merged patterns:\n";
    for (const auto& orbit : orbits.orbits) {
        for (const auto& s : orbit_independent_sets(h, orbit)) {
            MergedPattern merged = merge_pattern(h, s);
            out << "  orbit " << format_set(orbit) << "  S=" << format_set(s)
                << "  sign " << (merged.sign > 0 ? "+1" : "-1") << "  H_S: k="
                << merged.base.vertex_count() << " m=" << merged.base.edges().size()
                << " licl=" << licl(merged.base) << "\n";
            json entry;
            entry["orbit_rep"] = orbit.front();
            entry["set"] = s;
            entry["sign"] = merged.sign;
            entry["k"] = merged.base.vertex_count();
            entry["edges"] = merged.base.edges();
            entry["licl"] = licl(merged.base);
            doc["merged_patterns"].push_back(entry);
        }
    }

    if (dump_decompositions) {
        out << "acyclic orientations and width-1 decompositions:\n";
        std::size_t index = 0;
        for (const DagPattern& p : acyclic_orientations(h)) {
            out << "  P" << index++ << ":";
            for (auto [u, v] : p.arcs()) out << ' ' << u << "->" << v;
            out << "  sources " << format_set(sources(p));
            auto tree = width1_decomposition(p);
            if (!tree) {
                out << "  no width-1 decomposition\n";
                continue;
            }
            out << "  tree:";
            for (std::size_t b = 0; b < tree->bags.size(); ++b) {
                out << ' ' << format_set(tree->bags[b]);
                if (tree->parent[b] >= 0)
                    out << "<-" << format_set(tree->bags[static_cast<std::size_t>(tree->parent[b])]);
            }
            out << "\n";
        }
    }

    if (!json_path.empty()) {
        std::ofstream jf(json_path, std::ios::binary);
        if (!jf) throw std::runtime_error("cannot open " + json_path);
        jf << doc.dump(2) << "\n";
        out << "wrote " << json_path << "\n";
    }
    return kExitOk;
}

int cmd_count(const std::string& pattern_path, const std::string& graph_path,
              const std::string& out_path, unsigned threads, int k_max, bool remap,
              std::ostream& out, std::ostream& err) {
    warn_k_max(k_max, err);
    Pattern h = parse_pattern(read_file(pattern_path), k_max);
    OrbitCountPlan plan = build_count_plan(h);  // dichotomy refusal happens here
    Graph g = load_graph(read_file(graph_path), LoadOptions{remap}).graph;

    auto start = std::chrono::steady_clock::now();
    CountResult res = count_orbits(plan, g, CountOptions{threads});
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream tsv;
    write_orbit_tsv(tsv, res.orbit);
    if (out_path == "-") {
        out << tsv.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_path);
        f << tsv.str();
    }

    out << "graph: n=" << g.vertex_count() << " m=" << g.edge_count()
        << " kappa=" << res.kappa << "\n";
    out << "pattern: k=" << h.vertex_count() << " orbits=" << plan.orbits.orbits.size()
        << " lipco=" << plan.lipco_value << "\n";
    out << "hom_total: " << res.hom_total << "\n";
    for (std::size_t oi = 0; oi < plan.orbits.orbits.size(); ++oi)
        out << "agg[orbit " << res.orbit.orbit_representatives[oi]
            << "]: " << aggregate(res.orbit, oi) << "\n";
    out << "rows: " << static_cast<std::uint64_t>(g.vertex_count()) * plan.orbits.orbits.size()
        << "\n";
    out << "wall_seconds: " << seconds << "\n";
    if (out_path != "-") out << "wrote " << out_path << "\n";
    return kExitOk;
}

int cmd_bench(const std::string& pattern_path, std::vector<VertexId> sizes, VertexId kappa,
              std::uint64_t seed, int runs, unsigned threads, int k_max, std::ostream& out,
              std::ostream& err) {
    warn_k_max(k_max, err);
    Pattern h = parse_pattern(read_file(pattern_path), k_max);
    OrbitCountPlan plan = build_count_plan(h);
    run_bench(plan, sizes, kappa, seed, runs, threads, out);
    return kExitOk;
}

} // namespace

std::vector<BenchRow> run_bench(const OrbitCountPlan& plan,
                                const std::vector<VertexId>& sizes, VertexId kappa,
                                std::uint64_t seed, int runs, unsigned threads,
                                std::ostream& log) {
    std::vector<BenchRow> rows;
    log << "seed: " << seed << "  runs per size: " << runs << "  threads: "
        << resolved_threads(threads) << "\n";
    log << "n\tm\tkappa\tmedian_s\tratio\n";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Graph g = generate_degenerate_graph(sizes[i], kappa, seed + i);
        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(runs));
        for (int r = 0; r < runs; ++r) times.push_back(run_seconds(plan, g, threads));
        std::sort(times.begin(), times.end());
        double median = times[times.size() / 2];
        if (times.size() % 2 == 0) median = (median + times[times.size() / 2 - 1]) / 2;

        BenchRow row;
        row.n = g.vertex_count();
        row.m = g.edge_count();
        row.kappa = degeneracy_order(g).kappa;
        row.median_seconds = median;
        row.ratio = rows.empty() ? 0.0 : median / rows.back().median_seconds;
        rows.push_back(row);
        log << row.n << '\t' << row.m << '\t' << row.kappa << '\t' << row.median_seconds
            << '\t';
        if (rows.size() > 1)
            log << row.ratio << "\n";
        else
            log << "-\n";
    }
    return rows;
}

VerifyOutcome run_verify(const std::string& corpus_dir, std::uint64_t budget,
                         unsigned threads, int k_max, std::ostream& out) {
    VerifyOutcome outcome;
    std::vector<fs::path> pattern_files;
    for (const auto& entry : fs::directory_iterator(corpus_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pattern")
            pattern_files.push_back(entry.path());
    std::sort(pattern_files.begin(), pattern_files.end());

    if (pattern_files.empty()) {
        out << "warning: empty corpus at " << corpus_dir << "\n";
        out << "PASS (0 pairs)\n";
        return outcome;
    }

    unsigned parallel = std::max(2u, resolved_threads(threads));
    for (const auto& pfile : pattern_files) {
        ++outcome.pairs;
        std::string name = pfile.stem().string();
        fs::path gfile = pfile;
        gfile.replace_extension(".graph");
        auto fail = [&](const std::string& reason) {
            ++outcome.failed;
            if (outcome.first_failure.empty()) outcome.first_failure = name + ": " + reason;
            out << "FAIL " << name << " (" << reason << ")\n";
        };
        try {
            if (!fs::exists(gfile)) {
                fail("missing " + gfile.filename().string());
                continue;
            }
            Pattern h = parse_pattern(read_file(pfile.string()), k_max);
            Graph g = load_graph(read_file(gfile.string()));
            OrbitCountPlan plan = build_count_plan(h);

            CountResult seq = count_orbits(plan, g, CountOptions{1});
            CountResult par = count_orbits(plan, g, CountOptions{parallel});
            std::ostringstream seq_tsv, par_tsv;
            write_orbit_tsv(seq_tsv, seq.orbit);
            write_orbit_tsv(par_tsv, par.orbit);
            if (seq_tsv.str() != par_tsv.str()) {
                fail("sequential and parallel runs disagree");
                continue;
            }

            OrbitHomTable oracle = oracle_orbit_homs(h, g, budget);
            bool mismatch = false;
            for (std::size_t oi = 0; oi < oracle.orbit_representatives.size() && !mismatch; ++oi)
                for (VertexId v = 0; v < g.vertex_count() && !mismatch; ++v)
                    if (seq.orbit.at(oi, v) != oracle.at(oi, v)) {
                        mismatch = true;
                        fail("engine=" + std::to_string(seq.orbit.at(oi, v)) +
                             " oracle=" + std::to_string(oracle.at(oi, v)) + " at orbit " +
                             std::to_string(oracle.orbit_representatives[oi]) + " vertex " +
                             std::to_string(v));
                    }
            if (mismatch) continue;

            fs::path expected = pfile;
            expected.replace_extension(".expected.tsv");
            if (fs::exists(expected) && read_file(expected.string()) != seq_tsv.str()) {
                fail("output differs from " + expected.filename().string());
                continue;
            }

            ++outcome.passed;
            out << "PASS " << name << "\n";
        } catch (const budget_exceeded& e) {
            ++outcome.skipped;
            out << "SKIP " << name << " (" << e.what() << ")\n";
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    out << (outcome.failed == 0 ? "PASS" : "FAIL") << " (" << outcome.passed << "/"
        << outcome.pairs << " pairs";
    if (outcome.skipped) out << ", " << outcome.skipped << " skipped";
    out << ")\n";
    return outcome;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("homorbit");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"homomorphism orbit counting on bounded-degeneracy graphs"};
    app.require_subcommand(1);

    std::string pattern_path, graph_path, out_path = "-", json_path, corpus_dir;
    unsigned threads = 0;
    int k_max = kDefaultMaxPatternVertices;
    bool remap = false, dump_decompositions = false;
    std::uint64_t budget = kDefaultOracleBudget;
    std::uint64_t seed = 1;
    int runs = 1;
    VertexId kappa = 3;
    std::vector<VertexId> sizes;

    CLI::App* analyze = app.add_subcommand("analyze", "orbits, licl, lipco, dichotomy verdict");
    analyze->add_option("--pattern", pattern_path, "pattern edge-list file")->required();
    analyze->add_option("--k-max", k_max, "max pattern vertices");
    analyze->add_option("--json", json_path, "write machine-readable report");
    analyze->add_flag("--dump-decompositions", dump_decompositions,
                      "print width-1 trees per orientation");

    CLI::App* count = app.add_subcommand("count", "exact per-vertex orbit counts (TSV)");
    count->add_option("--pattern", pattern_path, "pattern edge-list file")->required();
    count->add_option("--graph", graph_path, "graph edge-list file")->required();
    count->add_option("--out", out_path, "output TSV path, '-' for stdout");
    count->add_option("--threads", threads, "worker threads (0 = hardware)");
    count->add_option("--k-max", k_max, "max pattern vertices");
    count->add_flag("--remap", remap, "densify sparse external vertex ids");

    CLI::App* verify = app.add_subcommand("verify", "engine vs oracle over a corpus");
    verify->add_option("--corpus", corpus_dir, "directory of .pattern/.graph pairs")->required();
    verify->add_option("--budget", budget, "oracle candidate-map budget");
    verify->add_option("--threads", threads, "parallel-run thread count");
    verify->add_option("--k-max", k_max, "max pattern vertices");

    CLI::App* bench = app.add_subcommand("bench", "scaling on generated graphs");
    bench->add_option("--pattern", pattern_path, "pattern edge-list file")->required();
    bench->add_option("--sizes", sizes, "comma-separated vertex counts")
        ->required()
        ->delimiter(',');
    bench->add_option("--kappa", kappa, "generator degeneracy bound");
    bench->add_option("--seed", seed, "generator seed");
    bench->add_option("--runs", runs, "timed runs per size (median reported)");
    bench->add_option("--threads", threads, "worker threads (0 = hardware)");
    bench->add_option("--k-max", k_max, "max pattern vertices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed())
            return cmd_analyze(pattern_path, k_max, json_path, dump_decompositions, out, err);
        if (count->parsed())
            return cmd_count(pattern_path, graph_path, out_path, threads, k_max, remap, out, err);
        if (verify->parsed()) {
            VerifyOutcome outcome = run_verify(corpus_dir, budget, threads, k_max, out);
            return outcome.failed == 0 ? kExitOk : kExitUsage;
        }
        if (bench->parsed())
            return cmd_bench(pattern_path, sizes, kappa, seed, runs, threads, k_max, out, err);
    } catch (const dichotomy_violation& e) {
        err << "error: " << e.what() << "\n";
        return kExitDichotomy;
    } catch (const arithmetic_overflow& e) {
        err << "error: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace homorbit::cli
