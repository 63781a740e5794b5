#ifndef HOMORBIT_CLI_HPP
#define HOMORBIT_CLI_HPP

#include "homorbit/counting.hpp"
#include "homorbit/graph.hpp"
#include "homorbit/pattern.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace homorbit::cli {

// Exit codes: scripts can branch on the dichotomy refusal.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDichotomy = 2;
inline constexpr int kExitOverflow = 3;

// Full CLI entry point: analyze / count / verify / bench.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRow {
    VertexId n = 0;
    std::uint64_t m = 0;
    VertexId kappa = 0;
    double median_seconds = 0.0;
    double ratio = 0.0;  // median vs previous size; 0 on the first row
};

// Generates seeded bounded-degeneracy graphs for each size, times the
// counting core `runs` times each, and reports medians with doubling ratios.
std::vector<BenchRow> run_bench(const OrbitCountPlan& plan,
                                const std::vector<VertexId>& sizes, VertexId kappa,
                                std::uint64_t seed, int runs, unsigned threads,
                                std::ostream& log);

struct VerifyOutcome {
    int pairs = 0;
    int passed = 0;
    int skipped = 0;
    int failed = 0;
    std::string first_failure;
};

// Runs the engine (sequential and parallel) against the oracle on every
// <name>.pattern / <name>.graph pair in the corpus directory; an optional
// <name>.expected.tsv is compared byte for byte.
VerifyOutcome run_verify(const std::string& corpus_dir, std::uint64_t budget,
                         unsigned threads, int k_max, std::ostream& out);

} // namespace homorbit::cli

#endif
