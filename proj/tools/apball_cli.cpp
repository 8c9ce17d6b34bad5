// apball_cli.cpp - benchmark and verification command line.
//
//   apball bench --op dot_ball --n 100 --prec 128 --profile uniform --reps 50 [--csv out.csv]
//   apball verify --suite all --trials 1000 --seed 42
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "apball/bench.hpp"

int main(int argc, char** argv) {
    CLI::App app{"arbitrary-precision ball dot product / matrix multiplication harness"};
    app.require_subcommand(1);

    apball::bench::BenchSpec spec;
    std::string csv_path;
    auto* bench = app.add_subcommand("bench", "run a timing benchmark");
    bench->add_option("--op", spec.op,
                      "operation: dot_ball dot_approx dot_complex matmul_classical "
                      "matmul_block matmul_auto poly_mul series_exp")
        ->required();
    bench->add_option("--n", spec.n, "problem size")->required();
    bench->add_option("--prec", spec.prec, "precision in bits")->required();
    bench->add_option("--profile", spec.profile,
                      "data profile: uniform decreasing_magnitude pascal complex_uniform");
    bench->add_option("--reps", spec.reps, "timed repetitions");
    bench->add_option("--seed", spec.seed, "generator seed");
    bench->add_option("--csv", csv_path, "append a CSV row to this file");

    std::string suite = "all";
    std::uint64_t trials = 1000, seed = 1;
    auto* verify = app.add_subcommand("verify", "run oracle verification suites");
    verify->add_option("--suite", suite, "suite: dot matmul poly all");
    verify->add_option("--trials", trials, "trials per check");
    verify->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bench->parsed()) {
            apball::bench::BenchResult r = apball::bench::run_bench(spec);
            std::cout << spec.op << " n=" << spec.n << " p=" << spec.prec
                      << " profile=" << spec.profile << "\n"
                      << "  median " << r.median_ns / 1e6 << " ms, " << r.ns_per_term
                      << " ns/term, naive " << r.naive_ns / 1e6 << " ms, ratio "
                      << r.ratio_vs_naive;
            if (r.blocks) std::cout << ", blocks " << r.blocks;
            std::cout << "\n";
            if (!csv_path.empty()) {
                bool fresh = !std::ifstream(csv_path).good();
                std::ofstream os(csv_path, std::ios::app);
                if (fresh) apball::bench::write_csv_header(os);
                apball::bench::write_csv_row(os, spec, r);
            }
            return 0;
        }
        return apball::bench::run_verify(suite, trials, seed, std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
