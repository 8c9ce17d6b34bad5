#pragma once
// bench.hpp - benchmark harness and verification suites for the CLI and the
// acceptance tests. Benchmarks report wall-clock nanoseconds per term and
// ratios against a naive per-term ball multiply-add loop; verification
// suites run the oracle-containment and invariant checks deterministically
// under a fixed seed.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "apball/ball.hpp"
#include "apball/matmul.hpp"

namespace apball::bench {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    std::uint64_t u64() { return g(); }
    // inclusive range
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(g() % std::uint64_t(hi - lo + 1));
    }
    bool chance(unsigned percent) { return g() % 100 < percent; }
};

// random finite nonzero float with 1..max_limbs mantissa limbs and value
// exponent drawn from [exp_lo, exp_hi]
ApFloat random_apfloat(Rng& rng, std::size_t max_limbs, std::int64_t exp_lo,
                       std::int64_t exp_hi);
Mag random_mag(Rng& rng, std::int64_t exp_lo, std::int64_t exp_hi);
Ball random_ball(Rng& rng, std::size_t max_limbs, std::int64_t exp_lo, std::int64_t exp_hi,
                 unsigned zero_rad_percent);

// deterministic dyadic approximation of pi (cached per precision)
ApFloat pi_approx(std::int64_t bits);

// data profiles
std::vector<Ball> uniform_profile(Rng& rng, std::size_t n, std::int64_t p);
void decreasing_profile(std::size_t n, std::int64_t p, std::vector<Ball>& x,
                        std::vector<Ball>& y);
BallMatrix uniform_matrix(Rng& rng, std::size_t n, std::int64_t p);
BallMatrix pascal_matrix(std::size_t n, std::int64_t p);  // pi*C(i+j,i) at 2p bits
std::vector<ComplexBall> complex_uniform_profile(Rng& rng, std::size_t n, std::int64_t p);

// naive per-term baselines
Ball naive_dot_ball(const Ball* x, std::ptrdiff_t xs, const Ball* y, std::ptrdiff_t ys,
                    std::size_t n, std::int64_t p);
ApFloat naive_dot_approx(const Ball* x, std::ptrdiff_t xs, const Ball* y, std::ptrdiff_t ys,
                         std::size_t n, std::int64_t p);
BallMatrix naive_matmul_ball(const BallMatrix& a, const BallMatrix& b, std::int64_t p);

struct BenchSpec {
    std::string op;       // dot_ball dot_approx dot_complex matmul_classical
                          // matmul_block matmul_auto poly_mul series_exp
    std::size_t n = 100;
    std::int64_t prec = 128;
    std::string profile = "uniform";  // uniform decreasing_magnitude pascal complex_uniform
    std::size_t reps = 10;
    std::uint64_t seed = 1;
};

struct BenchResult {
    double ns_per_term = 0;
    double ratio_vs_naive = 0;
    std::size_t blocks = 0;
    double median_ns = 0;
    double naive_ns = 0;
};

// throws std::invalid_argument on an unknown op/profile combination
BenchResult run_bench(const BenchSpec& spec);
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const BenchSpec& spec, const BenchResult& r);

// ------------------------------------------------------------ verification

struct VerifyReport {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::string first_failure;  // serialized reproducer
    bool ok() const { return failures == 0; }
};

VerifyReport verify_dot_containment(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_dot_exact_zero(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_dot_accuracy_bound(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_dot_subtract_symmetry(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_complex_threeprod(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_matmul_block_accuracy(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_matmul_multimodular(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_matmul_planner();
VerifyReport verify_poly_mullow(std::uint64_t trials, std::uint64_t seed);
VerifyReport verify_series_exp(std::uint64_t trials, std::uint64_t seed);

// suite in {dot, matmul, poly, all}; returns 0 on success, 1 on any failure
int run_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               std::ostream& os);

// APBALL_TEST_CAP caps per-suite trial counts for constrained CI runs
std::uint64_t cap_trials(std::uint64_t trials);

}  // namespace apball::bench
