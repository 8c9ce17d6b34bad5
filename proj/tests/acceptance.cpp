// acceptance.cpp - end-to-end acceptance suite. Runs every criterion at its
// stated size and tolerance and prints one pass/fail line each. Exits
// nonzero if any criterion fails. APBALL_TEST_CAP can shrink the trial
// counts for constrained environments; the defaults are the full sizes.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "apball/bench.hpp"
#include "apball/dot.hpp"
#include "apball/matmul.hpp"
#include "apball/oracle.hpp"

using namespace apball;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::printf("%-4s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) g_failures++;
}

void report_verify(int criterion, const std::string& what, const bench::VerifyReport& rep) {
    std::string detail = std::to_string(rep.trials) + " trials, " +
                         std::to_string(rep.failures) + " failures";
    if (!rep.ok()) detail += "\n  reproducer: " + rep.first_failure;
    report(criterion, what, rep.ok(), detail);
}

double now_ms() {
    return double(std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now().time_since_epoch())
                      .count()) /
           1e6;
}

template <class F>
double median_ms(F&& f, std::size_t reps) {
    std::vector<double> t;
    f();
    for (std::size_t i = 0; i < reps; i++) {
        double a = now_ms();
        f();
        t.push_back(now_ms() - a);
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

volatile std::uint64_t sink;

}  // namespace

int main() {
    using bench::cap_trials;

    // 1. containment over 10,000 seeded random instances
    {
        double t0 = now_ms();
        auto rep = bench::verify_dot_containment(cap_trials(10000), 20240001);
        double el = now_ms() - t0;
        bool ok = rep.ok() && el < 120000.0;
        report_verify(1, "dot containment (hull subset of output ball)", rep);
        if (rep.ok() && !ok)
            report(1, "dot containment runtime < 2 min", false,
                   std::to_string(el / 1000.0) + " s");
    }

    // 2. exact dyadic dots give an exactly zero radius
    report_verify(2, "exact inputs with sufficient p give radius zero",
                  bench::verify_dot_exact_zero(cap_trials(1000), 20240002));

    // 3. accuracy bound r <= 2^(-p + bc(N) + 7) * sum |x_i y_i|
    report_verify(3, "accuracy bound on radius-free instances",
                  bench::verify_dot_accuracy_bound(cap_trials(10000), 20240003));

    // 4. uniform dot speedup at p = 128, N = 100 (>= 1.5x ball, >= 2x approx)
    {
        bench::Rng rng(20240004);
        const std::size_t n = 100;
        const std::int64_t p = 128;
        auto x = bench::uniform_profile(rng, n, p);
        auto y = bench::uniform_profile(rng, n, p);
        const std::size_t reps = 51;
        double ball_ms = median_ms(
            [&] {
                Ball r = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
                sink = sink + std::uint64_t(r.mid.kind());
            },
            reps);
        double approx_ms = median_ms(
            [&] {
                ApFloat r = dot_approx(nullptr, false, x.data(), 1, y.data(), 1, n, p);
                sink = sink + std::uint64_t(r.kind());
            },
            reps);
        double naive_ms = median_ms(
            [&] {
                Ball r = bench::naive_dot_ball(x.data(), 1, y.data(), 1, n, p);
                sink = sink + std::uint64_t(r.mid.kind());
            },
            reps);
        double rb = naive_ms / ball_ms, ra = naive_ms / approx_ms;
        char buf[160];
        std::snprintf(buf, sizeof buf, "ball %.2fx (need 1.5x), approx %.2fx (need 2x)", rb,
                      ra);
        report(4, "uniform dot speedup vs naive loop (p=128, N=100)", rb >= 1.5 && ra >= 2.0,
               buf);
    }

    // 5. structured dot speedup: decreasing magnitudes, N = 1000, p = 1024
    {
        const std::size_t n = 1000;
        const std::int64_t p = 1024;
        std::vector<Ball> x, y;
        bench::decreasing_profile(n, p, x, y);
        double ball_ms = median_ms(
            [&] {
                Ball r = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
                sink = sink + std::uint64_t(r.mid.kind());
            },
            21);
        double naive_ms = median_ms(
            [&] {
                Ball r = bench::naive_dot_ball(x.data(), 1, y.data(), 1, n, p);
                sink = sink + std::uint64_t(r.mid.kind());
            },
            5);
        double ratio = naive_ms / ball_ms;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.2fx (need 3x)", ratio);
        report(5, "decreasing-magnitude dot speedup (N=1000, p=1024)", ratio >= 3.0, buf);
    }

    // 6. block matmul vs classical, uniform N = 200, p = 128
    {
        bench::Rng rng(20240006);
        BallMatrix a = bench::uniform_matrix(rng, 200, 128);
        BallMatrix b = bench::uniform_matrix(rng, 200, 128);
        double block_ms = median_ms(
            [&] {
                BallMatrix c = block_matmul_ball(a, b, 128);
                sink = sink + std::uint64_t(c.at(0, 0).mid.kind());
            },
            3);
        double classical_ms = median_ms(
            [&] {
                BallMatrix c = classical_matmul_ball(a, b, 128);
                sink = sink + std::uint64_t(c.at(0, 0).mid.kind());
            },
            3);
        double ratio = classical_ms / block_ms;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.2fx (need 1.5x)", ratio);
        report(6, "block matmul speedup vs classical (uniform N=200, p=128)", ratio >= 1.5,
               buf);
    }

    // 7. block matmul containment and radius within 16x of classical
    report_verify(7, "block matmul accuracy (containment, radius <= 16x classical)",
                  bench::verify_matmul_block_accuracy(cap_trials(200), 20240007));

    // 8. multimodular integer product identical to classical
    report_verify(8, "multimodular == classical integer matmul",
                  bench::verify_matmul_multimodular(cap_trials(1000), 20240008));

    // 9. complex three-multiplication rewrite produces identical balls
    report_verify(9, "complex 3-mult rewrite bit-identical to 4-mult route",
                  bench::verify_complex_threeprod(cap_trials(1000), 20240009));

    // 10. planner: uniform -> 1 block, pascal N=100 p=53 -> more than one
    report_verify(10, "block planner (uniform 1 block, pascal > 1)",
                  bench::verify_matmul_planner());

    // 11. series exp coefficients contain the rational recurrence values
    report_verify(11, "series exp basecase vs rational recurrence (len=16, p=128)",
                  bench::verify_series_exp(cap_trials(500), 20240011));

    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
