#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "apball/bench.hpp"
#include "apball/oracle.hpp"

using namespace apball;

TEST_CASE("pi approximation is accurate") {
    // check against the oracle via Machin at a higher precision
    ApFloat lo_bits = bench::pi_approx(64);
    ApFloat hi_bits = bench::pi_approx(512);
    oracle::Dyadic a = oracle::dyadic_from_apfloat(lo_bits);
    oracle::Dyadic b = oracle::dyadic_from_apfloat(hi_bits);
    oracle::Dyadic diff = (a - b).abs();
    CHECK(diff <= oracle::Dyadic{oracle::Int(1), -60});
    // 3 < pi < 3.2
    CHECK(oracle::Dyadic::from_int(3) <= b);
    CHECK(b <= oracle::Dyadic{oracle::Int(16), -2} + oracle::Dyadic{oracle::Int(1), -3});
}

TEST_CASE("run_bench smoke and validation") {
    bench::BenchSpec spec;
    spec.op = "dot_ball";
    spec.n = 16;
    spec.prec = 64;
    spec.reps = 2;
    auto r = bench::run_bench(spec);
    CHECK(r.ns_per_term > 0);
    CHECK(r.naive_ns > 0);

    spec.op = "poly_mul";
    spec.n = 6;
    r = bench::run_bench(spec);
    CHECK(r.ns_per_term > 0);

    spec.op = "series_exp";
    r = bench::run_bench(spec);
    CHECK(r.ns_per_term > 0);

    spec.op = "matmul_auto";
    spec.n = 8;
    r = bench::run_bench(spec);
    CHECK(r.ns_per_term > 0);

    spec.op = "nonsense";
    CHECK_THROWS_AS(bench::run_bench(spec), std::invalid_argument);
    spec.op = "dot_ball";
    spec.n = 0;
    CHECK_THROWS_AS(bench::run_bench(spec), std::invalid_argument);
}

TEST_CASE("csv row format") {
    bench::BenchSpec spec;
    spec.op = "dot_ball";
    spec.n = 4;
    spec.prec = 53;
    spec.reps = 1;
    auto r = bench::run_bench(spec);
    std::ostringstream os;
    bench::write_csv_header(os);
    bench::write_csv_row(os, spec, r);
    std::string s = os.str();
    CHECK(s.rfind("operation,N,p,profile,ns_per_term,ratio_vs_naive,blocks\n", 0) == 0);
    CHECK(s.find("dot_ball,4,53,uniform,") != std::string::npos);
}

TEST_CASE("verify runs are deterministic under a fixed seed") {
    std::ostringstream a, b;
    int ra = bench::run_verify("poly", 30, 1234, a);
    int rb = bench::run_verify("poly", 30, 1234, b);
    CHECK(ra == 0);
    CHECK(rb == 0);
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());

    std::ostringstream c;
    CHECK(bench::run_verify("bogus", 10, 1, c) == 2);
}

TEST_CASE("bench reports multiple blocks on the pascal profile") {
    bench::BenchSpec spec;
    spec.op = "matmul_block";
    spec.n = 100;
    spec.prec = 53;
    spec.profile = "pascal";
    spec.reps = 1;
    auto r = bench::run_bench(spec);
    CHECK(r.blocks > 1);
}
