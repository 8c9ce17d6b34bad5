#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apball/bench.hpp"
#include "apball/oracle.hpp"
#include "apball/poly.hpp"

using namespace apball;
using oracle::Dyadic;
using oracle::Int;
using oracle::Rat;

TEST_CASE("poly_mullow squares (1+x)") {
    BallPoly a;
    a.c = {Ball::from_i64(1), Ball::from_i64(1)};
    BallPoly sq = poly_mullow_classical(a, a, 3, 64);
    REQUIRE(sq.length() == 3);
    CHECK(ball_identical(sq.c[0], Ball::from_i64(1)));
    CHECK(ball_identical(sq.c[1], Ball::from_i64(2)));
    CHECK(ball_identical(sq.c[2], Ball::from_i64(1)));

    CHECK(poly_mullow_classical(a, a, 0, 64).length() == 0);
}

TEST_CASE("poly_mullow convolution containment (sampled)") {
    auto rep = bench::verify_poly_mullow(200, 71);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
}

TEST_CASE("series_exp of x gives 1/k! coefficients") {
    BallPoly a;
    a.c.assign(5, Ball::zero());
    a.c[1] = Ball::from_i64(1);
    BallPoly e = series_exp_basecase(a, 5, 128);
    REQUIRE(e.length() == 5);
    Rat expect = Rat::from_int(1);
    for (std::size_t k = 0; k < 5; k++) {
        if (k) expect = expect / Rat::from_int(std::int64_t(k));
        auto iv = oracle::interval_from_ball(e.c[k]);
        CHECK(Rat::from_dyadic(iv.lo) <= expect);
        CHECK(expect <= Rat::from_dyadic(iv.hi));
    }
    // 1/2 is dyadic, so coefficient 2 should in fact be exact
    CHECK(e.c[2].rad.is_zero());
}

TEST_CASE("series_exp of zero is one") {
    BallPoly a;
    a.c.assign(4, Ball::zero());
    BallPoly e = series_exp_basecase(a, 4, 64);
    CHECK(ball_identical(e.c[0], Ball::from_i64(1)));
    for (std::size_t k = 1; k < 4; k++) CHECK(e.c[k].is_zero_exact());
}

TEST_CASE("series_exp rejects a nonzero constant term") {
    BallPoly a;
    a.c = {Ball::from_i64(1)};
    CHECK_THROWS_AS(series_exp_basecase(a, 4, 64), std::domain_error);
}

TEST_CASE("series_exp recurrence containment (sampled)") {
    auto rep = bench::verify_series_exp(60, 73);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
}

TEST_CASE("derivative identity: (exp a)' contains a' exp a") {
    bench::Rng rng(79);
    std::mt19937_64 g(83);
    for (int t = 0; t < 100; t++) {
        const std::size_t len = 2 + g() % 10;
        BallPoly a;
        a.c.assign(len, Ball::zero());
        for (std::size_t j = 1; j < len; j++)
            if (g() % 4) a.c[j].mid = bench::random_apfloat(rng, 2, -8, 8);
        const std::int64_t p = 96;
        BallPoly e = series_exp_basecase(a, len, p);
        // a' with exact coefficient scaling
        BallPoly da;
        da.c.assign(len - 1, Ball::zero());
        for (std::size_t j = 0; j + 1 < len; j++) {
            da.c[j].mid = apfloat_mul_u64_exact(a.c[j + 1].mid, j + 1);
            da.c[j].rad = mag_mul_up(a.c[j + 1].rad, Mag::from_u64_upper(j + 1));
        }
        BallPoly rhs = poly_mullow_classical(da, e, len - 1, p);
        for (std::size_t k = 0; k + 1 < len; k++) {
            Ball lhs{apfloat_mul_u64_exact(e.c[k + 1].mid, k + 1),
                     mag_mul_up(e.c[k + 1].rad, Mag::from_u64_upper(k + 1))};
            auto il = oracle::interval_from_ball(lhs);
            auto ir = oracle::interval_from_ball(rhs.c[k]);
            CHECK(il.lo <= ir.lo);
            CHECK(ir.hi <= il.hi);
        }
    }
}
