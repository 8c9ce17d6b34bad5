#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apball/bench.hpp"
#include "apball/dot.hpp"
#include "apball/oracle.hpp"

using namespace apball;
using oracle::Dyadic;
using oracle::Int;

namespace {

std::vector<std::pair<Ball, Ball>> ones(std::size_t n) {
    std::vector<std::pair<Ball, Ball>> t(n);
    for (auto& [x, y] : t) x = y = Ball::from_i64(1);
    return t;
}

}  // namespace

TEST_CASE("dot_setup sizes the accumulator") {
    auto terms = ones(100);
    DotPlan plan = dot_setup(terms, 128);
    CHECK(plan.status == DotStatus::Proceed);
    CHECK(plan.padding == 11);  // 4 + bc(100)
    CHECK(plan.extend == 8);    // bc(100) + 1
    CHECK(plan.n_s == 3);       // ceil(147/64)
    CHECK(plan.e_s == plan.e_max + 8);
    CHECK(plan.p_eff == 128);
}

TEST_CASE("dot_setup precision reduction against the radius floor") {
    // e_max = 0, e_rad = -10: p reduced to 40
    Ball x{apfloat_normalize(false, 0, std::vector<Limb>{Limb(1) << 63}),
           Mag::from_parts(Limb(1) << 29, -10)};
    Ball y = Ball::exact(apfloat_normalize(false, 0, std::vector<Limb>{Limb(1) << 63}));
    std::vector<std::pair<Ball, Ball>> terms{{x, y}};
    DotPlan plan = dot_setup(terms, 1000);
    CHECK(plan.status == DotStatus::Proceed);
    CHECK(plan.e_max == 0);
    CHECK(plan.e_rad == -10);
    CHECK(plan.p_eff == 40);
}

TEST_CASE("dot_setup zero and fallback statuses") {
    std::vector<std::pair<Ball, Ball>> z(5);
    CHECK(dot_setup(z, 64).status == DotStatus::ZeroResult);

    auto terms = ones(3);
    terms[1].first.mid = ApFloat::nan();
    CHECK(dot_setup(terms, 64).status == DotStatus::Fallback);

    auto huge = ones(2);
    huge[0].first.mid = apfloat_mul_2exp(ApFloat::from_i64(1), std::int64_t(1) << 61);
    CHECK(dot_setup(huge, 64).status == DotStatus::Fallback);

    auto hugerad = ones(2);
    hugerad[0].first.rad = Mag::from_parts(Limb(1) << 29, (std::int64_t(1) << 60) + 5);
    CHECK(dot_setup(hugerad, 64).status == DotStatus::Fallback);
}

TEST_CASE("dot_accumulate_term places a single product") {
    DotPlan plan;
    plan.status = DotStatus::Proceed;
    plan.e_max = 2;
    plan.e_s = 10;
    plan.n_s = 2;
    plan.p_eff = 53;
    DotAccumulator acc;
    dot_init(plan, acc);
    ApFloat one = ApFloat::from_i64(1);
    dot_accumulate_term(plan, acc, one, one);
    CHECK(acc.err == 0);
    Ball out = dot_finalize(plan, acc, 53);
    CHECK(ball_identical(out, Ball::from_i64(1)));
}

TEST_CASE("dot_accumulate_term skips terms below the window") {
    DotPlan plan;
    plan.status = DotStatus::Proceed;
    plan.e_s = 1000;  // term exponent 2 -> shift 998 >= 128
    plan.n_s = 2;
    plan.p_eff = 53;
    DotAccumulator acc;
    dot_init(plan, acc);
    ApFloat one = ApFloat::from_i64(1);
    dot_accumulate_term(plan, acc, one, one);
    CHECK(acc.err == 1);
    CHECK(acc.s == std::vector<Limb>{0, 0});
}

TEST_CASE("dot_accumulate_radius scaled upper bounds") {
    DotAccumulator acc;
    acc.srad = 0;
    dot_accumulate_radius(acc, Mag::zero(), Mag::zero(), 0);
    CHECK(acc.srad == 0);

    Mag a = Mag::from_parts((Limb(1) << 29) + 1, 0);
    dot_accumulate_radius(acc, a, a, 0);
    CHECK(acc.srad == (Limb(1) << 28) + 2);

    acc.srad = 0;
    dot_accumulate_radius(acc, a, a, 40);
    CHECK(acc.srad == 1);
}

TEST_CASE("dot_finalize signs and exact zero") {
    auto terms = ones(1);
    DotPlan plan = dot_setup(terms, 64);
    DotAccumulator acc;
    dot_init(plan, acc);
    Ball out = dot_finalize(plan, acc, 64);
    CHECK(out.mid.is_zero());
    CHECK(out.rad.is_zero());

    // dot((-1),(1)) = [-1 +- 0] through the negation path
    Ball mone = Ball::from_i64(-1), one = Ball::from_i64(1);
    Ball minus = dot_ball(nullptr, false, &mone, 1, &one, 1, 1, 64);
    CHECK(ball_identical(minus, Ball::from_i64(-1)));
}

TEST_CASE("dot_ball simple values") {
    Ball five = Ball::from_i64(5);
    Ball r = dot_ball(&five, false, nullptr, 0, nullptr, 0, 0, 53);
    CHECK(ball_identical(r, five));

    std::vector<Ball> x(7, Ball::from_i64(1)), y(7, Ball::from_i64(1));
    Ball seven = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, 7, 53);
    CHECK(ball_identical(seven, Ball::from_i64(7)));

    CHECK(dot_approx(nullptr, false, x.data(), 1, y.data(), 1, 0, 53).is_zero());
}

TEST_CASE("dot_ball containment (sampled)") {
    auto rep = bench::verify_dot_containment(1500, 99);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
}

TEST_CASE("dot_ball containment through the fallback path") {
    bench::Rng rng(61);
    std::mt19937_64 g(67);
    for (int t = 0; t < 500; t++) {
        std::size_t n = 1 + g() % 8;
        // exponents straddle the 2^60 fast-path cap
        std::int64_t c = (std::int64_t(1) << 60) + std::int64_t(g() % 1000);
        if (g() & 1) c = -c;
        std::vector<Ball> x(n), y(n);
        for (std::size_t i = 0; i < n; i++) {
            x[i] = bench::random_ball(rng, 2, c - 50, c + 50, 50);
            y[i] = bench::random_ball(rng, 2, -50, 50, 50);
        }
        Ball out = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, 64);
        auto hull = oracle::interval_dot_hull({x.data(), n}, {y.data(), n});
        auto iv = oracle::interval_from_ball(out);
        CHECK(iv.lo <= hull.lo);
        CHECK(hull.hi <= iv.hi);
    }
}

TEST_CASE("subtract equals negated y bit for bit") {
    auto rep = bench::verify_dot_subtract_symmetry(500, 101);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
}

TEST_CASE("inline fast path is bit-identical to the generic path") {
    bench::Rng rng(71);
    std::mt19937_64 g(73);
    DotTuning& tun = dot_tuning();
    for (int t = 0; t < 3000; t++) {
        std::size_t n = 1 + g() % 12;
        std::vector<Ball> x(n), y(n);
        for (std::size_t i = 0; i < n; i++) {
            x[i] = bench::random_ball(rng, 2, -40, 40, 60);
            y[i] = bench::random_ball(rng, 2, -40, 40, 60);
        }
        std::int64_t p = 2 + std::int64_t(g() % 150);
        tun.inline_fastpath = true;
        Ball a = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        tun.inline_fastpath = false;
        Ball b = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        tun.inline_fastpath = true;
        CHECK(ball_identical(a, b));
    }
}

TEST_CASE("err grows monotonically and stays under 3N") {
    bench::Rng rng(79);
    std::mt19937_64 g(83);
    for (int t = 0; t < 300; t++) {
        std::size_t n = 1 + g() % 40;
        std::vector<std::pair<Ball, Ball>> terms(n);
        for (auto& [x, y] : terms) {
            x = Ball::exact(bench::random_apfloat(rng, 4, -300, 300));
            y = Ball::exact(bench::random_apfloat(rng, 4, -300, 300));
        }
        DotPlan plan = dot_setup(terms, 8 + std::int64_t(g() % 64));
        REQUIRE(plan.status == DotStatus::Proceed);
        DotAccumulator acc;
        dot_init(plan, acc);
        std::uint64_t prev = 0;
        for (auto& [x, y] : terms) {
            dot_accumulate_term(plan, acc, x.mid, y.mid);
            CHECK(acc.err >= prev);
            prev = acc.err;
        }
        CHECK(acc.err <= 3 * n);
    }
}

TEST_CASE("precision reduction preserves containment and costs at most 4x radius") {
    bench::Rng rng(89);
    std::mt19937_64 g(97);
    DotTuning& tun = dot_tuning();
    for (int t = 0; t < 1000; t++) {
        std::size_t n = 1 + g() % 20;
        std::vector<Ball> x(n), y(n);
        for (std::size_t i = 0; i < n; i++) {
            x[i] = bench::random_ball(rng, 3, -60, 60, 30);
            y[i] = bench::random_ball(rng, 3, -60, 60, 30);
        }
        std::int64_t p = 100 + std::int64_t(g() % 2000);
        tun.disable_precision_reduction = false;
        Ball reduced = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        tun.disable_precision_reduction = true;
        Ball fullp = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        tun.disable_precision_reduction = false;
        auto hull = oracle::interval_dot_hull({x.data(), n}, {y.data(), n});
        auto iv = oracle::interval_from_ball(reduced);
        CHECK(iv.lo <= hull.lo);
        CHECK(hull.hi <= iv.hi);
        if (!fullp.rad.is_zero()) {
            Dyadic rr = oracle::dyadic_from_mag(reduced.rad);
            Dyadic rf = oracle::dyadic_from_mag(fullp.rad);
            rf.e += 2;  // 4x
            CHECK(rr <= rf);
        } else {
            CHECK(reduced.rad.is_zero());
        }
    }
}

TEST_CASE("dot_approx equals the ball midpoint on exact data") {
    bench::Rng rng(103);
    std::mt19937_64 g(107);
    for (int t = 0; t < 2000; t++) {
        std::size_t n = 1 + g() % 30;
        std::vector<Ball> x(n), y(n);
        for (std::size_t i = 0; i < n; i++) {
            x[i] = Ball::exact(bench::random_apfloat(rng, 3, -80, 80));
            y[i] = Ball::exact(bench::random_apfloat(rng, 3, -80, 80));
        }
        std::int64_t p = 2 + std::int64_t(g() % 300);
        Ball b = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        ApFloat a = dot_approx(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        CHECK(apfloat_identical(a, b.mid));
    }
}

TEST_CASE("dot_approx on decreasing magnitudes matches the exact oracle") {
    const std::size_t n = 1000;
    const std::int64_t p = 1024;
    std::vector<Ball> x, y;
    bench::decreasing_profile(n, p, x, y);
    ApFloat a = dot_approx(nullptr, false, x.data(), 1, y.data(), 1, n, p);
    std::vector<Dyadic> xd(n), yd(n);
    for (std::size_t i = 0; i < n; i++) {
        xd[i] = oracle::dyadic_from_apfloat(x[i].mid);
        yd[i] = oracle::dyadic_from_apfloat(y[i].mid);
    }
    Dyadic exact = oracle::rational_dot_exact(xd, yd);
    Dyadic diff = (exact - oracle::dyadic_from_apfloat(a)).abs();
    Dyadic bound = exact.abs();
    bound.e += -p + 12;
    CHECK(diff <= bound);
}

TEST_CASE("complex dot products") {
    ComplexBall u{Ball::from_i64(1), Ball::zero()};
    ComplexBall v{Ball::zero(), Ball::from_i64(1)};
    ComplexBall r = dot_complex_ball(&u, 1, &v, 1, 1, 64);
    CHECK(ball_identical(r.re, Ball::zero()));
    CHECK(ball_identical(r.im, Ball::from_i64(1)));

    // real-only inputs keep the imaginary part an exact zero
    bench::Rng rng(109);
    std::vector<ComplexBall> x(5), y(5);
    for (int i = 0; i < 5; i++) {
        x[i] = {bench::random_ball(rng, 2, -20, 20, 50), Ball::zero()};
        y[i] = {bench::random_ball(rng, 2, -20, 20, 50), Ball::zero()};
    }
    ComplexBall s = dot_complex_ball(x.data(), 1, y.data(), 1, 5, 128);
    CHECK(s.im.is_zero_exact());

    // containment of both parts
    std::mt19937_64 g(113);
    for (int t = 0; t < 800; t++) {
        std::size_t n = 1 + g() % 15;
        std::vector<ComplexBall> cx(n), cy(n);
        for (std::size_t i = 0; i < n; i++) {
            cx[i] = {bench::random_ball(rng, 2, -50, 50, 50),
                     bench::random_ball(rng, 2, -50, 50, 50)};
            cy[i] = {bench::random_ball(rng, 2, -50, 50, 50),
                     bench::random_ball(rng, 2, -50, 50, 50)};
        }
        std::int64_t p = 2 + std::int64_t(g() % 200);
        ComplexBall out = dot_complex_ball(cx.data(), 1, cy.data(), 1, n, p);
        // hull via length-2n real dots
        std::vector<Ball> xs, ys;
        for (std::size_t i = 0; i < n; i++) {
            xs.push_back(cx[i].re);
            ys.push_back(cy[i].re);
            xs.push_back(cx[i].im);
            ys.push_back(cy[i].im.neg());
        }
        auto hull_re = oracle::interval_dot_hull({xs.data(), xs.size()}, {ys.data(), ys.size()});
        auto iv_re = oracle::interval_from_ball(out.re);
        CHECK(iv_re.lo <= hull_re.lo);
        CHECK(hull_re.hi <= iv_re.hi);
        xs.clear();
        ys.clear();
        for (std::size_t i = 0; i < n; i++) {
            xs.push_back(cx[i].re);
            ys.push_back(cy[i].im);
            xs.push_back(cx[i].im);
            ys.push_back(cy[i].re);
        }
        auto hull_im = oracle::interval_dot_hull({xs.data(), xs.size()}, {ys.data(), ys.size()});
        auto iv_im = oracle::interval_from_ball(out.im);
        CHECK(iv_im.lo <= hull_im.lo);
        CHECK(hull_im.hi <= iv_im.hi);
    }
}

TEST_CASE("three-multiplication rewrite is unobservable (sampled)") {
    auto rep = bench::verify_complex_threeprod(300, 127);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
}

TEST_CASE("complex approx matches ball midpoints on exact data") {
    bench::Rng rng(131);
    std::mt19937_64 g(137);
    for (int t = 0; t < 500; t++) {
        std::size_t n = 1 + g() % 10;
        std::vector<ComplexBall> cx(n), cy(n);
        for (std::size_t i = 0; i < n; i++) {
            cx[i] = {Ball::exact(bench::random_apfloat(rng, 2, -40, 40)),
                     Ball::exact(bench::random_apfloat(rng, 2, -40, 40))};
            cy[i] = {Ball::exact(bench::random_apfloat(rng, 2, -40, 40)),
                     Ball::exact(bench::random_apfloat(rng, 2, -40, 40))};
        }
        ComplexBall b = dot_complex_ball(cx.data(), 1, cy.data(), 1, n, 128);
        ApComplex a = dot_complex_approx(cx.data(), 1, cy.data(), 1, n, 128);
        CHECK(apfloat_identical(a.re, b.re.mid));
        CHECK(apfloat_identical(a.im, b.im.mid));
    }
}

TEST_CASE("non-finite inputs propagate through the fallback") {
    std::vector<Ball> x(2, Ball::from_i64(1)), y(2, Ball::from_i64(1));
    x[1].mid = ApFloat::nan();
    Ball out = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, 2, 64);
    CHECK(out.mid.is_nan());

    x[1].mid = ApFloat::pos_inf();
    out = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, 2, 64);
    CHECK(out.mid.kind() == FloatKind::PosInf);
}

TEST_CASE("mulhigh path keeps containment at large precision") {
    // operands wide enough for p_t >= 25*64 and min(n,n')*64 > 0.9*p_t
    bench::Rng rng(139);
    std::mt19937_64 g(149);
    auto wide = [&](std::size_t limbs, std::int64_t e) {
        std::vector<Limb> raw(limbs);
        for (auto& w : raw) w = rng.u64();
        raw[limbs - 1] |= Limb(1) << 63;
        if (!raw[0]) raw[0] = 1;
        return apfloat_normalize(rng.chance(50), e, raw);
    };
    for (int t = 0; t < 12; t++) {
        std::size_t n = 2 + g() % 5;
        std::int64_t p = 1664 + std::int64_t(g() % 1024);
        std::vector<Ball> x(n), y(n);
        for (std::size_t i = 0; i < n; i++) {
            x[i] = Ball::exact(wide(38 + g() % 8, std::int64_t(g() % 13) - 6));
            y[i] = Ball::exact(wide(38 + g() % 8, std::int64_t(g() % 13) - 6));
        }
        Ball out = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        auto hull = oracle::interval_dot_hull({x.data(), n}, {y.data(), n});
        auto iv = oracle::interval_from_ball(out);
        CHECK(iv.lo <= hull.lo);
        CHECK(hull.hi <= iv.hi);
        // the error budget still honors the accuracy bound
        if (!out.rad.is_zero()) {
            Dyadic mag_sum;
            for (std::size_t i = 0; i < n; i++)
                mag_sum = mag_sum + (oracle::dyadic_from_apfloat(x[i].mid) *
                                     oracle::dyadic_from_apfloat(y[i].mid))
                                        .abs();
            Dyadic bound = mag_sum;
            bound.e += -p + std::int64_t(std::bit_width(std::uint64_t(n))) + 7;
            CHECK(oracle::dyadic_from_mag(out.rad) <= bound);
        }
    }
}

TEST_CASE("exact cancellation collapses to the exact zero ball") {
    bench::Rng rng(151);
    std::mt19937_64 g(157);
    for (int t = 0; t < 500; t++) {
        std::size_t pairs = 1 + g() % 20;
        std::vector<Ball> x, y;
        for (std::size_t i = 0; i < pairs; i++) {
            ApFloat a = bench::random_apfloat(rng, 2, -40, 40);
            ApFloat b = bench::random_apfloat(rng, 2, -40, 40);
            x.push_back(Ball::exact(a));
            y.push_back(Ball::exact(b));
            x.push_back(Ball::exact(a.neg()));
            y.push_back(Ball::exact(b));
        }
        Ball out = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, x.size(), 512);
        CHECK(out.mid.is_zero());
        CHECK(out.rad.is_zero());
    }
}

TEST_CASE("window boundary: terms at and below the bottom limb") {
    // big term 2^T, small term 2^t with t stepping across the window bottom.
    // N = 2 gives extend = 3, padding = 6; p = 119 keeps n_s = 2 (128-bit
    // window) and e_s = T + 5, so window bits cover [T-123, T+5).
    const std::int64_t T = 1000;
    auto pow2 = [](std::int64_t k) {
        return Ball::exact(apfloat_mul_2exp(ApFloat::from_i64(1), k));
    };
    Ball one = Ball::from_i64(1);
    const std::int64_t p = 119;
    for (std::int64_t t : {T - 118, T - 123, T - 124, T - 125, T - 126}) {
        std::vector<std::pair<Ball, Ball>> terms{{pow2(T), one}, {pow2(t), one}};
        DotPlan plan = dot_setup(terms, p);
        REQUIRE(plan.status == DotStatus::Proceed);
        REQUIRE(plan.n_s == 2);
        REQUIRE(plan.e_s == T + 5);
        DotAccumulator acc;
        dot_init(plan, acc);
        dot_accumulate_term(plan, acc, terms[0].first.mid, terms[0].second.mid);
        dot_accumulate_term(plan, acc, terms[1].first.mid, terms[1].second.mid);
        // the small bit survives exactly down to the window bottom T-123
        CHECK(acc.err == (t >= T - 123 ? 0 : 1));
        Ball out = dot_finalize(plan, acc, p);
        Dyadic exact = Dyadic{Int(1), T} + Dyadic{Int(1), t};
        auto iv = oracle::interval_from_ball(out);
        CHECK(iv.lo <= exact);
        CHECK(exact <= iv.hi);
        if (t == T - 118) {
            // in the window and within p bits: exact end to end
            CHECK(out.rad.is_zero());
            CHECK(Dyadic::cmp(oracle::dyadic_from_apfloat(out.mid), exact) == 0);
        } else {
            // held exactly but rounded away, or dropped below the window
            CHECK(!out.rad.is_zero());
            CHECK(Dyadic::cmp(oracle::dyadic_from_apfloat(out.mid), Dyadic{Int(1), T}) == 0);
        }
    }
}

TEST_CASE("minimal precision p = 2 keeps containment") {
    bench::Rng rng(163);
    std::mt19937_64 g(167);
    for (int t = 0; t < 1000; t++) {
        std::size_t n = 1 + g() % 10;
        std::vector<Ball> x(n), y(n);
        for (std::size_t i = 0; i < n; i++) {
            x[i] = bench::random_ball(rng, 2, -30, 30, 50);
            y[i] = bench::random_ball(rng, 2, -30, 30, 50);
        }
        Ball out = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, 2);
        auto hull = oracle::interval_dot_hull({x.data(), n}, {y.data(), n});
        auto iv = oracle::interval_from_ball(out);
        CHECK(iv.lo <= hull.lo);
        CHECK(hull.hi <= iv.hi);
    }
}
