#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "apball/bench.hpp"
#include "apball/matmul.hpp"
#include "apball/oracle.hpp"

using namespace apball;
using oracle::Dyadic;
using oracle::Int;

namespace {

BallMatrix identity(std::size_t n) {
    BallMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) m.at(i, i) = Ball::from_i64(1);
    return m;
}

BallMatrix random_exact_matrix(bench::Rng& rng, std::size_t r, std::size_t c,
                               std::size_t max_limbs, std::int64_t lo, std::int64_t hi) {
    BallMatrix m(r, c);
    for (auto& e : m.a)
        if (!rng.chance(15)) e.mid = bench::random_apfloat(rng, max_limbs, lo, hi);
    return m;
}

std::vector<Dyadic> to_dyadic(const BallMatrix& m) {
    std::vector<Dyadic> v(m.a.size());
    for (std::size_t i = 0; i < v.size(); i++) v[i] = oracle::dyadic_from_apfloat(m.a[i].mid);
    return v;
}

bool contains_matrix(const BallMatrix& out, std::span<const oracle::RationalInterval> hull) {
    for (std::size_t i = 0; i < out.a.size(); i++) {
        auto iv = oracle::interval_from_ball(out.a[i]);
        if (!(iv.lo <= hull[i].lo && hull[i].hi <= iv.hi)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("entry_precision") {
    BallMatrix m(2, 2);
    m.at(0, 0) = Ball::from_i64(1);
    m.at(1, 1) = Ball::from_i64(-1);
    CHECK(entry_precision(m) == 1);

    BallMatrix w(1, 1);
    w.at(0, 0).mid = apfloat_normalize(false, -2, std::vector<Limb>{0xC000000000000000ull});
    CHECK(entry_precision(w) == 2);  // 3 * 2^-5 has a 2-bit window

    CHECK(entry_precision(BallMatrix(3, 3)) == 0);

    bench::Rng rng(7);
    for (int t = 0; t < 500; t++) {
        BallMatrix r = random_exact_matrix(rng, 3, 3, 3, -50, 50);
        std::int64_t want = 0;
        for (auto& e : r.a)
            if (!e.mid.is_zero()) {
                Dyadic d = oracle::dyadic_from_apfloat(e.mid);
                want = std::max<std::int64_t>(want, std::int64_t(d.m.bit_length()));
            }
        CHECK(entry_precision(r) == want);
    }
}

TEST_CASE("plan_blocks uniform and short cases") {
    bench::Rng rng(11);
    BallMatrix a = bench::uniform_matrix(rng, 40, 64);
    BallMatrix b = bench::uniform_matrix(rng, 40, 64);
    auto s = plan_blocks(a, b, 64);
    REQUIRE(s.size() == 1);
    CHECK(s[0].lo == 0);
    CHECK(s[0].hi == 40);
    CHECK(!s[0].basecase);

    BallMatrix a10 = bench::uniform_matrix(rng, 10, 64);
    BallMatrix b10 = bench::uniform_matrix(rng, 10, 64);
    auto s10 = plan_blocks(a10, b10, 64);
    REQUIRE(s10.size() == 1);
    CHECK(s10[0].basecase);
    CHECK(s10[0].hi == 10);
}

TEST_CASE("plan_blocks partitions the inner range") {
    bench::Rng rng(13);
    std::mt19937_64 g(17);
    for (int t = 0; t < 200; t++) {
        std::size_t m = 1 + g() % 12, n = 1 + g() % 60, k = 1 + g() % 12;
        BallMatrix a = random_exact_matrix(rng, m, n, 2, -4000, 4000);
        BallMatrix b = random_exact_matrix(rng, n, k, 2, -4000, 4000);
        auto steps = plan_blocks(a, b, 53);
        std::size_t pos = 0;
        for (auto& st : steps) {
            CHECK(st.lo == pos);
            CHECK(st.hi > st.lo);
            pos = st.hi;
        }
        CHECK(pos == n);
    }
}

TEST_CASE("scale_block produces minimal-height integers") {
    BallMatrix a(1, 2);
    // 3*2^-5 and 5*2^7
    a.at(0, 0).mid = apfloat_normalize(false, -3, std::vector<Limb>{0xC000000000000000ull});
    a.at(0, 1).mid = apfloat_normalize(false, 10, std::vector<Limb>{0xA000000000000000ull});
    std::vector<std::int64_t> e;
    IntMatrix i = scale_block_rows(a, 0, 2, e);
    REQUIRE(e.size() == 1);
    CHECK(e[0] == 5);
    CHECK(i.at(0, 0) == BigInt(3));
    CHECK(i.at(0, 1) == BigInt(5) << 12);

    BallMatrix z(1, 3);
    std::vector<std::int64_t> ez;
    IntMatrix iz = scale_block_rows(z, 0, 3, ez);
    CHECK(ez[0] == 0);
    CHECK(iz.at(0, 1).is_zero());

    bench::Rng rng(19);
    for (int t = 0; t < 300; t++) {
        BallMatrix r = random_exact_matrix(rng, 4, 5, 2, -100, 100);
        std::vector<std::int64_t> es;
        IntMatrix ir = scale_block_rows(r, 0, 5, es);
        for (std::size_t row = 0; row < 4; row++)
            for (std::size_t col = 0; col < 5; col++) {
                Dyadic back{Int::from_limbs64(ir.at(row, col).limbs(),
                                              ir.at(row, col).negative()),
                            -es[row]};
                CHECK(Dyadic::cmp(back, oracle::dyadic_from_apfloat(r.at(row, col).mid)) == 0);
            }
    }
}

TEST_CASE("int_matmul identity and small products") {
    IntMatrix a(2, 2);
    a.at(0, 0) = BigInt(1);
    a.at(1, 1) = BigInt(1);
    IntMatrix b(2, 2);
    b.at(0, 0) = BigInt(-7);
    b.at(0, 1) = BigInt(3);
    b.at(1, 0) = BigInt(123456789);
    b.at(1, 1) = BigInt(0);
    IntMatrix c = int_matmul(a, b, IntMulAlgo::Classical);
    for (std::size_t i = 0; i < 4; i++) CHECK(c.a[i] == b.a[i]);

    // 1x1 256-bit product against the oracle
    std::mt19937_64 g(23);
    for (int t = 0; t < 200; t++) {
        std::vector<Limb> xw(4), yw(4);
        for (auto& w : xw) w = g();
        for (auto& w : yw) w = g();
        IntMatrix x(1, 1), y(1, 1);
        x.at(0, 0) = BigInt::from_limbs(xw, g() & 1);
        y.at(0, 0) = BigInt::from_limbs(yw, g() & 1);
        IntMatrix p1 = int_matmul(x, y, IntMulAlgo::Classical);
        IntMatrix p2 = int_matmul(x, y, IntMulAlgo::Multimodular);
        CHECK(p1.at(0, 0) == p2.at(0, 0));
        Int ox = Int::from_limbs64(x.at(0, 0).limbs(), x.at(0, 0).negative());
        Int oy = Int::from_limbs64(y.at(0, 0).limbs(), y.at(0, 0).negative());
        Int op = ox * oy;
        CHECK(Int::from_limbs64(p1.at(0, 0).limbs(), p1.at(0, 0).negative()) == op);
    }
}

TEST_CASE("multimodular equals classical (sampled)") {
    auto rep = bench::verify_matmul_multimodular(150, 29);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
}

TEST_CASE("radius_matmul_upper bounds the exact product") {
    MagMatrix z(2, 3), q(3, 2);
    MagMatrix c0 = radius_matmul_upper(z, q);
    for (auto& e : c0.a) CHECK(e.is_zero());

    bench::Rng rng(31);
    std::mt19937_64 g(37);
    // 1x1 tightness: >= exact, and within the 30-bit output granularity
    // (one roundup in the double conversion plus the summation inflation)
    for (int t = 0; t < 500; t++) {
        MagMatrix x(1, 1), y(1, 1);
        x.at(0, 0) = bench::random_mag(rng, -100, 100);
        y.at(0, 0) = bench::random_mag(rng, -100, 100);
        MagMatrix c = radius_matmul_upper(x, y);
        Dyadic exact =
            oracle::dyadic_from_mag(x.at(0, 0)) * oracle::dyadic_from_mag(y.at(0, 0));
        Dyadic got = oracle::dyadic_from_mag(c.at(0, 0));
        CHECK(exact <= got);
        Dyadic lim = exact + Dyadic{exact.m, exact.e - 27};
        CHECK(got <= lim);
    }

    // exponents spread over +-2^500 exercise multi-block scaling
    for (int t = 0; t < 30; t++) {
        std::size_t n = 20;
        MagMatrix x(n, n), y(n, n);
        for (auto& e : x.a)
            if (g() % 5) e = bench::random_mag(rng, -500, 500);
        for (auto& e : y.a)
            if (g() % 5) e = bench::random_mag(rng, -500, 500);
        for (auto& e : x.a)
            if (g() % 7 == 0) e = bench::random_mag(rng, -2500, 2500);
        MagMatrix c = radius_matmul_upper(x, y);
        for (std::size_t i = 0; i < n; i++)
            for (std::size_t j = 0; j < n; j++) {
                Dyadic exact;
                for (std::size_t l = 0; l < n; l++)
                    exact = exact + oracle::dyadic_from_mag(x.at(i, l)) *
                                        oracle::dyadic_from_mag(y.at(l, j));
                CHECK(exact <= oracle::dyadic_from_mag(c.at(i, j)));
            }
    }
}

TEST_CASE("classical matmul identity and containment") {
    bench::Rng rng(41);
    BallMatrix a = random_exact_matrix(rng, 4, 4, 2, -30, 30);
    BallMatrix c = classical_matmul_ball(identity(4), a, 256);
    for (std::size_t i = 0; i < a.a.size(); i++) CHECK(ball_identical(c.a[i], a.a[i]));

    // 1x1 equals a length-1 dot
    BallMatrix x(1, 1), y(1, 1);
    x.at(0, 0) = bench::random_ball(rng, 2, -10, 10, 50);
    y.at(0, 0) = bench::random_ball(rng, 2, -10, 10, 50);
    BallMatrix p = classical_matmul_ball(x, y, 64);
    Ball d = dot_ball(nullptr, false, &x.at(0, 0), 1, &y.at(0, 0), 1, 1, 64);
    CHECK(ball_identical(p.at(0, 0), d));

    std::mt19937_64 g(43);
    for (int t = 0; t < 100; t++) {
        BallMatrix ra(6, 5), rb(5, 4);
        for (auto& e : ra.a) e = bench::random_ball(rng, 2, -40, 40, 50);
        for (auto& e : rb.a) e = bench::random_ball(rng, 2, -40, 40, 50);
        BallMatrix rc = classical_matmul_ball(ra, rb, 2 + std::int64_t(g() % 150));
        auto hull = oracle::interval_matmul_hull({ra.a.data(), ra.a.size()},
                                                 {rb.a.data(), rb.a.size()}, 6, 5, 4);
        CHECK(contains_matrix(rc, hull));
    }
}

TEST_CASE("block matmul is exact on exact dyadic data") {
    bench::Rng rng(47);
    BallMatrix a = random_exact_matrix(rng, 35, 35, 2, -20, 20);
    BallMatrix b = random_exact_matrix(rng, 35, 35, 2, -20, 20);
    BallMatrix c = block_matmul_ball(a, b, 1 << 14);
    auto ad = to_dyadic(a), bd = to_dyadic(b);
    auto exact = oracle::rational_matmul_exact(ad, bd, 35, 35, 35);
    for (std::size_t i = 0; i < c.a.size(); i++) {
        CHECK(c.a[i].rad.is_zero());
        CHECK(Dyadic::cmp(oracle::dyadic_from_apfloat(c.a[i].mid), exact[i]) == 0);
    }
}

TEST_CASE("block matmul containment and radius quality (sampled)") {
    auto rep = bench::verify_matmul_block_accuracy(40, 53);
    INFO(rep.first_failure);
    CHECK(rep.failures == 0);
}

TEST_CASE("matmul_auto dispatch") {
    bench::Rng rng(59);
    matmul_stats().reset();
    BallMatrix s2 = bench::uniform_matrix(rng, 2, 64);
    matmul_auto(s2, s2, 64);
    CHECK(matmul_stats().classical_calls == 1);
    CHECK(matmul_stats().block_calls == 0);

    BallMatrix s70 = bench::uniform_matrix(rng, 70, 64);
    matmul_auto(s70, s70, 64);
    CHECK(matmul_stats().block_calls == 1);

    // both paths contain the exact product of the same instance
    BallMatrix a = random_exact_matrix(rng, 8, 8, 2, -20, 20);
    BallMatrix b = random_exact_matrix(rng, 8, 8, 2, -20, 20);
    auto hull = oracle::interval_matmul_hull({a.a.data(), a.a.size()},
                                             {b.a.data(), b.a.size()}, 8, 8, 8);
    CHECK(contains_matrix(classical_matmul_ball(a, b, 64), hull));
    CHECK(contains_matrix(block_matmul_ball(a, b, 64), hull));
}

TEST_CASE("complex matmul") {
    bench::Rng rng(61);
    // real-only inputs: imaginary parts exactly zero
    ComplexBallMatrix a(3, 3), b(3, 3);
    for (auto& e : a.a) e.re = bench::random_ball(rng, 2, -10, 10, 50);
    for (auto& e : b.a) e.re = bench::random_ball(rng, 2, -10, 10, 50);
    ComplexBallMatrix c = complex_matmul_ball(a, b, 128);
    for (auto& e : c.a) CHECK(e.im.is_zero_exact());

    // i*I rotates exactly at sufficient precision
    ComplexBallMatrix rot(2, 2);
    rot.at(0, 0).im = Ball::from_i64(1);
    rot.at(1, 1).im = Ball::from_i64(1);
    ComplexBallMatrix m(2, 2);
    for (auto& e : m.a)
        e = {Ball::exact(bench::random_apfloat(rng, 1, -5, 5)),
             Ball::exact(bench::random_apfloat(rng, 1, -5, 5))};
    ComplexBallMatrix r = complex_matmul_ball(rot, m, 256);
    for (std::size_t i = 0; i < 4; i++) {
        CHECK(ball_identical(r.a[i].re, m.a[i].im.neg()));
        CHECK(ball_identical(r.a[i].im, m.a[i].re));
    }
}

TEST_CASE("matrix text io round trip") {
    bench::Rng rng(67);
    BallMatrix m(3, 2);
    for (auto& e : m.a) e = bench::random_ball(rng, 3, -50, 50, 40);
    std::stringstream ss;
    write_ball_matrix(ss, m);
    auto back = read_ball_matrix(ss);
    REQUIRE(back.has_value());
    CHECK(back->rows == 3);
    CHECK(back->cols == 2);
    for (std::size_t i = 0; i < m.a.size(); i++) CHECK(ball_identical(m.a[i], back->a[i]));
}

TEST_CASE("scaled non-basecase blocks respect the height bound") {
    bench::Rng rng(71);
    std::mt19937_64 g(73);
    for (int t = 0; t < 60; t++) {
        std::size_t n = 31 + g() % 50;
        BallMatrix a = random_exact_matrix(rng, 6, n, 2, -3000, 3000);
        BallMatrix b = random_exact_matrix(rng, n, 6, 2, -3000, 3000);
        std::int64_t p = 16 + std::int64_t(g() % 300);
        std::int64_t pm =
            std::min<std::int64_t>(p, std::max(entry_precision(a), entry_precision(b)));
        std::int64_t h = (5 * pm) / 4 + 192;
        for (const auto& st : plan_blocks(a, b, p)) {
            if (st.basecase) continue;
            std::vector<std::int64_t> e, f;
            IntMatrix ia = scale_block_rows(a, st.lo, st.hi, e);
            IntMatrix ib = scale_block_cols(b, st.lo, st.hi, f);
            CHECK(std::int64_t(ia.height()) <= h);
            CHECK(std::int64_t(ib.height()) <= h);
        }
    }
}

TEST_CASE("block and classical midpoints differ by at most the radius sum") {
    bench::Rng rng(79);
    for (int t = 0; t < 30; t++) {
        std::size_t n = 4 + rng.u64() % 28;
        BallMatrix a = bench::uniform_matrix(rng, n, 128);
        BallMatrix b = bench::uniform_matrix(rng, n, 128);
        for (auto& e : a.a)
            if (rng.chance(50)) e.rad = bench::random_mag(rng, -150, -120);
        BallMatrix cb = block_matmul_ball(a, b, 128);
        BallMatrix cc = classical_matmul_ball(a, b, 128);
        for (std::size_t i = 0; i < n * n; i++) {
            Dyadic diff = (oracle::dyadic_from_apfloat(cb.a[i].mid) -
                           oracle::dyadic_from_apfloat(cc.a[i].mid))
                              .abs();
            Dyadic lim = oracle::dyadic_from_mag(cb.a[i].rad) +
                         oracle::dyadic_from_mag(cc.a[i].rad);
            CHECK(diff <= lim);
        }
    }
}

TEST_CASE("block matmul on rectangular shapes") {
    bench::Rng rng(83);
    BallMatrix a(7, 90), b(90, 5);
    for (auto& e : a.a) e = bench::random_ball(rng, 2, -10, 10, 60);
    for (auto& e : b.a) e = bench::random_ball(rng, 2, -10, 10, 60);
    BallMatrix c = block_matmul_ball(a, b, 96);
    auto hull = oracle::interval_matmul_hull({a.a.data(), a.a.size()},
                                             {b.a.data(), b.a.size()}, 7, 90, 5);
    CHECK(contains_matrix(c, hull));
}

TEST_CASE("complex 1x1 product contains the rational value") {
    bench::Rng rng(89);
    for (int t = 0; t < 100; t++) {
        ComplexBallMatrix a(1, 1), b(1, 1);
        a.at(0, 0) = {bench::random_ball(rng, 2, -20, 20, 50),
                      bench::random_ball(rng, 2, -20, 20, 50)};
        b.at(0, 0) = {bench::random_ball(rng, 2, -20, 20, 50),
                      bench::random_ball(rng, 2, -20, 20, 50)};
        ComplexBall viadot = dot_complex_ball(&a.at(0, 0), 1, &b.at(0, 0), 1, 1, 64);
        ComplexBallMatrix viamat = complex_matmul_ball(a, b, 64);
        // both enclose the exact hull of re and im parts
        std::vector<Ball> xs{a.at(0, 0).re, a.at(0, 0).im};
        std::vector<Ball> ys{b.at(0, 0).re, b.at(0, 0).im.neg()};
        auto hull_re = oracle::interval_dot_hull({xs.data(), 2}, {ys.data(), 2});
        for (const Ball* out : {&viadot.re, &viamat.at(0, 0).re}) {
            auto iv = oracle::interval_from_ball(*out);
            CHECK(iv.lo <= hull_re.lo);
            CHECK(hull_re.hi <= iv.hi);
        }
    }
}

TEST_CASE("planner block counts on 300x300 pascal data") {
    // badly scaled entries at output precision split into exactly 3 blocks;
    // entries finer than the output precision need one more
    BallMatrix pa = bench::pascal_matrix(300, 53);
    BallMatrix pb = pa;
    for (auto& e : pb.a) e.mid = apfloat_round(e.mid, 53).first;
    CHECK(plan_blocks(pb, pb, 53).size() == 3);
    CHECK(plan_blocks(pa, pa, 53).size() == 4);
}
