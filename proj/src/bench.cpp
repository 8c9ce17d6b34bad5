// bench.cpp - benchmark harness, data profiles and verification suites

#include "apball/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "apball/dot.hpp"
#include "apball/oracle.hpp"
#include "apball/poly.hpp"

namespace apball::bench {

using oracle::Dyadic;
using oracle::RationalInterval;

// ------------------------------------------------------------ generators

ApFloat random_apfloat(Rng& rng, std::size_t max_limbs, std::int64_t exp_lo,
                       std::int64_t exp_hi) {
    std::size_t n = 1 + rng.u64() % max_limbs;
    std::vector<Limb> limbs(n);
    for (auto& w : limbs) w = rng.u64();
    limbs[n - 1] |= Limb(1) << 63;
    if (limbs[0] == 0) limbs[0] = 1;
    std::int64_t e = rng.range(exp_lo, exp_hi);
    return apfloat_normalize(rng.chance(50), e, limbs);
}

Mag random_mag(Rng& rng, std::int64_t exp_lo, std::int64_t exp_hi) {
    std::uint64_t b = (Limb(1) << 29) + rng.u64() % (Limb(1) << 29);
    return Mag::from_parts(b, rng.range(exp_lo, exp_hi));
}

Ball random_ball(Rng& rng, std::size_t max_limbs, std::int64_t exp_lo, std::int64_t exp_hi,
                 unsigned zero_rad_percent) {
    Ball b;
    if (!rng.chance(10)) b.mid = random_apfloat(rng, max_limbs, exp_lo, exp_hi);
    if (!rng.chance(zero_rad_percent)) {
        std::int64_t e = b.mid.is_zero() ? rng.range(exp_lo, exp_hi)
                                         : b.mid.exponent() - rng.range(0, 120);
        b.rad = random_mag(rng, e - 2, e);
    }
    return b;
}

ApFloat pi_approx(std::int64_t bits) {
    static std::map<std::int64_t, ApFloat> cache;
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239), fixed point with guard bits
    const std::int64_t w = bits + 48;
    auto atan_inv = [&](std::uint32_t x) {
        oracle::Int power = oracle::Int(1) << std::size_t(w);
        power.divmod_u32(x);
        oracle::Int sum = power;
        const std::uint32_t xx = x * x;
        std::uint32_t k = 1;
        bool sub = true;
        while (!power.is_zero()) {
            power.divmod_u32(xx);
            if (power.is_zero()) break;
            oracle::Int term = power;
            term.divmod_u32(2 * k + 1);
            sum = sub ? sum - term : sum + term;
            sub = !sub;
            k++;
        }
        return sum;
    };
    oracle::Int pi_scaled = (atan_inv(5) << 4) - (atan_inv(239) << 2);
    auto limbs = pi_scaled.to_limbs64();
    ApFloat pi = apfloat_normalize(false, std::int64_t(64 * limbs.size()) - w,
                                   {limbs.data(), limbs.size()});
    auto rounded = apfloat_round(pi, bits).first;
    cache.emplace(bits, rounded);
    return rounded;
}

std::vector<Ball> uniform_profile(Rng& rng, std::size_t n, std::int64_t p) {
    std::vector<Ball> v(n);
    const std::size_t limbs = std::size_t((p + 63) / 64);
    for (auto& b : v) {
        // up to p random bits at a fixed exponent
        std::vector<Limb> raw(limbs);
        for (auto& wd : raw) wd = rng.u64();
        raw[limbs - 1] |= Limb(1) << 63;
        ApFloat full = apfloat_normalize(rng.chance(50), 0, raw);
        b.mid = apfloat_round(full, p).first;
    }
    return v;
}

void decreasing_profile(std::size_t n, std::int64_t p, std::vector<Ball>& x,
                        std::vector<Ball>& y) {
    // x_i = 1/i!, y_i = pi^-i, dyadic approximations at p + 64 bits
    const std::int64_t wp = p + 64;
    x.assign(n, Ball());
    y.assign(n, Ball());
    ApFloat pi = pi_approx(wp + 64);
    // 1/pi via bigint division
    {
        oracle::Dyadic pid = oracle::dyadic_from_apfloat(pi);
        std::size_t shift = std::size_t(2 * wp + 128);
        oracle::Int num = oracle::Int(1) << shift;
        oracle::Int q, r;
        oracle::Int::divmod(num, pid.m, q, r);
        auto ql = q.to_limbs64();
        ApFloat inv_pi = apfloat_round(
            apfloat_normalize(false,
                              std::int64_t(64 * ql.size()) - std::int64_t(shift) - pid.e,
                              {ql.data(), ql.size()}),
            wp).first;
        ApFloat fact = ApFloat::one();   // 1/i!
        ApFloat power = ApFloat::one();  // pi^-i
        for (std::size_t i = 0; i < n; i++) {
            x[i].mid = fact;
            y[i].mid = power;
            fact = apfloat_div_u64(fact, i + 1, wp).first;
            power = apfloat_round(apfloat_mul_exact(power, inv_pi), wp).first;
        }
    }
}

BallMatrix uniform_matrix(Rng& rng, std::size_t n, std::int64_t p) {
    BallMatrix m(n, n);
    const std::size_t limbs = std::size_t((p + 63) / 64);
    for (auto& b : m.a) {
        std::vector<Limb> raw(limbs);
        for (auto& wd : raw) wd = rng.u64();
        raw[limbs - 1] |= Limb(1) << 63;
        b.mid = apfloat_round(apfloat_normalize(rng.chance(50), 0, raw), p).first;
    }
    return m;
}

BallMatrix pascal_matrix(std::size_t n, std::int64_t p) {
    // pi * C(i+j, i) rounded to 2p bits (inputs deliberately finer than the
    // output precision, the badly-scaled regime of the block algorithm)
    const std::int64_t wp = 2 * p;
    ApFloat pi = pi_approx(wp + 64);
    std::vector<std::vector<oracle::Int>> binom(2 * n);
    for (std::size_t s = 0; s < 2 * n; s++) {
        binom[s].resize(s + 1);
        binom[s][0] = oracle::Int(1);
        binom[s][s] = oracle::Int(1);
        for (std::size_t i = 1; i < s; i++) binom[s][i] = binom[s - 1][i - 1] + binom[s - 1][i];
    }
    BallMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = 0; j < n; j++) {
            auto limbs = binom[i + j][i].to_limbs64();
            ApFloat c = apfloat_normalize(false, std::int64_t(64 * limbs.size()),
                                          {limbs.data(), limbs.size()});
            m.at(i, j).mid = apfloat_round(apfloat_mul_exact(pi, c), wp).first;
        }
    return m;
}

std::vector<ComplexBall> complex_uniform_profile(Rng& rng, std::size_t n, std::int64_t p) {
    auto re = uniform_profile(rng, n, p);
    auto im = uniform_profile(rng, n, p);
    std::vector<ComplexBall> v(n);
    for (std::size_t i = 0; i < n; i++) v[i] = {re[i], im[i]};
    return v;
}

// -------------------------------------------------------------- baselines

Ball naive_dot_ball(const Ball* x, std::ptrdiff_t xs, const Ball* y, std::ptrdiff_t ys,
                    std::size_t n, std::int64_t p) {
    Ball acc;
    for (std::size_t i = 0; i < n; i++)
        acc = ball_fallback_addmul(acc, x[std::ptrdiff_t(i) * xs], y[std::ptrdiff_t(i) * ys], p);
    return acc;
}

ApFloat naive_dot_approx(const Ball* x, std::ptrdiff_t xs, const Ball* y, std::ptrdiff_t ys,
                         std::size_t n, std::int64_t p) {
    ApFloat acc;
    for (std::size_t i = 0; i < n; i++) {
        ApFloat prod =
            apfloat_mul_exact(x[std::ptrdiff_t(i) * xs].mid, y[std::ptrdiff_t(i) * ys].mid);
        acc = apfloat_add_round(acc, apfloat_round(prod, p).first, p).first;
    }
    return acc;
}

BallMatrix naive_matmul_ball(const BallMatrix& a, const BallMatrix& b, std::int64_t p) {
    BallMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; i++)
        for (std::size_t j = 0; j < b.cols; j++) {
            Ball acc;
            for (std::size_t l = 0; l < a.cols; l++)
                acc = ball_fallback_addmul(acc, a.at(i, l), b.at(l, j), p);
            c.at(i, j) = acc;
        }
    return c;
}

// ------------------------------------------------------------- timing

namespace {

double now_ns() {
    return double(std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now().time_since_epoch())
                      .count());
}

template <class F>
double time_median_ns(F&& f, std::size_t reps) {
    std::vector<double> t;
    t.reserve(reps);
    f();  // warmup
    for (std::size_t r = 0; r < reps; r++) {
        double a = now_ns();
        f();
        double b = now_ns();
        t.push_back(b - a);
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

volatile std::uint64_t g_sink;

inline void sink_ball(const Ball& b) {
    g_sink = g_sink ^ (std::uint64_t(b.mid.kind()) + b.rad.mantissa());
}
inline void sink_float(const ApFloat& f) { g_sink = g_sink ^ (std::uint64_t(f.kind()) + std::uint64_t(f.exponent())); }

}  // namespace

BenchResult run_bench(const BenchSpec& spec) {
    if (spec.n == 0 || spec.prec < 2 || spec.reps == 0)
        throw std::invalid_argument("bench: invalid size, precision or repetitions");
    Rng rng(spec.seed);
    BenchResult res;
    double terms = double(spec.n);
    matmul_stats().reset();

    if (spec.op == "dot_ball" || spec.op == "dot_approx") {
        std::vector<Ball> x, y;
        if (spec.profile == "uniform") {
            x = uniform_profile(rng, spec.n, spec.prec);
            y = uniform_profile(rng, spec.n, spec.prec);
        } else if (spec.profile == "decreasing_magnitude") {
            decreasing_profile(spec.n, spec.prec, x, y);
        } else {
            throw std::invalid_argument("bench: unsupported profile for " + spec.op);
        }
        if (spec.op == "dot_ball")
            res.median_ns = time_median_ns(
                [&] { sink_ball(dot_ball(nullptr, false, x.data(), 1, y.data(), 1, spec.n,
                                         spec.prec)); },
                spec.reps);
        else
            res.median_ns = time_median_ns(
                [&] { sink_float(dot_approx(nullptr, false, x.data(), 1, y.data(), 1, spec.n,
                                            spec.prec)); },
                spec.reps);
        res.naive_ns = time_median_ns(
            [&] { sink_ball(naive_dot_ball(x.data(), 1, y.data(), 1, spec.n, spec.prec)); },
            std::min<std::size_t>(spec.reps, 5));
    } else if (spec.op == "dot_complex") {
        if (spec.profile != "complex_uniform" && spec.profile != "uniform")
            throw std::invalid_argument("bench: unsupported profile for dot_complex");
        auto x = complex_uniform_profile(rng, spec.n, spec.prec);
        auto y = complex_uniform_profile(rng, spec.n, spec.prec);
        res.median_ns = time_median_ns(
            [&] {
                ComplexBall r = dot_complex_ball(x.data(), 1, y.data(), 1, spec.n, spec.prec);
                sink_ball(r.re);
                sink_ball(r.im);
            },
            spec.reps);
        res.naive_ns = time_median_ns(
            [&] {
                ComplexBall acc;
                for (std::size_t i = 0; i < spec.n; i++) {
                    acc.re = ball_fallback_addmul(acc.re, x[i].re, y[i].re, spec.prec);
                    acc.re = ball_fallback_addmul(acc.re, x[i].im, y[i].im.neg(), spec.prec);
                    acc.im = ball_fallback_addmul(acc.im, x[i].re, y[i].im, spec.prec);
                    acc.im = ball_fallback_addmul(acc.im, x[i].im, y[i].re, spec.prec);
                }
                sink_ball(acc.re);
                sink_ball(acc.im);
            },
            std::min<std::size_t>(spec.reps, 5));
        terms = double(spec.n);
    } else if (spec.op == "matmul_classical" || spec.op == "matmul_block" ||
               spec.op == "matmul_auto") {
        BallMatrix a, b;
        if (spec.profile == "uniform") {
            a = uniform_matrix(rng, spec.n, spec.prec);
            b = uniform_matrix(rng, spec.n, spec.prec);
        } else if (spec.profile == "pascal") {
            a = pascal_matrix(spec.n, spec.prec);
            b = a;
        } else {
            throw std::invalid_argument("bench: unsupported profile for " + spec.op);
        }
        auto run = [&]() -> BallMatrix {
            if (spec.op == "matmul_classical")
                return classical_matmul_ball(a, b, spec.prec);
            if (spec.op == "matmul_block") return block_matmul_ball(a, b, spec.prec);
            return matmul_auto(a, b, spec.prec);
        };
        res.median_ns = time_median_ns([&] { sink_ball(run().at(0, 0)); }, spec.reps);
        res.blocks = matmul_stats().last_block_count;
        // the naive triple loop is slow; one measurement is enough for a ratio
        res.naive_ns = time_median_ns(
            [&] { sink_ball(naive_matmul_ball(a, b, spec.prec).at(0, 0)); }, 1);
        terms = double(spec.n) * double(spec.n) * double(spec.n);
    } else if (spec.op == "poly_mul" || spec.op == "series_exp") {
        BallPoly a;
        a.c = uniform_profile(rng, spec.n, spec.prec);
        if (spec.op == "poly_mul") {
            BallPoly b;
            b.c = uniform_profile(rng, spec.n, spec.prec);
            res.median_ns = time_median_ns(
                [&] { sink_ball(poly_mullow_classical(a, b, spec.n, spec.prec).c[spec.n - 1]); },
                spec.reps);
            res.naive_ns = time_median_ns(
                [&] {
                    BallPoly c = BallPoly::zero(spec.n);
                    for (std::size_t k = 0; k < spec.n; k++) {
                        Ball acc;
                        for (std::size_t i = 0; i <= k; i++)
                            if (i < a.c.size() && k - i < b.c.size())
                                acc = ball_fallback_addmul(acc, a.c[i], b.c[k - i], spec.prec);
                        c.c[k] = acc;
                    }
                    sink_ball(c.c[spec.n - 1]);
                },
                std::min<std::size_t>(spec.reps, 3));
        } else {
            a.c[0] = Ball::zero();
            res.median_ns = time_median_ns(
                [&] { sink_ball(series_exp_basecase(a, spec.n, spec.prec).c[spec.n - 1]); },
                spec.reps);
            res.naive_ns = time_median_ns(
                [&] {
                    // same recurrence with per-term multiply-adds
                    std::vector<Ball> b(spec.n);
                    b[0] = Ball::from_i64(1);
                    for (std::size_t k = 1; k < spec.n; k++) {
                        Ball acc;
                        for (std::size_t j = 1; j <= k; j++) {
                            Ball ja{apfloat_mul_u64_exact(a.c[j].mid, j),
                                    mag_mul_up(a.c[j].rad, Mag::from_u64_upper(j))};
                            acc = ball_fallback_addmul(acc, ja, b[k - j], spec.prec);
                        }
                        b[k] = ball_div_u64(acc, k, spec.prec);
                    }
                    sink_ball(b[spec.n - 1]);
                },
                std::min<std::size_t>(spec.reps, 3));
        }
        terms = double(spec.n) * double(spec.n + 1) / 2.0;
    } else {
        throw std::invalid_argument("bench: unknown operation " + spec.op);
    }
    res.ns_per_term = res.median_ns / terms;
    res.ratio_vs_naive = res.median_ns > 0 ? res.naive_ns / res.median_ns : 0;
    return res;
}

void write_csv_header(std::ostream& os) {
    os << "operation,N,p,profile,ns_per_term,ratio_vs_naive,blocks\n";
}

void write_csv_row(std::ostream& os, const BenchSpec& spec, const BenchResult& r) {
    os << spec.op << ',' << spec.n << ',' << spec.prec << ',' << spec.profile << ','
       << r.ns_per_term << ',' << r.ratio_vs_naive << ',' << r.blocks << '\n';
}

// ----------------------------------------------------------- verification

namespace {

struct DotInstance {
    std::vector<Ball> xbuf, ybuf;  // physical buffers
    const Ball* x;
    const Ball* y;
    std::ptrdiff_t xs, ys;
    std::vector<Ball> xlog, ylog;  // logical order, for the oracle
    std::size_t n;
    std::int64_t p;
    Ball initial;
    bool has_initial = false;
    bool subtract = false;

    std::string describe() const {
        std::ostringstream os;
        os << "n=" << n << " p=" << p << " sub=" << subtract;
        if (has_initial) os << " initial=" << initial.to_string();
        for (std::size_t i = 0; i < n; i++)
            os << "\n  x=" << xlog[i].to_string() << "  y=" << ylog[i].to_string();
        return os.str();
    }
};

constexpr std::int64_t kP[5] = {8, 53, 128, 256, 1024};

// strided layout around a random exponent center; centers span +-2^40 while
// each instance keeps a bounded alignment window for the exact oracle
DotInstance random_dot_instance(Rng& rng, bool zero_radii, bool spread_centers) {
    DotInstance ins;
    ins.n = std::size_t(rng.range(1, 50));
    ins.p = kP[rng.u64() % 5];
    std::int64_t center = 0;
    if (spread_centers) {
        const std::int64_t lim = (std::int64_t(1) << 40) - 4096;
        center = rng.range(-lim, lim);
    }
    std::int64_t spread = rng.chance(30) ? 1500 : 200;
    unsigned zero_rad = zero_radii ? 100 : 60;
    ins.xs = rng.range(-2, 2);
    if (ins.xs == 0) ins.xs = 1;
    ins.ys = rng.range(-2, 2);
    if (ins.ys == 0) ins.ys = 1;
    ins.xlog.resize(ins.n);
    ins.ylog.resize(ins.n);
    for (std::size_t i = 0; i < ins.n; i++) {
        ins.xlog[i] = random_ball(rng, 4, center - spread, center + spread, zero_rad);
        ins.ylog[i] = random_ball(rng, 4, -spread, spread, zero_rad);
    }
    auto lay = [&](const std::vector<Ball>& logical, std::ptrdiff_t step,
                   std::vector<Ball>& buf) -> const Ball* {
        std::size_t stride = std::size_t(step < 0 ? -step : step);
        buf.assign(ins.n * stride + 1, Ball());
        const Ball* base;
        if (step >= 0) {
            for (std::size_t i = 0; i < ins.n; i++) buf[i * stride] = logical[i];
            base = buf.data();
        } else {
            for (std::size_t i = 0; i < ins.n; i++)
                buf[(ins.n - 1 - i) * stride] = logical[i];
            base = buf.data() + (ins.n - 1) * stride;
        }
        return base;
    };
    ins.x = lay(ins.xlog, ins.xs, ins.xbuf);
    ins.y = lay(ins.ylog, ins.ys, ins.ybuf);
    ins.subtract = rng.chance(30);
    if (rng.chance(25)) {
        ins.has_initial = true;
        ins.initial = random_ball(rng, 3, center - spread, center + spread, zero_rad);
    }
    return ins;
}

bool check_containment(const DotInstance& ins, const Ball& out) {
    if (out.mid.is_nan() || out.rad.is_inf()) return true;
    if (!out.mid.is_finite()) return false;
    std::vector<Ball> ys = ins.ylog;
    if (ins.subtract)
        for (auto& b : ys) b = b.neg();
    RationalInterval hull =
        oracle::interval_dot_hull({ins.xlog.data(), ins.n}, {ys.data(), ins.n});
    if (ins.has_initial) {
        RationalInterval ii = oracle::interval_from_ball(ins.initial);
        hull.lo = hull.lo + ii.lo;
        hull.hi = hull.hi + ii.hi;
    }
    RationalInterval res = oracle::interval_from_ball(out);
    return res.lo <= hull.lo && hull.hi <= res.hi;
}

}  // namespace

std::uint64_t cap_trials(std::uint64_t trials) {
    const char* cap = std::getenv("APBALL_TEST_CAP");
    if (!cap) return trials;
    std::uint64_t v = std::strtoull(cap, nullptr, 10);
    return v > 0 ? std::min(trials, v) : trials;
}

VerifyReport verify_dot_containment(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "dot.containment";
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; t++) {
        DotInstance ins = random_dot_instance(rng, false, true);
        Ball out = dot_ball(ins.has_initial ? &ins.initial : nullptr, ins.subtract, ins.x,
                            ins.xs, ins.y, ins.ys, ins.n, ins.p);
        rep.trials++;
        if (!check_containment(ins, out)) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure = ins.describe() + "\n  out=" + out.to_string();
        }
    }
    return rep;
}

VerifyReport verify_dot_exact_zero(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "dot.exact_zero_radius";
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; t++) {
        std::size_t n = std::size_t(rng.range(1, 30));
        std::vector<Ball> x(n), y(n);
        std::int64_t top = INT64_MIN, bot = INT64_MAX;
        for (std::size_t i = 0; i < n; i++) {
            x[i].mid = random_apfloat(rng, 2, -60, 60);
            y[i].mid = random_apfloat(rng, 2, -60, 60);
            top = std::max(top, x[i].mid.exponent() + y[i].mid.exponent());
            bot = std::min(bot, x[i].mid.bottom_exponent() + y[i].mid.bottom_exponent());
        }
        std::int64_t p = (top - bot) + 64;
        Ball out = dot_ball(nullptr, false, x.data(), 1, y.data(), 1, n, p);
        rep.trials++;
        if (!out.rad.is_zero()) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure = "n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                    " out=" + out.to_string();
        }
    }
    return rep;
}

VerifyReport verify_dot_accuracy_bound(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "dot.accuracy_bound";
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; t++) {
        DotInstance ins = random_dot_instance(rng, true, true);
        Ball out = dot_ball(nullptr, ins.subtract, ins.x, ins.xs, ins.y, ins.ys, ins.n, ins.p);
        rep.trials++;
        bool ok = true;
        if (!out.rad.is_zero()) {
            // r <= 2^(-p + bc(N) + 7) * sum |x_i y_i|
            Dyadic mag_sum;
            for (std::size_t i = 0; i < ins.n; i++) {
                Dyadic xv = oracle::dyadic_from_apfloat(ins.xlog[i].mid);
                Dyadic yv = oracle::dyadic_from_apfloat(ins.ylog[i].mid);
                mag_sum = mag_sum + (xv * yv).abs();
            }
            unsigned bcn = unsigned(std::bit_width(std::uint64_t(ins.n)));
            Dyadic bound = mag_sum;
            bound.e += -ins.p + bcn + 7;
            Dyadic r = oracle::dyadic_from_mag(out.rad);
            ok = r <= bound;
        }
        if (!ok) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure = ins.describe() + "\n  out=" + out.to_string();
        }
    }
    return rep;
}

VerifyReport verify_dot_subtract_symmetry(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "dot.subtract_symmetry";
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; t++) {
        DotInstance ins = random_dot_instance(rng, false, false);
        Ball a = dot_ball(ins.has_initial ? &ins.initial : nullptr, true, ins.x, ins.xs, ins.y,
                          ins.ys, ins.n, ins.p);
        std::vector<Ball> yn = ins.ylog;
        for (auto& b : yn) b = b.neg();
        // rebuild with stride 1 on the negated logical sequence
        Ball b = dot_ball(ins.has_initial ? &ins.initial : nullptr, false, ins.xlog.data(), 1,
                          yn.data(), 1, ins.n, ins.p);
        rep.trials++;
        if (!ball_identical(a, b)) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure = ins.describe() + "\n  sub=" + a.to_string() +
                                    "\n  neg=" + b.to_string();
        }
    }
    return rep;
}

VerifyReport verify_complex_threeprod(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "dot.complex_threeprod";
    Rng rng(seed);
    DotTuning& tun = dot_tuning();
    const DotTuning saved = tun;
    const std::uint64_t hits_before = dot_threeprod_hits();
    for (std::uint64_t t = 0; t < trials; t++) {
        std::size_t n = std::size_t(rng.range(1, 20));
        std::int64_t p = 64 << (rng.u64() % 6);
        std::vector<ComplexBall> x(n), y(n);
        for (std::size_t i = 0; i < n; i++) {
            x[i] = {Ball::exact(random_apfloat(rng, 3, -80, 80)),
                    Ball::exact(random_apfloat(rng, 3, -80, 80))};
            y[i] = {Ball::exact(random_apfloat(rng, 3, -80, 80)),
                    Ball::exact(random_apfloat(rng, 3, -80, 80))};
        }
        tun.force_threeprod = false;
        tun.threeprod_cutoff_limbs = SIZE_MAX;  // four-multiplication route
        ComplexBall four = dot_complex_ball(x.data(), 1, y.data(), 1, n, p);
        tun.force_threeprod = true;  // rewrite wherever it is exact
        ComplexBall three = dot_complex_ball(x.data(), 1, y.data(), 1, n, p);
        rep.trials++;
        if (!complex_ball_identical(four, three)) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure = "n=" + std::to_string(n) + " p=" + std::to_string(p) +
                                    "\n  four=" + four.to_string() +
                                    "\n  three=" + three.to_string();
        }
    }
    tun = saved;
    if (trials >= 100 && dot_threeprod_hits() == hits_before) {
        // the equivalence check is vacuous if the rewrite never fired
        rep.failures++;
        rep.first_failure = "three-multiplication path was never taken";
    }
    return rep;
}

VerifyReport verify_matmul_block_accuracy(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "matmul.block_accuracy";
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; t++) {
        std::size_t n = std::size_t(rng.range(2, 32));
        std::int64_t p = std::int64_t(rng.range(8, 256));
        BallMatrix a = uniform_matrix(rng, n, p);
        BallMatrix b = uniform_matrix(rng, n, p);
        if (rng.chance(70)) {
            for (auto& e : a.a)
                if (rng.chance(50)) e.rad = random_mag(rng, -p - 30, -p + 4);
            for (auto& e : b.a)
                if (rng.chance(50)) e.rad = random_mag(rng, -p - 30, -p + 4);
        }
        BallMatrix blockc = block_matmul_ball(a, b, p);
        BallMatrix classical = classical_matmul_ball(a, b, p);
        auto hull = oracle::interval_matmul_hull({a.a.data(), a.a.size()},
                                                 {b.a.data(), b.a.size()}, n, n, n);
        rep.trials++;
        std::string what;
        for (std::size_t idx = 0; idx < n * n && what.empty(); idx++) {
            RationalInterval res = oracle::interval_from_ball(blockc.a[idx]);
            if (!(res.lo <= hull[idx].lo && hull[idx].hi <= res.hi)) {
                what = "containment";
                break;
            }
            // radius within 16x of the classical path
            Dyadic rb = oracle::dyadic_from_mag(blockc.a[idx].rad);
            Dyadic rc = oracle::dyadic_from_mag(classical.a[idx].rad);
            rc.e += 4;
            if (!(rb <= rc))
                what = "radius ratio (block " + blockc.a[idx].rad.to_string() +
                       " vs classical " + classical.a[idx].rad.to_string() + ")";
        }
        if (!what.empty()) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure =
                    "n=" + std::to_string(n) + " p=" + std::to_string(p) + ": " + what;
        }
    }
    return rep;
}

VerifyReport verify_matmul_multimodular(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "matmul.multimodular";
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; t++) {
        std::size_t m = std::size_t(rng.range(1, 40));
        std::size_t n = std::size_t(rng.range(1, 40));
        std::size_t k = std::size_t(rng.range(1, 40));
        IntMatrix a(m, n), b(n, k);
        auto rand_int = [&](IntMatrix& mtx) {
            for (auto& v : mtx.a) {
                if (rng.chance(10)) continue;  // leave zero
                std::size_t bits = 1 + rng.u64() % 300;
                std::vector<Limb> limbs((bits + 63) / 64);
                for (auto& w : limbs) w = rng.u64();
                unsigned top = unsigned(bits % 64);
                if (top) limbs.back() &= (Limb(1) << top) - 1;
                v = BigInt::from_limbs({limbs.data(), limbs.size()}, rng.chance(50));
            }
        };
        rand_int(a);
        rand_int(b);
        IntMatrix c1 = int_matmul(a, b, IntMulAlgo::Classical);
        IntMatrix c2 = int_matmul(a, b, IntMulAlgo::Multimodular);
        rep.trials++;
        bool ok = true;
        for (std::size_t idx = 0; idx < m * k && ok; idx++)
            if (!(c1.a[idx] == c2.a[idx])) ok = false;
        if (!ok) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure = "dims " + std::to_string(m) + "x" + std::to_string(n) +
                                    "x" + std::to_string(k);
        }
    }
    return rep;
}

VerifyReport verify_matmul_planner() {
    VerifyReport rep;
    rep.name = "matmul.planner";
    Rng rng(12345);
    BallMatrix u1 = uniform_matrix(rng, 100, 53);
    BallMatrix u2 = uniform_matrix(rng, 100, 53);
    auto s1 = plan_blocks(u1, u2, 53);
    rep.trials++;
    if (s1.size() != 1) {
        rep.failures++;
        rep.first_failure = "uniform 100x100 p=53: " + std::to_string(s1.size()) + " blocks";
    }
    BallMatrix pa = pascal_matrix(100, 53);
    auto s2 = plan_blocks(pa, pa, 53);
    rep.trials++;
    if (s2.size() <= 1) {
        rep.failures++;
        if (rep.first_failure.empty())
            rep.first_failure = "pascal 100x100 p=53: " + std::to_string(s2.size()) + " blocks";
    }
    return rep;
}

VerifyReport verify_poly_mullow(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "poly.mullow";
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; t++) {
        std::size_t la = std::size_t(rng.range(1, 8));
        std::size_t lb = std::size_t(rng.range(1, 8));
        std::size_t len = std::size_t(rng.range(0, 12));
        BallPoly a, b;
        a.c.resize(la);
        b.c.resize(lb);
        for (auto& c : a.c) c = random_ball(rng, 2, -30, 30, 50);
        for (auto& c : b.c) c = random_ball(rng, 2, -30, 30, 50);
        BallPoly prod = poly_mullow_classical(a, b, len, 128);
        rep.trials++;
        bool ok = true;
        for (std::size_t k = 0; k < len && ok; k++) {
            // exact interval hull of the convolution coefficient
            std::vector<Ball> xs, ys;
            for (std::size_t i = 0; i < la; i++)
                if (k >= i && k - i < lb) {
                    xs.push_back(a.c[i]);
                    ys.push_back(b.c[k - i]);
                }
            RationalInterval hull =
                oracle::interval_dot_hull({xs.data(), xs.size()}, {ys.data(), ys.size()});
            RationalInterval res = oracle::interval_from_ball(prod.c[k]);
            if (!(res.lo <= hull.lo && hull.hi <= res.hi)) ok = false;
        }
        if (!ok) {
            rep.failures++;
            if (rep.first_failure.empty())
                rep.first_failure = "la=" + std::to_string(la) + " lb=" + std::to_string(lb) +
                                    " len=" + std::to_string(len);
        }
    }
    return rep;
}

VerifyReport verify_series_exp(std::uint64_t trials, std::uint64_t seed) {
    VerifyReport rep;
    rep.name = "poly.series_exp";
    Rng rng(seed);
    const std::size_t len = 16;
    const std::int64_t p = 128;
    for (std::uint64_t t = 0; t < trials; t++) {
        BallPoly a;
        a.c.resize(len);
        for (std::size_t j = 1; j < len; j++)
            if (!rng.chance(20)) a.c[j].mid = random_apfloat(rng, 2, -10, 10);
        BallPoly b = series_exp_basecase(a, len, p);
        // exact rational recurrence
        std::vector<oracle::Rat> av(len), bv(len);
        for (std::size_t j = 0; j < len; j++)
            av[j] = a.c[j].mid.is_zero()
                        ? oracle::Rat()
                        : oracle::Rat::from_dyadic(oracle::dyadic_from_apfloat(a.c[j].mid));
        bv[0] = oracle::Rat::from_int(1);
        for (std::size_t k = 1; k < len; k++) {
            oracle::Rat s;
            for (std::size_t j = 1; j <= k; j++)
                s = s + oracle::Rat(oracle::Int(std::int64_t(j)), oracle::Int(1)) * av[j] *
                            bv[k - j];
            bv[k] = s / oracle::Rat::from_int(std::int64_t(k));
        }
        rep.trials++;
        bool ok = true;
        for (std::size_t k = 0; k < len && ok; k++) {
            RationalInterval iv = oracle::interval_from_ball(b.c[k]);
            oracle::Rat lo = oracle::Rat::from_dyadic(iv.lo);
            oracle::Rat hi = oracle::Rat::from_dyadic(iv.hi);
            if (!(lo <= bv[k] && bv[k] <= hi)) ok = false;
        }
        if (!ok) {
            rep.failures++;
            if (rep.first_failure.empty()) {
                std::ostringstream os;
                os << "trial " << t << " a=[";
                for (auto& c : a.c) os << c.to_string() << ";";
                os << "]";
                rep.first_failure = os.str();
            }
        }
    }
    return rep;
}

int run_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
               std::ostream& os) {
    std::vector<VerifyReport> reports;
    const bool all = suite == "all";
    if (all || suite == "dot") {
        reports.push_back(verify_dot_containment(cap_trials(trials), seed));
        reports.push_back(verify_dot_exact_zero(cap_trials(std::min<std::uint64_t>(trials, 1000)),
                                                seed + 1));
        reports.push_back(verify_dot_accuracy_bound(cap_trials(trials), seed + 2));
        reports.push_back(
            verify_dot_subtract_symmetry(cap_trials(std::min<std::uint64_t>(trials, 1000)),
                                         seed + 3));
        reports.push_back(verify_complex_threeprod(
            cap_trials(std::min<std::uint64_t>(trials, 1000)), seed + 4));
    }
    if (all || suite == "matmul") {
        reports.push_back(verify_matmul_block_accuracy(
            cap_trials(std::min<std::uint64_t>(trials, 200)), seed + 5));
        reports.push_back(verify_matmul_multimodular(
            cap_trials(std::min<std::uint64_t>(trials, 1000)), seed + 6));
        reports.push_back(verify_matmul_planner());
    }
    if (all || suite == "poly") {
        reports.push_back(
            verify_poly_mullow(cap_trials(std::min<std::uint64_t>(trials, 500)), seed + 7));
        reports.push_back(
            verify_series_exp(cap_trials(std::min<std::uint64_t>(trials, 500)), seed + 8));
    }
    if (reports.empty()) {
        os << "unknown suite: " << suite << "\n";
        return 2;
    }
    int rc = 0;
    for (const auto& r : reports) {
        os << r.name << ": " << r.trials << " trials, " << r.failures << " failures\n";
        if (!r.ok()) {
            rc = 1;
            os << "  reproducer: " << r.first_failure << "\n";
        }
    }
    return rc;
}

}  // namespace apball::bench
