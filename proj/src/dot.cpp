// dot.cpp - fused dot product evaluation

#include "apball/dot.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace apball {

namespace {

constexpr std::int64_t kExpCap = std::int64_t(1) << 60;  // 2^(beta-4)

// bc(v) = ceil(log2(v+1)), the binary length of v
inline unsigned bc(std::uint64_t v) { return unsigned(std::bit_width(v)); }

const Ball& one_ball() {
    static const Ball one = Ball::from_i64(1);
    return one;
}

struct TermRef {
    const Ball* x;
    const Ball* y;
    bool neg;
};

struct RealView {
    const Ball* x;
    std::ptrdiff_t xs;
    const Ball* y;
    std::ptrdiff_t ys;
    std::size_t n;
    const Ball* initial;
    bool sub;

    std::size_t size() const { return n + (initial != nullptr); }
    TermRef term(std::size_t i) const {
        if (i < n) return {x + std::ptrdiff_t(i) * xs, y + std::ptrdiff_t(i) * ys, sub};
        return {initial, &one_ball(), false};
    }
};

struct PairView {
    std::span<const std::pair<Ball, Ball>> t;
    std::size_t size() const { return t.size(); }
    TermRef term(std::size_t i) const { return {&t[i].first, &t[i].second, false}; }
};

// one part of a complex dot product as a length-2N real term sequence
struct ComplexPartView {
    const ComplexBall* x;
    std::ptrdiff_t xs;
    const ComplexBall* y;
    std::ptrdiff_t ys;
    std::size_t n;
    bool imag;

    std::size_t size() const { return 2 * n; }
    TermRef term(std::size_t i) const {
        const ComplexBall& u = x[std::ptrdiff_t(i >> 1) * xs];
        const ComplexBall& v = y[std::ptrdiff_t(i >> 1) * ys];
        bool second = i & 1;
        if (!imag) return second ? TermRef{&u.im, &v.im, true} : TermRef{&u.re, &v.re, false};
        return second ? TermRef{&u.im, &v.re, false} : TermRef{&u.re, &v.im, false};
    }
};

inline bool exponent_huge(std::int64_t e) { return e > kExpCap || e < -kExpCap; }

template <class View>
DotPlan setup_core(const View& v, std::int64_t p, bool with_radius) {
    DotPlan plan;
    const std::size_t total = v.size();
    const bool track_min = p > 128;
    for (std::size_t i = 0; i < total; i++) {
        TermRef t = v.term(i);
        const ApFloat& xm = t.x->mid;
        const ApFloat& ym = t.y->mid;
        if (!xm.is_finite() || !ym.is_finite()) {
            plan.status = DotStatus::Fallback;
            return plan;
        }
        if ((!xm.is_zero() && exponent_huge(xm.exponent())) ||
            (!ym.is_zero() && exponent_huge(ym.exponent()))) {
            plan.status = DotStatus::Fallback;
            return plan;
        }
        if (!xm.is_zero() && !ym.is_zero()) {
            plan.n_nonzero++;
            std::int64_t ee = xm.exponent() + ym.exponent();
            plan.e_max = std::max(plan.e_max, ee);
            if (track_min)
                plan.e_min = std::min(
                    plan.e_min, ee - std::int64_t(64 * (xm.limb_count() + ym.limb_count())));
        }
        if (with_radius) {
            const Mag& xr = t.x->rad;
            const Mag& yr = t.y->rad;
            if (xr.is_inf() || yr.is_inf() ||
                (!xr.is_zero() && exponent_huge(xr.exponent())) ||
                (!yr.is_zero() && exponent_huge(yr.exponent()))) {
                plan.status = DotStatus::Fallback;
                return plan;
            }
            if (!yr.is_zero() && !xm.is_zero())
                plan.e_rad = std::max(plan.e_rad, xm.exponent() + yr.exponent());
            if (!xr.is_zero() && !ym.is_zero())
                plan.e_rad = std::max(plan.e_rad, ym.exponent() + xr.exponent());
            if (!xr.is_zero() && !yr.is_zero())
                plan.e_rad = std::max(plan.e_rad, xr.exponent() + yr.exponent());
        }
    }
    if (plan.e_max == INT64_MIN && plan.e_rad == INT64_MIN) {
        plan.status = DotStatus::ZeroResult;
        return plan;
    }
    if (plan.e_max == INT64_MIN) {
        p = 2;
    } else if (!dot_tuning().disable_precision_reduction) {
        if (plan.e_rad != INT64_MIN) p = std::min(p, plan.e_max - plan.e_rad + 30);
        if (plan.e_min != INT64_MAX) p = std::min(p, plan.e_max - plan.e_min + 30);
        p = std::max<std::int64_t>(p, 2);
    }
    plan.p_eff = p;
    plan.padding = 4 + bc(total);
    plan.extend = bc(plan.n_nonzero) + 1;
    plan.n_s = std::max<std::size_t>(
        2, std::size_t((p + plan.extend + plan.padding + 63) / 64));
    plan.e_s = plan.e_max == INT64_MIN ? 0 : plan.e_max + plan.extend;
    plan.status = DotStatus::Proceed;
    return plan;
}

// Add the aligned limbs of a term into the accumulator. The term array
// represents value * 2^(e_term - 64*len); e_term <= e_s. Increments err when
// limbs fall below the window.
void accumulate_aligned(const DotPlan& plan, DotAccumulator& acc,
                        const Limb* t, std::size_t nt, std::int64_t e_term, bool negate,
                        Limb* shift_buf) {
    const std::int64_t shift = plan.e_s - e_term;
    assert(shift >= 0);
    if (shift >= std::int64_t(64 * plan.n_s)) {
        acc.err++;
        return;
    }
    const unsigned shift_bits = unsigned(shift % 64);
    const std::size_t shift_limbs = std::size_t(shift / 64);
    if (shift_bits) {
        rshift_bits({t, nt}, shift_bits, {shift_buf, nt + 1});
        t = shift_buf;
        nt++;
    }
    while (nt && t[0] == 0) {
        t++;
        nt--;
    }
    if (nt == 0) return;
    const std::size_t avail = plan.n_s - shift_limbs;
    std::size_t ds, dt, v;
    if (nt <= avail) {
        ds = avail - nt;
        dt = 0;
        v = nt;
    } else {
        ds = 0;
        dt = nt - avail;
        v = avail;
        acc.err++;
    }
    add_signed_range({acc.s.data(), plan.n_s}, {t + dt, v}, ds, shift_limbs, negate);
}

// unrolled product of up to 2x2 limbs into t[0..na+nb)
inline std::size_t small_mul(Limb* t, const Limb* a, std::size_t na, const Limb* b,
                             std::size_t nb) {
    if (na == 1 && nb == 1) {
        t[0] = umul_hilo(a[0], b[0], &t[1]);
        return 2;
    }
    if (na == 2 && nb == 2) {
        unsigned __int128 p00 = (unsigned __int128)a[0] * b[0];
        unsigned __int128 p01 = (unsigned __int128)a[0] * b[1];
        unsigned __int128 p10 = (unsigned __int128)a[1] * b[0];
        unsigned __int128 p11 = (unsigned __int128)a[1] * b[1];
        t[0] = Limb(p00);
        unsigned __int128 mid = (p00 >> 64) + Limb(p01) + Limb(p10);
        t[1] = Limb(mid);
        unsigned __int128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + Limb(p11);
        t[2] = Limb(hi);
        t[3] = Limb((hi >> 64) + (p11 >> 64));
        return 4;
    }
    // 2x1 / 1x2
    const Limb* big = na == 2 ? a : b;
    Limb w = na == 2 ? b[0] : a[0];
    unsigned __int128 lo = (unsigned __int128)big[0] * w;
    unsigned __int128 hi = (unsigned __int128)big[1] * w + Limb(lo >> 64);
    t[0] = Limb(lo);
    t[1] = Limb(hi);
    t[2] = Limb(hi >> 64);
    return 3;
}

}  // namespace

DotTuning& dot_tuning() {
    thread_local DotTuning tun;
    return tun;
}

std::uint64_t& dot_threeprod_hits() {
    thread_local std::uint64_t hits = 0;
    return hits;
}

DotPlan dot_setup(std::span<const std::pair<Ball, Ball>> terms, std::int64_t p) {
    return setup_core(PairView{terms}, p, true);
}

void dot_init(const DotPlan& plan, DotAccumulator& acc) {
    acc.s.assign(plan.n_s, 0);
    acc.scratch.resize(4 * plan.n_s + 8);
    acc.err = 0;
    acc.srad = 0;
}

void dot_accumulate_term(const DotPlan& plan, DotAccumulator& acc, const ApFloat& m,
                         const ApFloat& mp, bool negate) {
    assert(plan.status == DotStatus::Proceed);
    assert(!m.is_zero() && !mp.is_zero() && m.is_finite() && mp.is_finite());
    negate ^= m.negative() ^ mp.negative();
    const std::int64_t e_term = m.exponent() + mp.exponent();
    const std::int64_t shift = plan.e_s - e_term;
    if (shift >= std::int64_t(64 * plan.n_s)) {
        acc.err++;
        return;
    }
    const std::size_t n = m.limb_count(), np = mp.limb_count();
    if (dot_tuning().inline_fastpath && n <= 2 && np <= 2 && plan.n_s <= 3) {
        Limb prod[4];
        std::size_t nt = small_mul(prod, m.limbs().data(), n, mp.limbs().data(), np);
        Limb shifted[5];
        accumulate_aligned(plan, acc, prod, nt, e_term, negate, shifted);
        return;
    }
    const std::int64_t p_t = std::int64_t(64 * plan.n_s) - shift;
    const std::size_t ncap = std::size_t((p_t + 63) / 64) + 1;
    const std::size_t na = std::min(n, ncap), nb = std::min(np, ncap);
    if (n > ncap || np > ncap) acc.err++;
    std::span<const Limb> a = m.limbs().subspan(n - na);
    std::span<const Limb> b = mp.limbs().subspan(np - nb);
    const std::size_t nt = na + nb;
    Limb* t = acc.scratch.data();
    Limb* shift_buf = acc.scratch.data() + 2 * plan.n_s + 3;
    std::size_t lead = nt;
    bool short_prod = false;
    if (p_t >= 25 * 64 && 640 * std::int64_t(std::min(n, np)) > 9 * p_t) {
        const std::size_t v = plan.n_s - std::size_t(shift / 64);
        const std::size_t k = std::min(nt, v + 1);
        if (k < nt) {
            // with k = v+1 the short-product error plus the omitted tail stay
            // below one ulp of s[0]
            mulhigh_approx(a, b, k, {t, k});
            acc.err++;
            lead = k;
            short_prod = true;
        }
    }
    if (!short_prod) mul_limbs(a, b, {t, nt});
    accumulate_aligned(plan, acc, t, lead, e_term, negate, shift_buf);
}

namespace {

struct RadFactor {
    std::uint64_t b;  // weakly normalized: 2^29 <= b <= 2^30
    std::int64_t f;
};

inline RadFactor rad_from_mid(const ApFloat& m) {
    return {(m.limbs().back() >> 34) + 1, m.exponent()};
}

inline RadFactor rad_from_mag(const Mag& r) { return {r.mantissa(), r.exponent()}; }

inline void srad_add(std::uint64_t& srad, RadFactor a, RadFactor b, std::int64_t e_rad) {
    std::int64_t d = e_rad - (a.f + b.f);
    assert(d >= 0);
    if (d < 30)
        srad += ((a.b * b.b) >> (30 + d)) + 1;
    else
        srad += 1;
}

}  // namespace

void dot_accumulate_radius(DotAccumulator& acc, const Mag& a, const Mag& b,
                           std::int64_t e_rad) {
    if (a.is_zero() || b.is_zero()) return;
    assert(a.is_finite() && b.is_finite());
    srad_add(acc.srad, rad_from_mag(a), rad_from_mag(b), e_rad);
}

Ball dot_finalize(const DotPlan& plan, DotAccumulator& acc, std::int64_t p) {
    assert(plan.status == DotStatus::Proceed);
    p = std::max<std::int64_t>(2, std::min(p, plan.p_eff));
    bool sign = false;
    if (acc.s[plan.n_s - 1] >> 63) {
        neg_in_place({acc.s.data(), plan.n_s});
        sign = true;
    }
    ApFloat whole = apfloat_normalize(sign, plan.e_s, {acc.s.data(), plan.n_s});
    auto [mid, rad] = apfloat_round(whole, p);
    if (acc.err)
        rad = mag_add_up(
            rad, Mag::from_u64_upper(acc.err, plan.e_s - std::int64_t(64 * plan.n_s)));
    if (acc.srad) rad = mag_add_up(rad, Mag::from_u64_upper(acc.srad, plan.e_rad - 30));
    return {std::move(mid), rad};
}

namespace {

template <class View>
Ball fallback_ball(const View& v, std::int64_t p) {
    Ball acc = Ball::zero();
    for (std::size_t i = 0; i < v.size(); i++) {
        TermRef t = v.term(i);
        acc = ball_fallback_addmul(acc, *t.x, t.neg ? t.y->neg() : *t.y, p);
    }
    return acc;
}

template <class View>
ApFloat fallback_approx(const View& v, std::int64_t p) {
    ApFloat acc = ApFloat::zero();
    for (std::size_t i = 0; i < v.size(); i++) {
        TermRef t = v.term(i);
        ApFloat prod = apfloat_mul_exact(t.x->mid, t.neg ? t.y->mid.neg() : t.y->mid);
        acc = apfloat_add_round(acc, apfloat_round(prod, p).first, p).first;
    }
    return acc;
}

template <class View>
void radius_pass_term(const DotPlan& plan, DotAccumulator& acc, const TermRef& t) {
    const ApFloat& xm = t.x->mid;
    const ApFloat& ym = t.y->mid;
    const Mag& xr = t.x->rad;
    const Mag& yr = t.y->rad;
    if (!yr.is_zero() && !xm.is_zero())
        srad_add(acc.srad, rad_from_mid(xm), rad_from_mag(yr), plan.e_rad);
    if (!xr.is_zero() && !ym.is_zero())
        srad_add(acc.srad, rad_from_mid(ym), rad_from_mag(xr), plan.e_rad);
    if (!xr.is_zero() && !yr.is_zero())
        srad_add(acc.srad, rad_from_mag(xr), rad_from_mag(yr), plan.e_rad);
}

template <class View>
Ball dot_ball_core(const View& v, std::int64_t p) {
    DotPlan plan = setup_core(v, p, true);
    if (plan.status == DotStatus::ZeroResult) return Ball::zero();
    if (plan.status == DotStatus::Fallback) return fallback_ball(v, p);
    DotAccumulator acc;
    dot_init(plan, acc);
    const std::size_t total = v.size();
    for (std::size_t i = 0; i < total; i++) {
        TermRef t = v.term(i);
        if (!t.x->mid.is_zero() && !t.y->mid.is_zero())
            dot_accumulate_term(plan, acc, t.x->mid, t.y->mid, t.neg);
        radius_pass_term<View>(plan, acc, t);
    }
    return dot_finalize(plan, acc, p);
}

template <class View>
ApFloat dot_approx_core(const View& v, std::int64_t p) {
    DotPlan plan = setup_core(v, p, false);
    if (plan.status == DotStatus::ZeroResult) return ApFloat::zero();
    if (plan.status == DotStatus::Fallback) return fallback_approx(v, p);
    DotAccumulator acc;
    dot_init(plan, acc);
    const std::size_t total = v.size();
    for (std::size_t i = 0; i < total; i++) {
        TermRef t = v.term(i);
        if (!t.x->mid.is_zero() && !t.y->mid.is_zero())
            dot_accumulate_term(plan, acc, t.x->mid, t.y->mid, t.neg);
    }
    p = std::max<std::int64_t>(2, std::min(p, plan.p_eff));
    bool sign = false;
    if (acc.s[plan.n_s - 1] >> 63) {
        neg_in_place({acc.s.data(), plan.n_s});
        sign = true;
    }
    ApFloat whole = apfloat_normalize(sign, plan.e_s, {acc.s.data(), plan.n_s});
    return apfloat_round(whole, p).first;
}

}  // namespace

Ball dot_ball(const Ball* initial, bool subtract, const Ball* x, std::ptrdiff_t xstep,
              const Ball* y, std::ptrdiff_t ystep, std::size_t n, std::int64_t p) {
    return dot_ball_core(RealView{x, xstep, y, ystep, n, initial, subtract}, p);
}

ApFloat dot_approx(const Ball* initial, bool subtract, const Ball* x, std::ptrdiff_t xstep,
                   const Ball* y, std::ptrdiff_t ystep, std::size_t n, std::int64_t p) {
    return dot_approx_core(RealView{x, xstep, y, ystep, n, initial, subtract}, p);
}

// ------------------------------------------------------------- complex

namespace {

// Exactness gate for the three-multiplication rewrite of one complex term.
// Both evaluation routes must be provably exact so that the rewrite is
// unobservable in the output ball.
struct ThreeProd {
    ApFloat p1, p2, e;  // ac, bd, (a+b)(c+d)
};

inline bool window_fits(const DotPlan& plan, std::int64_t top, std::int64_t bottom) {
    return top <= plan.e_s && bottom >= plan.e_s - std::int64_t(64 * plan.n_s);
}

bool threeprod_gate(const DotPlan& pre, const DotPlan& pim, const ComplexBall& u,
                    const ComplexBall& v, const DotTuning& tun, ThreeProd& out) {
    const ApFloat &a = u.re.mid, &b = u.im.mid, &c = v.re.mid, &d = v.im.mid;
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero()) return false;
    if (!tun.force_threeprod) {
        if (std::min(a.limb_count(), b.limb_count()) < tun.threeprod_cutoff_limbs) return false;
        if (std::min(c.limb_count(), d.limb_count()) < tun.threeprod_cutoff_limbs) return false;
    }
    const std::int64_t ba = a.bottom_exponent(), bb = b.bottom_exponent();
    const std::int64_t bcx = c.bottom_exponent(), bd = d.bottom_exponent();
    // four-route products must stay fully inside their accumulator windows
    if (!window_fits(pre, a.exponent() + c.exponent(), ba + bcx)) return false;
    if (!window_fits(pre, b.exponent() + d.exponent(), bb + bd)) return false;
    if (!window_fits(pim, a.exponent() + d.exponent(), ba + bd)) return false;
    if (!window_fits(pim, b.exponent() + c.exponent(), bb + bcx)) return false;
    // rewrite terms likewise (ac and bd also enter the imaginary accumulator)
    if (!window_fits(pim, a.exponent() + c.exponent(), ba + bcx)) return false;
    if (!window_fits(pim, b.exponent() + d.exponent(), bb + bd)) return false;
    const std::size_t cap = a.limb_count() + b.limb_count() + c.limb_count() +
                            d.limb_count() + 8;
    auto sum_ab = apfloat_add_exact(a, b, cap);
    if (!sum_ab) return false;
    auto sum_cd = apfloat_add_exact(c, d, cap);
    if (!sum_cd) return false;
    ApFloat e = apfloat_mul_exact(*sum_ab, *sum_cd);
    if (!e.is_zero() &&
        !window_fits(pim, e.exponent(), e.bottom_exponent()))
        return false;
    out.p1 = apfloat_mul_exact(a, c);
    out.p2 = apfloat_mul_exact(b, d);
    out.e = std::move(e);
    return true;
}

// accumulate an exact product (already multiplied) into the window
void accumulate_product(const DotPlan& plan, DotAccumulator& acc, const ApFloat& prod,
                        bool negate) {
    if (prod.is_zero()) return;
    Limb* shift_buf = acc.scratch.data() + 2 * plan.n_s + 3;
    accumulate_aligned(plan, acc, prod.limbs().data(), prod.limb_count(), prod.exponent(),
                       negate ^ prod.negative(), shift_buf);
}

template <bool WithRadius>
void complex_core(const ComplexBall* x, std::ptrdiff_t xstep, const ComplexBall* y,
                  std::ptrdiff_t ystep, std::size_t n, std::int64_t p, Ball& out_re,
                  Ball& out_im, bool& fell_back) {
    ComplexPartView vre{x, xstep, y, ystep, n, false};
    ComplexPartView vim{x, xstep, y, ystep, n, true};
    DotPlan pre = setup_core(vre, p, WithRadius);
    DotPlan pim = setup_core(vim, p, WithRadius);
    if (pre.status == DotStatus::Fallback || pim.status == DotStatus::Fallback) {
        fell_back = true;
        return;
    }
    fell_back = false;
    DotAccumulator are, aim;
    if (pre.status == DotStatus::Proceed) dot_init(pre, are);
    if (pim.status == DotStatus::Proceed) dot_init(pim, aim);
    const DotTuning& tun = dot_tuning();
    const bool try_rewrite = pre.status == DotStatus::Proceed &&
                             pim.status == DotStatus::Proceed;
    ThreeProd tp;
    for (std::size_t j = 0; j < n; j++) {
        const ComplexBall& u = x[std::ptrdiff_t(j) * xstep];
        const ComplexBall& v = y[std::ptrdiff_t(j) * ystep];
        bool rewritten = false;
        if (try_rewrite && threeprod_gate(pre, pim, u, v, tun, tp)) {
            accumulate_product(pre, are, tp.p1, false);
            accumulate_product(pre, are, tp.p2, true);
            accumulate_product(pim, aim, tp.e, false);
            accumulate_product(pim, aim, tp.p1, true);
            accumulate_product(pim, aim, tp.p2, true);
            dot_threeprod_hits()++;
            rewritten = true;
        }
        if (!rewritten) {
            if (pre.status == DotStatus::Proceed) {
                if (!u.re.mid.is_zero() && !v.re.mid.is_zero())
                    dot_accumulate_term(pre, are, u.re.mid, v.re.mid, false);
                if (!u.im.mid.is_zero() && !v.im.mid.is_zero())
                    dot_accumulate_term(pre, are, u.im.mid, v.im.mid, true);
            }
            if (pim.status == DotStatus::Proceed) {
                if (!u.re.mid.is_zero() && !v.im.mid.is_zero())
                    dot_accumulate_term(pim, aim, u.re.mid, v.im.mid, false);
                if (!u.im.mid.is_zero() && !v.re.mid.is_zero())
                    dot_accumulate_term(pim, aim, u.im.mid, v.re.mid, false);
            }
        }
        if (WithRadius) {
            if (pre.status == DotStatus::Proceed) {
                radius_pass_term<ComplexPartView>(pre, are, vre.term(2 * j));
                radius_pass_term<ComplexPartView>(pre, are, vre.term(2 * j + 1));
            }
            if (pim.status == DotStatus::Proceed) {
                radius_pass_term<ComplexPartView>(pim, aim, vim.term(2 * j));
                radius_pass_term<ComplexPartView>(pim, aim, vim.term(2 * j + 1));
            }
        }
    }
    out_re = pre.status == DotStatus::Proceed ? dot_finalize(pre, are, p) : Ball::zero();
    out_im = pim.status == DotStatus::Proceed ? dot_finalize(pim, aim, p) : Ball::zero();
}

ComplexBall complex_fallback_ball(const ComplexBall* x, std::ptrdiff_t xstep,
                                  const ComplexBall* y, std::ptrdiff_t ystep, std::size_t n,
                                  std::int64_t p) {
    ComplexBall acc = ComplexBall::zero();
    for (std::size_t j = 0; j < n; j++) {
        const ComplexBall& u = x[std::ptrdiff_t(j) * xstep];
        const ComplexBall& v = y[std::ptrdiff_t(j) * ystep];
        acc.re = ball_fallback_addmul(acc.re, u.re, v.re, p);
        acc.re = ball_fallback_addmul(acc.re, u.im, v.im.neg(), p);
        acc.im = ball_fallback_addmul(acc.im, u.re, v.im, p);
        acc.im = ball_fallback_addmul(acc.im, u.im, v.re, p);
    }
    return acc;
}

}  // namespace

ComplexBall dot_complex_ball(const ComplexBall* x, std::ptrdiff_t xstep, const ComplexBall* y,
                             std::ptrdiff_t ystep, std::size_t n, std::int64_t p) {
    ComplexBall out;
    bool fell_back = false;
    complex_core<true>(x, xstep, y, ystep, n, p, out.re, out.im, fell_back);
    if (fell_back) return complex_fallback_ball(x, xstep, y, ystep, n, p);
    return out;
}

ApComplex dot_complex_approx(const ComplexBall* x, std::ptrdiff_t xstep, const ComplexBall* y,
                             std::ptrdiff_t ystep, std::size_t n, std::int64_t p) {
    Ball re, im;
    bool fell_back = false;
    complex_core<false>(x, xstep, y, ystep, n, p, re, im, fell_back);
    if (fell_back) {
        ComplexBall f = complex_fallback_ball(x, xstep, y, ystep, n, p);
        return {f.re.mid, f.im.mid};
    }
    return {re.mid, im.mid};
}

}  // namespace apball
