// apfloat.cpp - arbitrary-precision float operations

#include "apball/apfloat.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>
#include <vector>

namespace apball {

namespace {

constexpr std::int64_t kExpHi = INT64_MAX - 8;
constexpr std::int64_t kExpLo = INT64_MIN + 8;

std::int64_t checked_exp(__int128 e) {
    if (e > kExpHi || e < kExpLo)
        throw std::overflow_error("apball: exponent out of representable range");
    return std::int64_t(e);
}

// Mag upper bound of (low `cut_limbs` limbs plus cut_bits of the next limb
// of `limbs`) * 2^base. Zero when those bits are all clear.
Mag mag_upper_of_low_bits(std::span<const Limb> limbs, std::size_t cut_limbs,
                          unsigned cut_bits, std::int64_t base) {
    std::size_t t = SIZE_MAX;
    Limb tv = 0;
    if (cut_bits) {
        Limb part = limbs[cut_limbs] & ((Limb(1) << cut_bits) - 1);
        if (part) {
            t = cut_limbs;
            tv = part;
        }
    }
    if (t == SIZE_MAX) {
        for (std::size_t i = cut_limbs; i-- > 0;) {
            if (limbs[i]) {
                t = i;
                tv = limbs[i];
                break;
            }
        }
    }
    if (t == SIZE_MAX) return Mag::zero();
    unsigned tb = std::bit_width(tv);
    Limb window = tb < 64 ? tv << (64 - tb) : tv;
    bool low = false;
    if (t > 0) {
        if (tb < 64) {
            window |= limbs[t - 1] >> tb;
            if (limbs[t - 1] & ((Limb(1) << tb) - 1)) low = true;
        } else if (limbs[t - 1]) {
            low = true;
        }
        for (std::size_t i = 0; i + 1 < t && !low; i++)
            if (limbs[i]) low = true;
    }
    std::uint64_t b = window >> (64 - kRadPrec);
    if (low || (window & ((Limb(1) << (64 - kRadPrec)) - 1))) b++;
    return Mag::from_parts(b, checked_exp(__int128(base) + std::int64_t(64 * t) + tb));
}

}  // namespace

ApFloat ApFloat::from_i64(std::int64_t v) {
    if (v == 0) return zero();
    bool neg = v < 0;
    Limb a = neg ? ~std::uint64_t(v) + 1 : std::uint64_t(v);
    return apfloat_normalize(neg, 64, {&a, 1});
}

ApFloat ApFloat::from_normalized(bool negative, std::int64_t e, LimbVec mant) {
    assert(!mant.empty() && (mant.back() >> 63) && mant[0] != 0);
    ApFloat f;
    f.kind_ = FloatKind::Finite;
    f.neg_ = negative;
    f.e_ = e;
    f.m_ = std::move(mant);
    return f;
}

std::int64_t ApFloat::bit_width() const {
    assert(kind_ == FloatKind::Finite);
    return std::int64_t(64 * m_.size()) - std::countr_zero(m_[0]);
}

ApFloat ApFloat::neg() const {
    ApFloat f = *this;
    switch (kind_) {
        case FloatKind::Finite: f.neg_ = !neg_; break;
        case FloatKind::PosInf: f.kind_ = FloatKind::NegInf; f.neg_ = true; break;
        case FloatKind::NegInf: f.kind_ = FloatKind::PosInf; f.neg_ = false; break;
        default: break;
    }
    return f;
}

ApFloat ApFloat::abs() const {
    ApFloat f = *this;
    if (kind_ == FloatKind::NegInf) {
        f.kind_ = FloatKind::PosInf;
    }
    f.neg_ = false;
    return f;
}

bool apfloat_identical(const ApFloat& a, const ApFloat& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ != FloatKind::Finite) return true;
    if (a.neg_ != b.neg_ || a.e_ != b.e_ || a.m_.size() != b.m_.size()) return false;
    return limbs_cmp(a.m_.data(), b.m_.data(), a.m_.size()) == 0;
}

ApFloat apfloat_normalize(bool negative, std::int64_t e, std::span<const Limb> raw) {
    std::size_t h = limbs_normalize(raw.data(), raw.size());
    if (h == 0) return ApFloat::zero();
    unsigned tb = std::bit_width(raw[h - 1]);
    // value = 2^e * raw / 2^(64 raw.len); top set bit index is 64(h-1)+tb-1
    __int128 e_new = __int128(e) - std::int64_t(64 * raw.size()) + std::int64_t(64 * (h - 1) + tb);
    unsigned shift = (64 - tb) % 64;
    LimbVec m;
    m.resize_uninit(h);
    if (shift)
        limbs_shl(m.data(), raw.data(), h, shift);
    else
        std::memcpy(m.data(), raw.data(), h * sizeof(Limb));
    std::size_t z = 0;
    while (m[z] == 0) z++;
    if (z) {
        std::memmove(m.data(), m.data() + z, (h - z) * sizeof(Limb));
        m.shrink(h - z);
    }
    return ApFloat::from_normalized(negative, checked_exp(e_new), std::move(m));
}

std::pair<ApFloat, Mag> apfloat_round(const ApFloat& x, std::int64_t p) {
    assert(p >= 2);
    if (x.is_zero() || !x.is_finite()) return {x, Mag::zero()};
    const std::size_t n = x.limb_count();
    if (p >= std::int64_t(64 * n)) return {x, Mag::zero()};
    const std::int64_t cut = std::int64_t(64 * n) - p;
    const std::size_t cut_limbs = std::size_t(cut / 64);
    const unsigned cut_bits = unsigned(cut % 64);
    auto limbs = x.limbs();
    Mag err = mag_upper_of_low_bits(limbs, cut_limbs, cut_bits,
                                    x.exponent() - std::int64_t(64 * n));
    if (err.is_zero()) return {x, Mag::zero()};
    std::size_t keep = n - cut_limbs;
    LimbVec m;
    m.resize_uninit(keep);
    std::memcpy(m.data(), limbs.data() + cut_limbs, keep * sizeof(Limb));
    if (cut_bits) m[0] &= ~((Limb(1) << cut_bits) - 1);
    std::size_t z = 0;
    while (m[z] == 0) z++;
    if (z) {
        std::memmove(m.data(), m.data() + z, (keep - z) * sizeof(Limb));
        m.shrink(keep - z);
    }
    return {ApFloat::from_normalized(x.negative(), x.exponent(), std::move(m)), err};
}

ApFloat apfloat_mul_exact(const ApFloat& a, const ApFloat& b) {
    if (a.is_nan() || b.is_nan()) return ApFloat::nan();
    if (a.is_inf() || b.is_inf()) {
        if (a.is_zero() || b.is_zero()) return ApFloat::nan();
        return a.sign() * b.sign() < 0 ? ApFloat::neg_inf() : ApFloat::pos_inf();
    }
    if (a.is_zero() || b.is_zero()) return ApFloat::zero();
    LimbVec prod;
    prod.resize_uninit(a.limb_count() + b.limb_count());
    mul_limbs(a.limbs(), b.limbs(), prod.span());
    return apfloat_normalize(a.negative() != b.negative(),
                             checked_exp(__int128(a.exponent()) + b.exponent()), prod.cspan());
}

ApFloat apfloat_mul_u64_exact(const ApFloat& x, std::uint64_t k) {
    if (!x.is_finite() || x.is_zero()) return k == 0 && x.is_inf() ? ApFloat::nan() : x;
    if (k == 0) return ApFloat::zero();
    LimbVec prod;
    prod.resize_uninit(x.limb_count() + 1);
    prod[x.limb_count()] = limbs_mul_1(prod.data(), x.limbs().data(), x.limb_count(), k);
    return apfloat_normalize(x.negative(), checked_exp(__int128(x.exponent()) + 64), prod.cspan());
}

ApFloat apfloat_mul_2exp(const ApFloat& x, std::int64_t k) {
    if (!x.is_finite() || x.is_zero()) return x;
    LimbVec m;
    m.assign(x.limbs().data(), x.limb_count());
    return ApFloat::from_normalized(x.negative(), checked_exp(__int128(x.exponent()) + k),
                                    std::move(m));
}

namespace {

// out (k+1 limbs, zeroed) += floor(|x| * 2^-win_bot); true if bits were lost
bool place_truncated(std::vector<Limb>& out, const ApFloat& x, std::int64_t win_bot) {
    const auto m = x.limbs();
    const std::size_t n = m.size();
    const __int128 off = __int128(x.exponent()) - std::int64_t(64 * n) - win_bot;
    if (off >= 0) {
        std::size_t ol = std::size_t(off / 64);
        unsigned sh = unsigned(off % 64);
        for (std::size_t i = 0; i < n; i++) {
            out[ol + i] |= m[i] << sh;
            if (sh) out[ol + i + 1] |= m[i] >> (64 - sh);
        }
        return false;
    }
    const __int128 drop = -off;
    const std::size_t dl = std::size_t(drop / 64);
    const unsigned db = unsigned(drop % 64);
    if (dl >= n) return true;  // entirely below the window
    bool inexact = db && (m[dl] & ((Limb(1) << db) - 1));
    for (std::size_t i = 0; i < dl && !inexact; i++)
        if (m[i]) inexact = true;
    for (std::size_t i = dl; i < n; i++) {
        Limb v = db ? m[i] >> db : m[i];
        if (db && i + 1 < n) v |= m[i + 1] << (64 - db);
        out[i - dl] = v;
    }
    return inexact;
}

}  // namespace

std::pair<ApFloat, Mag> apfloat_add_round(const ApFloat& a, const ApFloat& b, std::int64_t p) {
    p = std::max<std::int64_t>(p, 2);
    if (a.is_nan() || b.is_nan()) return {ApFloat::nan(), Mag::zero()};
    if (a.is_inf() || b.is_inf()) {
        if (a.is_inf() && b.is_inf())
            return {a.kind() == b.kind() ? a : ApFloat::nan(), Mag::zero()};
        return {a.is_inf() ? a : b, Mag::zero()};
    }
    if (a.is_zero()) return apfloat_round(b, p);
    if (b.is_zero()) return apfloat_round(a, p);
    const std::int64_t e_top = std::max(a.exponent(), b.exponent()) + 1;
    const __int128 bot_a = __int128(a.exponent()) - std::int64_t(64 * a.limb_count());
    const __int128 bot_b = __int128(b.exponent()) - std::int64_t(64 * b.limb_count());
    const __int128 span_bits = e_top - std::min(bot_a, bot_b);
    std::size_t k = std::size_t((span_bits + 63) / 64);
    const std::size_t budget = std::size_t(p / 64) + 3;
    k = std::min(k, budget);
    const std::int64_t win_bot = checked_exp(__int128(e_top) - std::int64_t(64 * k));
    std::vector<Limb> A(k + 1, 0), B(k + 1, 0);
    unsigned units = 0;
    units += place_truncated(A, a, win_bot);
    units += place_truncated(B, b, win_bot);
    std::vector<Limb> S(k + 1);
    bool sign = false;
    if (a.negative() == b.negative()) {
        limbs_add_n(S.data(), A.data(), B.data(), k + 1);
        sign = a.negative();
    } else {
        int c = limbs_cmp(A.data(), B.data(), k + 1);
        if (c >= 0) {
            limbs_sub_n(S.data(), A.data(), B.data(), k + 1);
            sign = a.negative();
        } else {
            limbs_sub_n(S.data(), B.data(), A.data(), k + 1);
            sign = b.negative();
        }
    }
    ApFloat sum = apfloat_normalize(sign, checked_exp(__int128(win_bot) + 64 * (k + 1)),
                                    {S.data(), k + 1});
    auto [res, rerr] = apfloat_round(sum, p);
    Mag err = units ? mag_add_up(rerr, Mag::from_u64_upper(units, win_bot)) : rerr;
    return {std::move(res), err};
}

std::optional<ApFloat> apfloat_add_exact(const ApFloat& a, const ApFloat& b,
                                         std::size_t max_limbs) {
    if (!a.is_finite() || !b.is_finite()) return std::nullopt;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t e_top = std::max(a.exponent(), b.exponent()) + 1;
    const __int128 bot_a = __int128(a.exponent()) - std::int64_t(64 * a.limb_count());
    const __int128 bot_b = __int128(b.exponent()) - std::int64_t(64 * b.limb_count());
    const __int128 span_bits = e_top - std::min(bot_a, bot_b);
    const std::size_t k = std::size_t((span_bits + 63) / 64);
    if (k > max_limbs) return std::nullopt;
    const std::int64_t win_bot = checked_exp(__int128(e_top) - std::int64_t(64 * k));
    std::vector<Limb> A(k + 1, 0), B(k + 1, 0), S(k + 1);
    bool ia = place_truncated(A, a, win_bot);
    bool ib = place_truncated(B, b, win_bot);
    assert(!ia && !ib);
    (void)ia;
    (void)ib;
    bool sign = false;
    if (a.negative() == b.negative()) {
        limbs_add_n(S.data(), A.data(), B.data(), k + 1);
        sign = a.negative();
    } else {
        int c = limbs_cmp(A.data(), B.data(), k + 1);
        if (c >= 0) {
            limbs_sub_n(S.data(), A.data(), B.data(), k + 1);
            sign = a.negative();
        } else {
            limbs_sub_n(S.data(), B.data(), A.data(), k + 1);
            sign = b.negative();
        }
    }
    return apfloat_normalize(sign, checked_exp(__int128(win_bot) + 64 * (k + 1)),
                             {S.data(), k + 1});
}

std::pair<ApFloat, Mag> apfloat_div_u64(const ApFloat& x, std::uint64_t k, std::int64_t p) {
    assert(k > 0);
    p = std::max<std::int64_t>(p, 2);
    if (x.is_zero() || !x.is_finite()) return {x, Mag::zero()};
    const std::size_t n = x.limb_count();
    const std::size_t w = std::max(n, std::size_t(p / 64) + 1) + 1;
    // numerator = mantissa zero-extended at the bottom to w limbs
    std::vector<Limb> q(w);
    std::uint64_t rem = 0;
    for (std::size_t i = w; i-- > 0;) {
        Limb num = i + n >= w ? x.limbs()[i + n - w] : 0;
        unsigned __int128 cur = ((unsigned __int128)rem << 64) | num;
        q[i] = Limb(cur / k);
        rem = std::uint64_t(cur % k);
    }
    // x/k = sign * 2^e * (q + rem/k) / 2^(64w)
    ApFloat quot = apfloat_normalize(x.negative(), x.exponent(), q);
    auto [res, rerr] = apfloat_round(quot, p);
    Mag err = rerr;
    if (rem)
        err = mag_add_up(err, Mag::from_u64_upper(
                                  1, checked_exp(__int128(x.exponent()) - std::int64_t(64 * w))));
    return {std::move(res), err};
}

std::string ApFloat::to_string() const {
    switch (kind_) {
        case FloatKind::Zero: return "0";
        case FloatKind::PosInf: return "inf";
        case FloatKind::NegInf: return "-inf";
        case FloatKind::NaN: return "nan";
        default: break;
    }
    std::string s = "(";
    s += neg_ ? '-' : '+';
    s += ',';
    s += std::to_string(e_);
    s += ',';
    char buf[20];
    for (std::size_t i = m_.size(); i-- > 0;) {
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)m_[i]);
        s += buf;
        if (i) s += ':';
    }
    s += ')';
    return s;
}

std::optional<ApFloat> ApFloat::parse(std::string_view s) {
    if (s == "0") return zero();
    if (s == "inf") return pos_inf();
    if (s == "-inf") return neg_inf();
    if (s == "nan") return nan();
    if (s.size() < 7 || s.front() != '(' || s.back() != ')') return std::nullopt;
    s = s.substr(1, s.size() - 2);
    if (s[0] != '+' && s[0] != '-') return std::nullopt;
    bool neg = s[0] == '-';
    if (s[1] != ',') return std::nullopt;
    s = s.substr(2);
    auto comma = s.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    std::int64_t e = 0;
    auto r = std::from_chars(s.data(), s.data() + comma, e, 10);
    if (r.ec != std::errc() || r.ptr != s.data() + comma) return std::nullopt;
    s = s.substr(comma + 1);
    std::vector<Limb> rev;
    while (!s.empty()) {
        auto sep = s.find(':');
        std::string_view tok = sep == std::string_view::npos ? s : s.substr(0, sep);
        if (tok.size() != 16) return std::nullopt;
        Limb v = 0;
        auto rr = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
        if (rr.ec != std::errc() || rr.ptr != tok.data() + tok.size()) return std::nullopt;
        rev.push_back(v);
        s = sep == std::string_view::npos ? std::string_view() : s.substr(sep + 1);
    }
    if (rev.empty()) return std::nullopt;
    LimbVec m;
    m.resize_uninit(rev.size());
    for (std::size_t i = 0; i < rev.size(); i++) m[i] = rev[rev.size() - 1 - i];
    if (!(m.back() >> 63) || m[0] == 0) return std::nullopt;
    return from_normalized(neg, e, std::move(m));
}

}  // namespace apball
