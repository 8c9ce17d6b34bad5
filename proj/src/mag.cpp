// mag.cpp - upper-bound magnitude arithmetic

#include "apball/mag.hpp"

#include <bit>
#include <cassert>
#include <charconv>
#include <cmath>

#include "apball/apfloat.hpp"

namespace apball {

namespace {
constexpr std::int64_t kExpMax = INT64_MAX - 4;
constexpr std::int64_t kExpMin = INT64_MIN + 4;
}  // namespace

Mag Mag::from_parts(std::uint64_t b, std::int64_t f) {
    assert(b >= (kMagOne >> 1) && b <= kMagOne);
    Mag m;
    if (b == kMagOne) {
        b = kMagOne >> 1;
        if (f >= kExpMax) return inf();
        f++;
    }
    m.kind_ = Kind::Finite;
    m.b_ = b;
    m.f_ = f;
    return m;
}

Mag Mag::from_u64_upper(std::uint64_t v, std::int64_t exp2) {
    if (v == 0) return zero();
    unsigned len = std::bit_width(v);
    std::uint64_t b;
    bool inexact = false;
    if (len <= kRadPrec) {
        b = v << (kRadPrec - len);
    } else {
        unsigned sh = len - kRadPrec;
        b = v >> sh;
        inexact = (v & ((std::uint64_t(1) << sh) - 1)) != 0;
    }
    if (inexact) b++;
    __int128 f = __int128(exp2) + len;
    if (f > kExpMax) return inf();
    if (f < kExpMin) return from_parts(kMagOne >> 1, kExpMin);
    return from_parts(b, std::int64_t(f));
}

Mag Mag::from_limbs_upper(std::span<const std::uint64_t> limbs, std::int64_t exp2) {
    std::size_t n = limbs.size();
    while (n > 0 && limbs[n - 1] == 0) n--;
    if (n == 0) return zero();
    // collect the top 64 bits and whether anything below is nonzero
    std::uint64_t top = limbs[n - 1];
    unsigned tb = std::bit_width(top);
    std::uint64_t window = tb < 64 ? top << (64 - tb) : top;
    bool low_nonzero = false;
    if (tb < 64 && n >= 2) window |= limbs[n - 2] >> tb;
    for (std::size_t i = 0; i + 1 < n; i++) {
        std::uint64_t lo = limbs[i];
        if (i == n - 2 && tb < 64) lo &= (std::uint64_t(1) << tb) - 1;
        if (lo) {
            low_nonzero = true;
            break;
        }
    }
    std::uint64_t b = window >> (64 - kRadPrec);
    if (low_nonzero || (window & ((std::uint64_t(1) << (64 - kRadPrec)) - 1)))
        b++;
    __int128 f = __int128(exp2) + std::int64_t(64 * (n - 1) + tb);
    if (f > kExpMax) return inf();
    if (f < kExpMin) return from_parts(kMagOne >> 1, kExpMin);
    return from_parts(b, std::int64_t(f));
}

Mag Mag::from_double_upper(double v, std::int64_t exp2) {
    assert(v >= 0.0);
    if (v == 0.0) return zero();
    if (std::isinf(v) || std::isnan(v)) return inf();
    int e;
    double fr = std::frexp(v, &e);  // fr in [0.5, 1)
    std::uint64_t m53 = std::uint64_t(std::ldexp(fr, 53));
    return from_u64_upper(m53, exp2 + e - 53);
}

Mag Mag::mul_2exp(std::int64_t k) const {
    if (kind_ != Kind::Finite) return *this;
    __int128 f = __int128(f_) + k;
    if (f > kExpMax) return inf();
    if (f < kExpMin) return from_parts(kMagOne >> 1, kExpMin);
    Mag m = *this;
    m.f_ = std::int64_t(f);
    return m;
}

int mag_cmp(const Mag& a, const Mag& b) {
    auto rank = [](const Mag& m) { return m.is_zero() ? 0 : (m.is_inf() ? 2 : 1); };
    int ra = rank(a), rb = rank(b);
    if (ra != rb || ra != 1) return ra < rb ? -1 : (ra > rb ? 1 : 0);
    if (a.f_ != b.f_) return a.f_ < b.f_ ? -1 : 1;
    if (a.b_ != b.b_) return a.b_ < b.b_ ? -1 : 1;
    return 0;
}

Mag mag_add_up(const Mag& a, const Mag& b) {
    if (a.is_inf() || b.is_inf()) return Mag::inf();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Mag *hi = &a, *lo = &b;
    if (mag_cmp(*hi, *lo) < 0) std::swap(hi, lo);
    std::uint64_t bh = hi->mantissa();
    std::int64_t f = hi->exponent();
    std::uint64_t d = std::uint64_t(f - lo->exponent());
    if (d >= kRadPrec) {
        bh += 1;
    } else {
        std::uint64_t bl = lo->mantissa();
        bh += bl >> d;
        if (d && (bl & ((std::uint64_t(1) << d) - 1))) bh++;
    }
    while (bh > kMagOne) {
        bh = (bh + 1) >> 1;
        if (f >= kExpMax) return Mag::inf();
        f++;
    }
    return Mag::from_parts(bh, f);
}

Mag mag_mul_up(const Mag& a, const Mag& b) {
    if (a.is_zero() || b.is_zero()) return Mag::zero();
    if (a.is_inf() || b.is_inf()) return Mag::inf();
    std::uint64_t p = a.mantissa() * b.mantissa();
    std::uint64_t q = (p + (kMagOne - 1)) >> kRadPrec;
    __int128 f = __int128(a.exponent()) + b.exponent();
    if (q < (kMagOne >> 1)) {
        q <<= 1;
        f--;
    }
    if (f > kExpMax) return Mag::inf();
    if (f < kExpMin) return Mag::from_parts(kMagOne >> 1, kExpMin);
    return Mag::from_parts(q, std::int64_t(f));
}

Mag mag_upper_from_apfloat(const ApFloat& x) {
    if (x.is_zero()) return Mag::zero();
    assert(x.is_finite());
    std::uint64_t top = x.limbs().back();
    std::uint64_t b = (top >> (64 - kRadPrec)) + 1;
    return Mag::from_parts(b, x.exponent());
}

Mag mag_inv_u64_upper(std::uint64_t k) {
    assert(k > 0);
    unsigned len = std::bit_width(k);
    if ((k & (k - 1)) == 0) return Mag::from_parts(kMagOne >> 1, 2 - std::int64_t(len));
    // 2^(len-1) < k < 2^len, so ceil(2^(29+len)/k) lands in (2^29, 2^30]
    unsigned __int128 num = (unsigned __int128)1 << (kRadPrec - 1 + len);
    std::uint64_t q = std::uint64_t(num / k);
    if (num % k) q++;
    return Mag::from_parts(q, 1 - std::int64_t(len));
}

double mag_ldexp(const Mag& m, std::int64_t shift) {
    if (m.is_zero()) return 0.0;
    assert(m.is_finite());
    std::int64_t e = m.exponent() - kRadPrec + shift;
    assert(e > -1000 && e < 1000);
    return std::ldexp(double(m.mantissa()), int(e));
}

std::string Mag::to_string() const {
    if (kind_ == Kind::Zero) return "0";
    if (kind_ == Kind::Inf) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%llx,%lld)", (unsigned long long)b_, (long long)f_);
    return buf;
}

std::optional<Mag> Mag::parse(std::string_view s) {
    if (s == "0") return zero();
    if (s == "inf") return inf();
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') return std::nullopt;
    s = s.substr(1, s.size() - 2);
    auto comma = s.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    std::uint64_t b = 0;
    std::int64_t f = 0;
    auto r1 = std::from_chars(s.data(), s.data() + comma, b, 16);
    auto r2 = std::from_chars(s.data() + comma + 1, s.data() + s.size(), f, 10);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r2.ptr != s.data() + s.size())
        return std::nullopt;
    if (b < (kMagOne >> 1) || b >= kMagOne) return std::nullopt;
    return from_parts(b, f);
}

}  // namespace apball
