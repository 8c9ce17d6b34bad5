// oracle.cpp - exact reference arithmetic (bigint / dyadic / rational)

#include "apball/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "apball/apfloat.hpp"
#include "apball/ball.hpp"
#include "apball/mag.hpp"

namespace apball::oracle {

namespace {
constexpr std::size_t kMaxAlignBits = std::size_t(1) << 26;
}

// ---------------------------------------------------------------- Int

Int::Int(std::int64_t v) {
    neg_ = v < 0;
    std::uint64_t a = neg_ ? (~std::uint64_t(v) + 1) : std::uint64_t(v);
    if (a) mag_.push_back(std::uint32_t(a));
    if (a >> 32) mag_.push_back(std::uint32_t(a >> 32));
}

void Int::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) neg_ = false;
}

std::size_t Int::bit_length() const {
    if (mag_.empty()) return 0;
    return 32 * (mag_.size() - 1) + std::bit_width(mag_.back());
}

std::size_t Int::trailing_zero_bits() const {
    assert(!mag_.empty());
    std::size_t i = 0;
    while (mag_[i] == 0) i++;
    return 32 * i + std::countr_zero(mag_[i]);
}

int Int::mag_cmp(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<std::uint32_t> Int::mag_add(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size() + 1, 0);
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < big.size(); i++) {
        c += big[i];
        if (i < small.size()) c += small[i];
        r[i] = std::uint32_t(c);
        c >>= 32;
    }
    r[big.size()] = std::uint32_t(c);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// requires |a| >= |b|
std::vector<std::uint32_t> Int::mag_sub(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        std::int64_t d = std::int64_t(a[i]) - (i < b.size() ? std::int64_t(b[i]) : 0) - borrow;
        borrow = d < 0;
        r[i] = std::uint32_t(d);
    }
    assert(borrow == 0);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

int Int::cmp(const Int& a, const Int& b) {
    if (a.neg_ != b.neg_) {
        if (a.is_zero() && b.is_zero()) return 0;
        return a.neg_ ? -1 : 1;
    }
    int c = mag_cmp(a.mag_, b.mag_);
    return a.neg_ ? -c : c;
}

Int Int::operator-() const {
    Int r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
}

Int Int::abs() const {
    Int r = *this;
    r.neg_ = false;
    return r;
}

Int Int::operator+(const Int& o) const {
    Int r;
    if (neg_ == o.neg_) {
        r.mag_ = mag_add(mag_, o.mag_);
        r.neg_ = neg_;
    } else {
        int c = mag_cmp(mag_, o.mag_);
        if (c == 0) return Int();
        if (c > 0) {
            r.mag_ = mag_sub(mag_, o.mag_);
            r.neg_ = neg_;
        } else {
            r.mag_ = mag_sub(o.mag_, mag_);
            r.neg_ = o.neg_;
        }
    }
    r.trim();
    return r;
}

Int Int::operator-(const Int& o) const { return *this + (-o); }

Int Int::operator*(const Int& o) const {
    if (is_zero() || o.is_zero()) return Int();
    Int r;
    r.mag_.assign(mag_.size() + o.mag_.size(), 0);
    for (std::size_t i = 0; i < mag_.size(); i++) {
        std::uint64_t c = 0;
        for (std::size_t j = 0; j < o.mag_.size(); j++) {
            c += std::uint64_t(mag_[i]) * o.mag_[j] + r.mag_[i + j];
            r.mag_[i + j] = std::uint32_t(c);
            c >>= 32;
        }
        r.mag_[i + o.mag_.size()] = std::uint32_t(c);
    }
    r.neg_ = neg_ != o.neg_;
    r.trim();
    return r;
}

Int Int::operator<<(std::size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    std::size_t words = bits / 32, rem = bits % 32;
    Int r;
    r.neg_ = neg_;
    r.mag_.assign(mag_.size() + words + 1, 0);
    for (std::size_t i = 0; i < mag_.size(); i++) {
        std::uint64_t v = std::uint64_t(mag_[i]) << rem;
        r.mag_[i + words] |= std::uint32_t(v);
        r.mag_[i + words + 1] |= std::uint32_t(v >> 32);
    }
    r.trim();
    return r;
}

Int Int::operator>>(std::size_t bits) const {
    if (is_zero()) return *this;
    std::size_t words = bits / 32, rem = bits % 32;
    if (words >= mag_.size()) return Int();
    Int r;
    r.neg_ = neg_;
    r.mag_.assign(mag_.size() - words, 0);
    for (std::size_t i = 0; i < r.mag_.size(); i++) {
        std::uint64_t v = mag_[i + words] >> rem;
        if (rem && i + words + 1 < mag_.size())
            v |= std::uint64_t(mag_[i + words + 1]) << (32 - rem);
        r.mag_[i] = std::uint32_t(v);
    }
    r.trim();
    return r;
}

std::uint32_t Int::divmod_u32(std::uint32_t d) {
    assert(d != 0);
    std::uint64_t rem = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | mag_[i];
        mag_[i] = std::uint32_t(cur / d);
        rem = cur % d;
    }
    trim();
    return std::uint32_t(rem);
}

void Int::mul_u32_add(std::uint32_t m, std::uint32_t a) {
    assert(!neg_);
    std::uint64_t c = a;
    for (std::size_t i = 0; i < mag_.size(); i++) {
        c += std::uint64_t(mag_[i]) * m;
        mag_[i] = std::uint32_t(c);
        c >>= 32;
    }
    if (c) mag_.push_back(std::uint32_t(c));
    trim();
}

// Knuth algorithm D on base-2^32 magnitudes.
static void divmod_mag(std::vector<std::uint32_t> u, std::vector<std::uint32_t> v,
                       std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    const std::size_t n = v.size(), m = u.size();
    assert(n >= 1 && !(v.back() == 0));
    q.clear();
    r.clear();
    if (n == 1) {
        std::uint32_t d = v[0];
        std::uint64_t rem = 0;
        q.assign(m, 0);
        for (std::size_t i = m; i-- > 0;) {
            std::uint64_t cur = (rem << 32) | u[i];
            q[i] = std::uint32_t(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(std::uint32_t(rem));
        return;
    }
    if (m < n) {
        r = std::move(u);
        return;
    }
    const unsigned s = std::countl_zero(v.back());
    // normalized copies
    std::vector<std::uint32_t> vn(n), un(m + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        std::uint64_t x = std::uint64_t(v[i]) << s;
        if (s && i > 0) x |= v[i - 1] >> (32 - s);
        vn[i] = std::uint32_t(x);
    }
    un[m] = s ? std::uint32_t(std::uint64_t(u[m - 1]) >> (32 - s)) : 0;
    for (std::size_t i = m; i-- > 0;) {
        std::uint64_t x = std::uint64_t(u[i]) << s;
        if (s && i > 0) x |= u[i - 1] >> (32 - s);
        un[i] = std::uint32_t(x);
    }
    q.assign(m - n + 1, 0);
    for (std::size_t j = m - n + 1; j-- > 0;) {
        std::uint64_t num = (std::uint64_t(un[j + n]) << 32) | un[j + n - 1];
        std::uint64_t qhat = num / vn[n - 1];
        std::uint64_t rhat = num % vn[n - 1];
        while (qhat >> 32 ||
               qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
            qhat--;
            rhat += vn[n - 1];
            if (rhat >> 32) break;
        }
        // multiply and subtract
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; i++) {
            std::uint64_t p = qhat * vn[i] + carry;
            carry = p >> 32;
            std::int64_t t = std::int64_t(un[i + j]) - std::int64_t(std::uint32_t(p)) - borrow;
            borrow = t < 0;
            un[i + j] = std::uint32_t(t);
        }
        std::int64_t t = std::int64_t(un[j + n]) - std::int64_t(carry) - borrow;
        un[j + n] = std::uint32_t(t);
        if (t < 0) {
            // add back
            qhat--;
            std::uint64_t c = 0;
            for (std::size_t i = 0; i < n; i++) {
                c += std::uint64_t(un[i + j]) + vn[i];
                un[i + j] = std::uint32_t(c);
                c >>= 32;
            }
            un[j + n] = std::uint32_t(un[j + n] + c);
        }
        q[j] = std::uint32_t(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    // denormalize remainder
    r.assign(n, 0);
    for (std::size_t i = 0; i < n; i++) {
        std::uint64_t x = un[i] >> s;
        if (s && i + 1 < n + 1) x |= std::uint64_t(un[i + 1]) << (32 - s);
        r[i] = std::uint32_t(x);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

void Int::divmod(const Int& a, const Int& b, Int& q, Int& r) {
    if (b.is_zero()) throw std::domain_error("oracle: division by zero");
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.neg_ = a.neg_ != b.neg_;
    r.neg_ = a.neg_;
    q.trim();
    r.trim();
}

Int Int::gcd(const Int& a, const Int& b) {
    Int x = a.abs(), y = b.abs();
    while (!y.is_zero()) {
        Int q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

std::uint64_t Int::to_u64_saturated() const {
    if (bit_length() > 64) return ~std::uint64_t(0);
    std::uint64_t v = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = (v << 32) | mag_[i];
    return v;
}

std::string Int::to_string() const {
    if (is_zero()) return "0";
    Int t = abs();
    std::string s;
    while (!t.is_zero()) {
        std::uint32_t g = t.divmod_u32(1000000000u);
        std::string part = std::to_string(g);
        if (!t.is_zero()) part.insert(0, 9 - part.size(), '0');
        s.insert(0, part);
    }
    if (neg_) s.insert(0, "-");
    return s;
}

Int Int::from_limbs64(std::span<const std::uint64_t> limbs, bool neg) {
    Int r;
    r.mag_.reserve(2 * limbs.size());
    for (std::uint64_t w : limbs) {
        r.mag_.push_back(std::uint32_t(w));
        r.mag_.push_back(std::uint32_t(w >> 32));
    }
    r.neg_ = neg;
    r.trim();
    return r;
}

std::vector<std::uint64_t> Int::to_limbs64() const {
    std::vector<std::uint64_t> r;
    for (std::size_t i = 0; i < mag_.size(); i += 2) {
        std::uint64_t w = mag_[i];
        if (i + 1 < mag_.size()) w |= std::uint64_t(mag_[i + 1]) << 32;
        r.push_back(w);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// ------------------------------------------------------------- Dyadic

void Dyadic::normalize() {
    if (m.is_zero()) {
        e = 0;
        return;
    }
    std::size_t tz = m.trailing_zero_bits();
    if (tz) {
        m = m >> tz;
        e += std::int64_t(tz);
    }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (m.is_zero()) return o;
    if (o.m.is_zero()) return *this;
    const Dyadic *lo = this, *hi = &o;
    if (lo->e > hi->e) std::swap(lo, hi);
    std::uint64_t gap = std::uint64_t(hi->e - lo->e);
    if (gap > kMaxAlignBits)
        throw std::runtime_error("oracle: dyadic alignment window exceeded");
    Dyadic r{(hi->m << std::size_t(gap)) + lo->m, lo->e};
    r.normalize();
    return r;
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
    if (m.is_zero() || o.m.is_zero()) return {};
    __int128 es = __int128(e) + o.e;
    if (es > INT64_MAX || es < INT64_MIN)
        throw std::runtime_error("oracle: dyadic exponent overflow");
    Dyadic r{m * o.m, std::int64_t(es)};
    r.normalize();
    return r;
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // same nonzero sign: compare top-bit positions first
    __int128 ta = __int128(a.e) + std::int64_t(a.m.bit_length());
    __int128 tb = __int128(b.e) + std::int64_t(b.m.bit_length());
    if (ta != tb) return ((ta < tb) ? -1 : 1) * sa;
    // equal tops: exponent gap is bounded by the mantissa lengths
    if (a.e >= b.e) {
        Int am = a.m << std::size_t(a.e - b.e);
        return Int::cmp(am, b.m);
    }
    Int bm = b.m << std::size_t(b.e - a.e);
    return Int::cmp(a.m, bm);
}

std::string Dyadic::to_string() const {
    return m.to_string() + "*2^" + std::to_string(e);
}

// ---------------------------------------------------------------- Rat

Rat::Rat(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("oracle: zero denominator");
    if (den_.negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = Int(1);
        return;
    }
    Int g = Int::gcd(num_, den_);
    Int q, r;
    Int::divmod(num_, g, q, r);
    num_ = q;
    Int::divmod(den_, g, q, r);
    den_ = q;
}

Rat Rat::from_dyadic(const Dyadic& d) {
    if (d.e >= 0) {
        if (std::uint64_t(d.e) > kMaxAlignBits)
            throw std::runtime_error("oracle: dyadic too wide for Rat");
        return Rat(d.m << std::size_t(d.e), Int(1));
    }
    if (std::uint64_t(-d.e) > kMaxAlignBits)
        throw std::runtime_error("oracle: dyadic too wide for Rat");
    return Rat(d.m, Int(1) << std::size_t(-d.e));
}

Rat Rat::operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
Rat Rat::operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
Rat Rat::operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
Rat Rat::operator/(const Rat& o) const {
    if (o.num_.is_zero()) throw std::domain_error("oracle: rational division by zero");
    return Rat(num_ * o.den_, den_ * o.num_);
}
Rat Rat::operator-() const { return Rat(-num_, den_); }

int Rat::cmp(const Rat& a, const Rat& b) { return Int::cmp(a.num_ * b.den_, b.num_ * a.den_); }

std::string Rat::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

// -------------------------------------------------- kernel conversions

Dyadic dyadic_from_apfloat(const ApFloat& x) {
    if (x.is_zero()) return {};
    if (!x.is_finite()) throw std::domain_error("oracle: non-finite midpoint");
    auto limbs = x.limbs();
    Dyadic d{Int::from_limbs64({limbs.data(), limbs.size()}, x.negative()),
             x.exponent() - std::int64_t(64 * limbs.size())};
    d.normalize();
    return d;
}

Dyadic dyadic_from_mag(const Mag& r) {
    if (r.is_zero()) return {};
    if (!r.is_finite()) throw std::domain_error("oracle: infinite radius");
    Dyadic d{Int(std::int64_t(r.mantissa())), r.exponent() - 30};
    d.normalize();
    return d;
}

RationalInterval interval_from_ball(const Ball& b) {
    Dyadic mid = dyadic_from_apfloat(b.mid);
    Dyadic rad = dyadic_from_mag(b.rad);
    return {mid - rad, mid + rad};
}

Dyadic rational_dot_exact(std::span<const Dyadic> x, std::span<const Dyadic> y) {
    assert(x.size() == y.size());
    Dyadic s;
    for (std::size_t i = 0; i < x.size(); i++) s = s + x[i] * y[i];
    return s;
}

RationalInterval interval_dot_hull(std::span<const Ball> x, std::span<const Ball> y) {
    assert(x.size() == y.size());
    Dyadic lo, hi;
    for (std::size_t i = 0; i < x.size(); i++) {
        RationalInterval a = interval_from_ball(x[i]);
        RationalInterval b = interval_from_ball(y[i]);
        Dyadic p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        Dyadic tlo = std::min({p1, p2, p3, p4}, [](const Dyadic& u, const Dyadic& v) {
            return Dyadic::cmp(u, v) < 0;
        });
        Dyadic thi = std::max({p1, p2, p3, p4}, [](const Dyadic& u, const Dyadic& v) {
            return Dyadic::cmp(u, v) < 0;
        });
        lo = lo + tlo;
        hi = hi + thi;
    }
    return {lo, hi};
}

bool dot_contained(std::span<const Ball> x, std::span<const Ball> y, const Ball& out) {
    if (out.mid.is_nan()) return true;  // indeterminate ball = full set
    if (out.rad.is_inf()) return true;
    if (!out.mid.is_finite()) return false;
    RationalInterval hull = interval_dot_hull(x, y);
    RationalInterval res = interval_from_ball(out);
    return res.lo <= hull.lo && hull.hi <= res.hi;
}

std::vector<Dyadic> rational_matmul_exact(std::span<const Dyadic> a, std::span<const Dyadic> b,
                                          std::size_t m, std::size_t n, std::size_t k) {
    assert(a.size() == m * n && b.size() == n * k);
    std::vector<Dyadic> c(m * k);
    for (std::size_t i = 0; i < m; i++)
        for (std::size_t j = 0; j < k; j++) {
            Dyadic s;
            for (std::size_t l = 0; l < n; l++) s = s + a[i * n + l] * b[l * k + j];
            c[i * k + j] = s;
        }
    return c;
}

std::vector<RationalInterval> interval_matmul_hull(std::span<const Ball> a,
                                                   std::span<const Ball> b,
                                                   std::size_t m, std::size_t n, std::size_t k) {
    assert(a.size() == m * n && b.size() == n * k);
    std::vector<RationalInterval> c(m * k);
    std::vector<Ball> row(n), col(n);
    for (std::size_t i = 0; i < m; i++)
        for (std::size_t j = 0; j < k; j++) {
            for (std::size_t l = 0; l < n; l++) {
                row[l] = a[i * n + l];
                col[l] = b[l * k + j];
            }
            RationalInterval hull = interval_dot_hull(row, col);
            c[i * k + j] = hull;
        }
    return c;
}

}  // namespace apball::oracle
