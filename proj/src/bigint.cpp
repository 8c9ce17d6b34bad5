// bigint.cpp

#include "apball/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "apball/apfloat.hpp"

namespace apball {

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    neg_ = v < 0;
    mag_.push_back(neg_ ? ~std::uint64_t(v) + 1 : std::uint64_t(v));
}

BigInt BigInt::from_limbs(std::span<const Limb> limbs, bool neg) {
    BigInt r;
    r.mag_.assign(limbs.begin(), limbs.end());
    r.neg_ = neg;
    r.trim();
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) neg_ = false;
}

std::size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    return 64 * (mag_.size() - 1) + std::bit_width(mag_.back());
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
    int c;
    if (a.mag_.size() != b.mag_.size())
        c = a.mag_.size() < b.mag_.size() ? -1 : 1;
    else
        c = limbs_cmp(a.mag_.data(), b.mag_.data(), a.mag_.size());
    return a.neg_ ? -c : c;
}

bool BigInt::operator==(const BigInt& o) const {
    return neg_ == o.neg_ && mag_ == o.mag_;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    if (neg_ == o.neg_) {
        const auto& big = mag_.size() >= o.mag_.size() ? mag_ : o.mag_;
        const auto& small = mag_.size() >= o.mag_.size() ? o.mag_ : mag_;
        r.mag_.assign(big.begin(), big.end());
        r.mag_.push_back(0);
        Limb cy = limbs_add_n(r.mag_.data(), r.mag_.data(), small.data(), small.size());
        if (cy) limbs_add_1(r.mag_.data() + small.size(), r.mag_.data() + small.size(),
                            r.mag_.size() - small.size(), cy);
        r.neg_ = neg_;
    } else {
        // |a| - |b| with the dominant sign
        const std::vector<Limb>*big, *small;
        bool sign;
        int c;
        if (mag_.size() != o.mag_.size())
            c = mag_.size() < o.mag_.size() ? -1 : 1;
        else
            c = limbs_cmp(mag_.data(), o.mag_.data(), mag_.size());
        if (c == 0) return BigInt();
        if (c > 0) {
            big = &mag_;
            small = &o.mag_;
            sign = neg_;
        } else {
            big = &o.mag_;
            small = &mag_;
            sign = o.neg_;
        }
        r.mag_.assign(big->begin(), big->end());
        Limb bw = limbs_sub_n(r.mag_.data(), r.mag_.data(), small->data(), small->size());
        if (bw) limbs_sub_1(r.mag_.data() + small->size(), r.mag_.data() + small->size(),
                            r.mag_.size() - small->size(), bw);
        r.neg_ = sign;
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (is_zero() || o.is_zero()) return BigInt();
    BigInt r;
    r.mag_.assign(mag_.size() + o.mag_.size(), 0);
    mul_limbs({mag_.data(), mag_.size()}, {o.mag_.data(), o.mag_.size()},
              {r.mag_.data(), r.mag_.size()});
    r.neg_ = neg_ != o.neg_;
    r.trim();
    return r;
}

BigInt BigInt::mul_u64(std::uint64_t m) const {
    if (is_zero() || m == 0) return BigInt();
    BigInt r;
    r.mag_.assign(mag_.size() + 1, 0);
    r.mag_[mag_.size()] = limbs_mul_1(r.mag_.data(), mag_.data(), mag_.size(), m);
    r.neg_ = neg_;
    r.trim();
    return r;
}

BigInt BigInt::operator<<(std::size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    std::size_t words = bits / 64;
    unsigned rem = unsigned(bits % 64);
    BigInt r;
    r.mag_.assign(mag_.size() + words + 1, 0);
    std::copy(mag_.begin(), mag_.end(), r.mag_.begin() + words);
    if (rem)
        r.mag_[mag_.size() + words] =
            limbs_shl(r.mag_.data() + words, r.mag_.data() + words, mag_.size(), rem);
    r.neg_ = neg_;
    r.trim();
    return r;
}

BigInt BigInt::shr_exact(std::size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    std::size_t words = bits / 64;
    unsigned rem = unsigned(bits % 64);
    assert(words < mag_.size());
    BigInt r;
    r.mag_.assign(mag_.begin() + words, mag_.end());
    if (rem) {
        Limb out = limbs_shr(r.mag_.data(), r.mag_.data(), r.mag_.size(), rem);
        assert(out == 0);
        (void)out;
    }
    r.neg_ = neg_;
    r.trim();
    return r;
}

std::uint64_t BigInt::mag_mod_u64(std::uint64_t m) const {
    assert(m != 0);
    std::uint64_t r = 0;
    for (std::size_t i = mag_.size(); i-- > 0;)
        r = std::uint64_t((((unsigned __int128)r << 64) | mag_[i]) % m);
    return r;
}

std::string BigInt::to_string_hex() const {
    if (is_zero()) return "0";
    std::string s = neg_ ? "-0x" : "0x";
    char buf[20];
    for (std::size_t i = mag_.size(); i-- > 0;) {
        std::snprintf(buf, sizeof buf, i + 1 == mag_.size() ? "%llx" : "%016llx",
                      (unsigned long long)mag_[i]);
        s += buf;
    }
    return s;
}

BigInt bigint_from_apfloat_scaled(const ApFloat& x, std::int64_t shift) {
    if (x.is_zero()) return BigInt();
    assert(x.is_finite());
    std::int64_t sh = x.exponent() - std::int64_t(64 * x.limb_count()) + shift;
    BigInt m = BigInt::from_limbs(x.limbs(), x.negative());
    if (sh >= 0) return m << std::size_t(sh);
    return m.shr_exact(std::size_t(-sh));
}

ApFloat apfloat_from_bigint_scaled(const BigInt& v, std::int64_t exp2) {
    if (v.is_zero()) return ApFloat::zero();
    return apfloat_normalize(v.negative(), std::int64_t(64 * v.limbs().size()) + exp2,
                             v.limbs());
}

}  // namespace apball
