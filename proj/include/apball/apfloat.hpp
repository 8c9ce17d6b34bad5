#pragma once
// apfloat.hpp - arbitrary-precision binary floating point.
//
// A finite value is (-1)^sign * 2^e * sum_k m[k] * 2^(64(k-n)) with the
// mantissa normalized: top limb has its high bit set, bottom limb is
// nonzero, n minimal. So 2^(e-1) <= |value| < 2^e. Specials: 0 (unsigned),
// +/-inf, NaN. Exponents are single signed words; values that would
// normalize outside that range raise an error instead of growing the
// exponent onto the heap.

#include <cassert>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "apball/limb.hpp"
#include "apball/mag.hpp"

namespace apball {

// limb vector with inline storage for up to 3 limbs (p <= 192)
class LimbVec {
  public:
    LimbVec() = default;
    LimbVec(const LimbVec& o) { assign(o.data_, o.len_); }
    LimbVec(LimbVec&& o) noexcept { steal(o); }
    LimbVec& operator=(const LimbVec& o) {
        if (this != &o) assign(o.data_, o.len_);
        return *this;
    }
    LimbVec& operator=(LimbVec&& o) noexcept {
        if (this != &o) {
            release();
            steal(o);
        }
        return *this;
    }
    ~LimbVec() { release(); }

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }
    Limb* data() { return data_; }
    const Limb* data() const { return data_; }
    Limb& operator[](std::size_t i) { return data_[i]; }
    Limb operator[](std::size_t i) const { return data_[i]; }
    Limb back() const { return data_[len_ - 1]; }
    std::span<const Limb> cspan() const { return {data_, len_}; }
    std::span<Limb> span() { return {data_, len_}; }

    void resize_uninit(std::size_t n) {
        if (n > cap_) {
            release();
            data_ = new Limb[n];
            cap_ = n;
        }
        len_ = n;
    }
    // drop to the first n limbs without touching storage
    void shrink(std::size_t n) {
        assert(n <= len_);
        len_ = n;
    }
    void assign(const Limb* p, std::size_t n) {
        resize_uninit(n);
        if (n) std::memmove(data_, p, n * sizeof(Limb));
    }

  private:
    static constexpr std::size_t kInline = 3;
    void release() {
        if (data_ != inline_) delete[] data_;
        data_ = inline_;
        cap_ = kInline;
        len_ = 0;
    }
    void steal(LimbVec& o) {
        len_ = o.len_;
        if (o.data_ != o.inline_) {
            data_ = o.data_;
            cap_ = o.cap_;
            o.data_ = o.inline_;
            o.cap_ = kInline;
        } else {
            std::memcpy(inline_, o.inline_, len_ * sizeof(Limb));
            data_ = inline_;
            cap_ = kInline;
        }
        o.len_ = 0;
    }
    std::size_t len_ = 0;
    std::size_t cap_ = kInline;
    Limb* data_ = inline_;
    Limb inline_[3];
};

enum class FloatKind : std::uint8_t { Zero, Finite, PosInf, NegInf, NaN };

class ApFloat {
  public:
    ApFloat() = default;  // zero

    static ApFloat zero() { return ApFloat(); }
    static ApFloat pos_inf() { return special(FloatKind::PosInf); }
    static ApFloat neg_inf() { return special(FloatKind::NegInf); }
    static ApFloat nan() { return special(FloatKind::NaN); }
    static ApFloat from_i64(std::int64_t v);
    static ApFloat one() { return from_i64(1); }
    // trusted constructor: limbs must already satisfy the invariants
    static ApFloat from_normalized(bool negative, std::int64_t e, LimbVec mant);

    FloatKind kind() const { return kind_; }
    bool is_zero() const { return kind_ == FloatKind::Zero; }
    bool is_finite() const { return kind_ == FloatKind::Zero || kind_ == FloatKind::Finite; }
    bool is_special() const { return !is_finite(); }
    bool is_nan() const { return kind_ == FloatKind::NaN; }
    bool is_inf() const { return kind_ == FloatKind::PosInf || kind_ == FloatKind::NegInf; }
    bool negative() const { return neg_; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }
    std::int64_t exponent() const { return e_; }
    std::size_t limb_count() const { return m_.size(); }
    std::span<const Limb> limbs() const { return m_.cspan(); }

    // occupied bit window of a finite nonzero value: bits [bottom_exponent, exponent)
    std::int64_t bit_width() const;
    std::int64_t bottom_exponent() const { return e_ - bit_width(); }

    ApFloat neg() const;
    ApFloat abs() const;

    std::string to_string() const;
    static std::optional<ApFloat> parse(std::string_view s);

    // total order for tests: by kind, then signed magnitude; NaN sorts last
    friend bool apfloat_identical(const ApFloat& a, const ApFloat& b);

  private:
    static ApFloat special(FloatKind k) {
        ApFloat f;
        f.kind_ = k;
        f.neg_ = (k == FloatKind::NegInf);
        return f;
    }
    FloatKind kind_ = FloatKind::Zero;
    bool neg_ = false;
    std::int64_t e_ = 0;
    LimbVec m_;
};

// canonicalize (sign, e, raw) with value (-1)^sign * 2^e * raw / 2^(64*raw.len);
// zero input gives Zero; exponent range overflow throws std::overflow_error
ApFloat apfloat_normalize(bool negative, std::int64_t e, std::span<const Limb> raw);

// truncate toward zero to p significant bits; err is an exact upper
// bound on |x - result| (Zero when the value was already representable)
std::pair<ApFloat, Mag> apfloat_round(const ApFloat& x, std::int64_t p);

// exact product / scalings (specials propagate)
ApFloat apfloat_mul_exact(const ApFloat& a, const ApFloat& b);
ApFloat apfloat_mul_u64_exact(const ApFloat& x, std::uint64_t k);
ApFloat apfloat_mul_2exp(const ApFloat& x, std::int64_t k);

// rounded sum: ball-safe (result, err) with |a+b - result| <= err
std::pair<ApFloat, Mag> apfloat_add_round(const ApFloat& a, const ApFloat& b, std::int64_t p);

// exact sum if the combined bit window fits in max_limbs limbs
std::optional<ApFloat> apfloat_add_exact(const ApFloat& a, const ApFloat& b,
                                         std::size_t max_limbs);

// truncated quotient by a word: |x/k - result| <= err
std::pair<ApFloat, Mag> apfloat_div_u64(const ApFloat& x, std::uint64_t k, std::int64_t p);

}  // namespace apball
