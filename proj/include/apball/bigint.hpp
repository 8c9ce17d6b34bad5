#pragma once
// bigint.hpp - sign-magnitude big integers on 64-bit limbs, the working
// type for scaled integer matrix blocks. Just the operations the matrix
// paths need; no division.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apball/limb.hpp"

namespace apball {

class ApFloat;

class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t v);
    static BigInt from_limbs(std::span<const Limb> limbs, bool neg);

    bool is_zero() const { return mag_.empty(); }
    bool negative() const { return neg_; }
    std::size_t bit_length() const;
    std::span<const Limb> limbs() const { return {mag_.data(), mag_.size()}; }

    BigInt operator-() const;
    BigInt abs() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt operator<<(std::size_t bits) const;
    BigInt shr_exact(std::size_t bits) const;  // requires the low bits to be zero
    BigInt mul_u64(std::uint64_t m) const;

    bool operator==(const BigInt& o) const;
    bool operator<(const BigInt& o) const { return cmp(*this, o) < 0; }
    static int cmp(const BigInt& a, const BigInt& b);

    // magnitude mod m (sign handled by callers)
    std::uint64_t mag_mod_u64(std::uint64_t m) const;

    std::string to_string_hex() const;

  private:
    void trim();
    std::vector<Limb> mag_;
    bool neg_ = false;
};

// exact conversions between scaled floats and integers
// value(x) * 2^shift must be an integer
BigInt bigint_from_apfloat_scaled(const ApFloat& x, std::int64_t shift);
// exact ApFloat of v * 2^exp2
ApFloat apfloat_from_bigint_scaled(const BigInt& v, std::int64_t exp2);

}  // namespace apball
