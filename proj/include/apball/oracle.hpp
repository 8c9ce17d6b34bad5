#pragma once
// oracle.hpp - exact rational reference arithmetic for tests.
//
// Self-contained: a naive base-2^32 big integer, exact dyadics
// (mantissa * 2^e with a machine-word exponent, so values with huge
// binary exponents stay cheap as long as each comparison/sum spans a
// bounded bit window), and canonical rationals. Deliberately shares no
// arithmetic code with the limb kernel. Never on a performance path.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apball {
class ApFloat;
class Mag;
struct Ball;
}  // namespace apball

namespace apball::oracle {

// Arbitrary-precision signed integer, magnitude in base 2^32.
class Int {
  public:
    Int() = default;
    Int(std::int64_t v);

    bool is_zero() const { return mag_.empty(); }
    bool negative() const { return neg_; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }
    std::size_t bit_length() const;
    std::size_t trailing_zero_bits() const;  // undefined for zero
    bool is_odd() const { return !mag_.empty() && (mag_[0] & 1); }

    Int operator-() const;
    Int abs() const;
    Int operator+(const Int& o) const;
    Int operator-(const Int& o) const;
    Int operator*(const Int& o) const;
    Int operator<<(std::size_t bits) const;
    Int operator>>(std::size_t bits) const;  // floor for nonnegative; callers keep it exact
    bool operator==(const Int& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const Int& o) const { return cmp(*this, o) != 0; }
    bool operator<(const Int& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const Int& o) const { return cmp(*this, o) <= 0; }
    bool operator>(const Int& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const Int& o) const { return cmp(*this, o) >= 0; }

    static int cmp(const Int& a, const Int& b);
    // quotient truncated toward zero, remainder has dividend's sign
    static void divmod(const Int& a, const Int& b, Int& q, Int& r);
    static Int gcd(const Int& a, const Int& b);

    std::uint32_t divmod_u32(std::uint32_t d);  // in place; returns remainder
    void mul_u32_add(std::uint32_t m, std::uint32_t a);  // x <- x*m + a (x >= 0)

    std::uint64_t to_u64_saturated() const;
    std::string to_string() const;  // decimal

    static Int from_limbs64(std::span<const std::uint64_t> limbs, bool neg);
    std::vector<std::uint64_t> to_limbs64() const;  // magnitude

  private:
    static std::vector<std::uint32_t> mag_add(const std::vector<std::uint32_t>&,
                                              const std::vector<std::uint32_t>&);
    static std::vector<std::uint32_t> mag_sub(const std::vector<std::uint32_t>&,
                                              const std::vector<std::uint32_t>&);
    static int mag_cmp(const std::vector<std::uint32_t>&, const std::vector<std::uint32_t>&);
    void trim();

    std::vector<std::uint32_t> mag_;
    bool neg_ = false;
};

// Exact dyadic value m * 2^e. Additions and comparisons align the
// operands, so the spanned bit window must stay modest; exponents
// themselves may be anywhere in the int64 range.
struct Dyadic {
    Int m;
    std::int64_t e = 0;

    bool is_zero() const { return m.is_zero(); }
    int sign() const { return m.sign(); }
    Dyadic operator-() const { return {-m, e}; }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator*(const Dyadic& o) const;
    Dyadic abs() const { return {m.abs(), e}; }
    void normalize();  // strip trailing zero bits into the exponent

    static int cmp(const Dyadic& a, const Dyadic& b);
    bool operator<(const Dyadic& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const Dyadic& o) const { return cmp(*this, o) <= 0; }
    bool operator==(const Dyadic& o) const { return cmp(*this, o) == 0; }

    static Dyadic from_int(std::int64_t v) { return {Int(v), 0}; }
    std::string to_string() const;  // "m*2^e"
};

// Canonical rational: den > 0, gcd(|num|, den) = 1.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(Int num, Int den);
    static Rat from_int(std::int64_t v) { return Rat(Int(v), Int(1)); }
    static Rat from_dyadic(const Dyadic& d);

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat operator-() const;
    static int cmp(const Rat& a, const Rat& b);
    bool operator==(const Rat& o) const { return cmp(*this, o) == 0; }
    bool operator<=(const Rat& o) const { return cmp(*this, o) <= 0; }

    std::string to_string() const;

  private:
    Int num_, den_;
};

struct RationalInterval {
    Dyadic lo, hi;  // exact dyadic endpoints, lo <= hi
    bool contains(const Dyadic& x) const { return lo <= x && x <= hi; }
};

// Exact conversions from kernel types (finite values only).
Dyadic dyadic_from_apfloat(const ApFloat& x);
Dyadic dyadic_from_mag(const Mag& r);
RationalInterval interval_from_ball(const Ball& b);

// Exact dot product of point (radius-free) sequences.
Dyadic rational_dot_exact(std::span<const Dyadic> x, std::span<const Dyadic> y);

// Exact interval hull of sum [m_i +- r_i][m'_i +- r'_i].
RationalInterval interval_dot_hull(std::span<const Ball> x, std::span<const Ball> y);

// true iff the hull of the exact product set is contained in the output ball
bool dot_contained(std::span<const Ball> x, std::span<const Ball> y, const Ball& out);

// Exact matrix products (row-major, rows*cols entries).
std::vector<Dyadic> rational_matmul_exact(std::span<const Dyadic> a, std::span<const Dyadic> b,
                                          std::size_t m, std::size_t n, std::size_t k);
std::vector<RationalInterval> interval_matmul_hull(std::span<const Ball> a,
                                                   std::span<const Ball> b,
                                                   std::size_t m, std::size_t n, std::size_t k);

}  // namespace apball::oracle
