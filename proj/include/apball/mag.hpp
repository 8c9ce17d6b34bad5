#pragma once
// mag.hpp - unsigned magnitude bounds: (b / 2^30) * 2^f with
// 2^29 <= b < 2^30, plus 0 and +inf. Every operation rounds up, so a Mag
// is always a valid upper bound for the quantity it tracks.

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace apball {

class ApFloat;

inline constexpr unsigned kRadPrec = 30;
inline constexpr std::uint64_t kMagOne = std::uint64_t(1) << kRadPrec;  // b == 2^30, weak top

class Mag {
  public:
    enum class Kind : std::uint8_t { Zero, Finite, Inf };

    Mag() = default;

    static Mag zero() { return Mag(); }
    static Mag inf() {
        Mag m;
        m.kind_ = Kind::Inf;
        return m;
    }
    // canonicalizes weakly normalized input (b == 2^30 becomes b = 2^29, f+1)
    static Mag from_parts(std::uint64_t b, std::int64_t f);
    // smallest canonical Mag >= v * 2^exp2
    static Mag from_u64_upper(std::uint64_t v, std::int64_t exp2 = 0);
    // upper bound of a little-endian limb array scaled by 2^exp2
    static Mag from_limbs_upper(std::span<const std::uint64_t> limbs, std::int64_t exp2);
    // upper bound of a nonnegative double scaled by 2^exp2
    static Mag from_double_upper(double v, std::int64_t exp2 = 0);

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_finite() const { return kind_ != Kind::Inf; }
    bool is_inf() const { return kind_ == Kind::Inf; }
    std::uint64_t mantissa() const { return b_; }
    std::int64_t exponent() const { return f_; }

    Mag mul_2exp(std::int64_t k) const;  // saturates: overflow -> inf, underflow clamps

    std::string to_string() const;
    static std::optional<Mag> parse(std::string_view s);

    friend int mag_cmp(const Mag& a, const Mag& b);
    bool operator==(const Mag& o) const { return mag_cmp(*this, o) == 0; }
    bool operator<=(const Mag& o) const { return mag_cmp(*this, o) <= 0; }
    bool operator<(const Mag& o) const { return mag_cmp(*this, o) < 0; }

  private:
    Kind kind_ = Kind::Zero;
    std::uint64_t b_ = 0;
    std::int64_t f_ = 0;
};

// upper bounds on a+b and a*b
Mag mag_add_up(const Mag& a, const Mag& b);
Mag mag_mul_up(const Mag& a, const Mag& b);

// Mag >= |x|: top 30 bits of the top limb, incremented (finite x only)
Mag mag_upper_from_apfloat(const ApFloat& x);

// Mag >= 1/k for a positive word k
Mag mag_inv_u64_upper(std::uint64_t k);

// exact double value of m * 2^shift; requires the scaled exponent to lie in
// the binary64 normal range (callers arrange this)
double mag_ldexp(const Mag& m, std::int64_t shift);

}  // namespace apball
