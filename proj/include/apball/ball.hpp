#pragma once
// ball.hpp - midpoint-radius balls [m +- r] and rectangular complex balls.

#include <optional>
#include <string>

#include "apball/apfloat.hpp"
#include "apball/mag.hpp"

namespace apball {

struct Ball {
    ApFloat mid;
    Mag rad;

    bool is_exact() const { return rad.is_zero(); }
    bool is_finite() const { return mid.is_finite() && rad.is_finite(); }
    bool is_zero_exact() const { return mid.is_zero() && rad.is_zero(); }

    static Ball zero() { return {}; }
    static Ball exact(ApFloat m) { return {std::move(m), Mag::zero()}; }
    static Ball from_i64(std::int64_t v) { return exact(ApFloat::from_i64(v)); }
    static Ball indeterminate() { return {ApFloat::nan(), Mag::inf()}; }

    Ball neg() const { return {mid.neg(), rad}; }

    std::string to_string() const;
    static std::optional<Ball> parse(std::string_view s);
};

// bitwise equality of representations (not set equality)
bool ball_identical(const Ball& a, const Ball& b);

struct ComplexBall {
    Ball re, im;

    static ComplexBall zero() { return {}; }
    ComplexBall neg() const { return {re.neg(), im.neg()}; }
    std::string to_string() const;
};

bool complex_ball_identical(const ComplexBall& a, const ComplexBall& b);

// ball containing a + b, midpoint rounded to p bits
Ball ball_add(const Ball& a, const Ball& b, std::int64_t p);
inline Ball ball_sub(const Ball& a, const Ball& b, std::int64_t p) {
    return ball_add(a, b.neg(), p);
}

// ball containing acc + x*y: exact midpoint product rounded to p bits, with
// the rounding error and the propagated radii |m_x| r_y + |m_y| r_x + r_x r_y
// folded into the radius. This is the slow per-term path used when the fused
// dot product bails out, and the baseline "addmul" loop for benchmarks.
Ball ball_fallback_addmul(const Ball& acc, const Ball& x, const Ball& y, std::int64_t p);

// ball containing x / k for a positive word k
Ball ball_div_u64(const Ball& x, std::uint64_t k, std::int64_t p);

}  // namespace apball
