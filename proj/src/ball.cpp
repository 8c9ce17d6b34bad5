// ball.cpp - ball arithmetic helpers

#include "apball/ball.hpp"

namespace apball {

bool ball_identical(const Ball& a, const Ball& b) {
    return apfloat_identical(a.mid, b.mid) && a.rad == b.rad;
}

bool complex_ball_identical(const ComplexBall& a, const ComplexBall& b) {
    return ball_identical(a.re, b.re) && ball_identical(a.im, b.im);
}

Ball ball_add(const Ball& a, const Ball& b, std::int64_t p) {
    auto [mid, err] = apfloat_add_round(a.mid, b.mid, p);
    if (mid.is_nan()) return Ball::indeterminate();
    return {std::move(mid), mag_add_up(mag_add_up(a.rad, b.rad), err)};
}

Ball ball_fallback_addmul(const Ball& acc, const Ball& x, const Ball& y, std::int64_t p) {
    if (acc.mid.is_nan() || x.mid.is_nan() || y.mid.is_nan()) return Ball::indeterminate();
    ApFloat prod = apfloat_mul_exact(x.mid, y.mid);
    if (prod.is_nan()) return Ball::indeterminate();
    Mag rad = acc.rad;
    // propagated radii
    if (!y.rad.is_zero() && !x.mid.is_zero())
        rad = mag_add_up(rad, mag_mul_up(mag_upper_from_apfloat(x.mid), y.rad));
    if (!x.rad.is_zero() && !y.mid.is_zero())
        rad = mag_add_up(rad, mag_mul_up(mag_upper_from_apfloat(y.mid), x.rad));
    if (!x.rad.is_zero() && !y.rad.is_zero()) rad = mag_add_up(rad, mag_mul_up(x.rad, y.rad));
    auto [pr, perr] = apfloat_round(prod, p);
    auto [mid, aerr] = apfloat_add_round(acc.mid, pr, p);
    if (mid.is_nan()) return Ball::indeterminate();
    return {std::move(mid), mag_add_up(rad, mag_add_up(perr, aerr))};
}

Ball ball_div_u64(const Ball& x, std::uint64_t k, std::int64_t p) {
    if (x.mid.is_nan()) return Ball::indeterminate();
    auto [mid, err] = apfloat_div_u64(x.mid, k, p);
    Mag rad = mag_add_up(err, mag_mul_up(x.rad, mag_inv_u64_upper(k)));
    return {std::move(mid), rad};
}

std::string Ball::to_string() const {
    return mid.to_string() + " +- " + rad.to_string();
}

std::optional<Ball> Ball::parse(std::string_view s) {
    auto sep = s.find(" +- ");
    if (sep == std::string_view::npos) return std::nullopt;
    auto m = ApFloat::parse(s.substr(0, sep));
    auto r = Mag::parse(s.substr(sep + 4));
    if (!m || !r) return std::nullopt;
    return Ball{std::move(*m), *r};
}

std::string ComplexBall::to_string() const {
    return re.to_string() + " | " + im.to_string();
}

}  // namespace apball
