// poly.cpp - polynomial basecase operations

#include "apball/poly.hpp"

#include <stdexcept>

#include "apball/dot.hpp"

namespace apball {

BallPoly poly_mullow_classical(const BallPoly& a, const BallPoly& b, std::size_t len,
                               std::int64_t p) {
    BallPoly out = BallPoly::zero(len);
    if (a.c.empty() || b.c.empty()) return out;
    for (std::size_t k = 0; k < len; k++) {
        // i ranges over [max(0, k+1-|b|), min(k, |a|-1)]
        std::size_t i0 = k + 1 > b.c.size() ? k + 1 - b.c.size() : 0;
        if (i0 >= a.c.size()) continue;
        std::size_t i1 = std::min(k, a.c.size() - 1);
        if (i1 < i0) continue;
        std::size_t n = i1 - i0 + 1;
        out.c[k] = dot_ball(nullptr, false, &a.c[i0], 1, &b.c[k - i0], -1, n, p);
    }
    return out;
}

BallPoly series_exp_basecase(const BallPoly& a, std::size_t len, std::int64_t p) {
    if (!a.c.empty() && !a.c[0].is_zero_exact())
        throw std::domain_error("series_exp_basecase: constant term must be exactly zero");
    BallPoly b = BallPoly::zero(len);
    if (len == 0) return b;
    b.c[0] = Ball::from_i64(1);
    if (len == 1) return b;
    // premultiplied derivative coefficients: ja[j] = j * a_j (exact)
    std::vector<Ball> ja(len);
    for (std::size_t j = 1; j < len && j < a.c.size(); j++) {
        ja[j].mid = apfloat_mul_u64_exact(a.c[j].mid, j);
        ja[j].rad = mag_mul_up(a.c[j].rad, Mag::from_u64_upper(j));
    }
    for (std::size_t k = 1; k < len; k++) {
        // sum_{j=1}^{k} (j a_j) b_{k-j}, then divide by k
        Ball s = dot_ball(nullptr, false, &ja[1], 1, &b.c[k - 1], -1, k, p);
        b.c[k] = ball_div_u64(s, k, p);
    }
    return b;
}

}  // namespace apball
