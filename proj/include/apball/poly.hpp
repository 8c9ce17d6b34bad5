#pragma once
// poly.hpp - dot-product-powered polynomial basecase operations.

#include <vector>

#include "apball/ball.hpp"

namespace apball {

struct BallPoly {
    std::vector<Ball> c;  // c[k] is the coefficient of x^k

    std::size_t length() const { return c.size(); }
    static BallPoly zero(std::size_t len) {
        BallPoly p;
        p.c.resize(len);
        return p;
    }
};

// classical truncated product: coefficient k of a*b for k < len, each one a
// fused dot product over (a_i, b_{k-i}) using a negative stride on b
BallPoly poly_mullow_classical(const BallPoly& a, const BallPoly& b, std::size_t len,
                               std::int64_t p);

// power series exp via b_0 = 1, b_k = (sum_{j=1}^{k} (j a_j) b_{k-j}) / k;
// the constant term of a must be an exact zero (std::domain_error otherwise)
BallPoly series_exp_basecase(const BallPoly& a, std::size_t len, std::int64_t p);

}  // namespace apball
