#pragma once
// dot.hpp - fused arbitrary-precision dot product over balls.
//
// A dot product is evaluated in two passes: a setup pass scans all terms,
// rejects unlikely cases (specials, huge exponents) and sizes a fixed-point
// two's complement accumulator; an evaluation pass then adds the limbs of
// each midpoint product that overlap the accumulator window, counting every
// inexactness as one ulp of the bottom accumulator limb. Radius terms are
// summed separately in one scaled 64-bit word. The result midpoint is
// rounded once at the end, with the rounding error, the ulp count and the
// radius sum combined into the output radius.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "apball/ball.hpp"

namespace apball {

enum class DotStatus : std::uint8_t { Proceed, Fallback, ZeroResult };

struct DotPlan {
    std::int64_t e_max = INT64_MIN;  // upper bound of term exponents
    std::int64_t e_min = INT64_MAX;  // lower bound of term content (tracked for p > 128)
    std::int64_t e_rad = INT64_MIN;  // upper bound of radius-term exponents
    std::uint64_t n_nonzero = 0;
    std::int64_t p_eff = 2;          // working precision after reductions
    unsigned extend = 0;             // leading carry bits, bc(n_nonzero) + 1
    unsigned padding = 0;            // trailing guard bits, 4 + bc(N)
    std::size_t n_s = 0;             // accumulator limbs
    std::int64_t e_s = 0;            // accumulator top exponent
    DotStatus status = DotStatus::ZeroResult;
};

struct DotAccumulator {
    std::vector<Limb> s;        // n_s limbs, two's complement, implied exponent e_s
    std::uint64_t err = 0;      // ulps of s[0]
    std::uint64_t srad = 0;     // radius sum scaled by 2^(e_rad - 30)
    std::vector<Limb> scratch;  // per-call term temporaries
};

struct DotTuning {
    bool inline_fastpath = true;          // unrolled path for n,n' <= 2, n_s <= 3
    std::size_t threeprod_cutoff_limbs = 128;  // complex 3-multiplication rewrite cutoff
    bool force_threeprod = false;         // tests: apply the rewrite whenever it is exact
    bool disable_precision_reduction = false;  // tests: skip the setup p reductions
};
DotTuning& dot_tuning();

// number of complex terms evaluated through the three-multiplication rewrite
std::uint64_t& dot_threeprod_hits();

// scan terms, pick the working precision and size the accumulator
DotPlan dot_setup(std::span<const std::pair<Ball, Ball>> terms, std::int64_t p);

void dot_init(const DotPlan& plan, DotAccumulator& acc);

// add (-1)^negate * m * m' into the accumulator window
void dot_accumulate_term(const DotPlan& plan, DotAccumulator& acc, const ApFloat& m,
                         const ApFloat& mp, bool negate = false);

// srad += upper bound of a*b scaled by 2^(30 + e_rad - e); zero factors skipped
void dot_accumulate_radius(DotAccumulator& acc, const Mag& a, const Mag& b,
                           std::int64_t e_rad);

Ball dot_finalize(const DotPlan& plan, DotAccumulator& acc, std::int64_t p);

// ball containing initial + (-1)^subtract * sum x_i y_i (strides in elements,
// may be negative; initial may be null)
Ball dot_ball(const Ball* initial, bool subtract, const Ball* x, std::ptrdiff_t xstep,
              const Ball* y, std::ptrdiff_t ystep, std::size_t n, std::int64_t p);

// midpoint pipeline only: no radius scan, no error tracking
ApFloat dot_approx(const Ball* initial, bool subtract, const Ball* x, std::ptrdiff_t xstep,
                   const Ball* y, std::ptrdiff_t ystep, std::size_t n, std::int64_t p);

struct ApComplex {
    ApFloat re, im;
};

// complex dot products: re = sum(a c - b d), im = sum(a d + b c), each part
// one fused length-2N real dot product
ComplexBall dot_complex_ball(const ComplexBall* x, std::ptrdiff_t xstep, const ComplexBall* y,
                             std::ptrdiff_t ystep, std::size_t n, std::int64_t p);
ApComplex dot_complex_approx(const ComplexBall* x, std::ptrdiff_t xstep, const ComplexBall* y,
                             std::ptrdiff_t ystep, std::size_t n, std::int64_t p);

}  // namespace apball
