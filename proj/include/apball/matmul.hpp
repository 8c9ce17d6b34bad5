#pragma once
// matmul.hpp - ball matrix multiplication: classical (iterated dot
// products), adaptive scaled-integer blocks, radius products via scaled
// binary64 upper bounds, complex wrapper and automatic dispatch.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "apball/ball.hpp"
#include "apball/bigint.hpp"
#include "apball/dot.hpp"

namespace apball {

struct BallMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Ball> a;

    BallMatrix() = default;
    BallMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Ball& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Ball& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct ComplexBallMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<ComplexBall> a;

    ComplexBallMatrix() = default;
    ComplexBallMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    ComplexBall& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const ComplexBall& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    BallMatrix real_part() const;
    BallMatrix imag_part() const;
    static ComplexBallMatrix from_parts(const BallMatrix& re, const BallMatrix& im);
};

struct MagMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Mag> a;

    MagMatrix() = default;
    MagMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Mag& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Mag& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<BigInt> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    BigInt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const BigInt& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    std::size_t height() const;  // max entry bit length
};

// one greedy block: contiguous inner indices [lo, hi)
struct BlockStep {
    std::size_t lo = 0, hi = 0;
    bool basecase = false;
};

// minimum precision that represents every midpoint exactly (0 for all-zero)
std::int64_t entry_precision(const BallMatrix& m);

// greedy splitting of the inner index range under the block height bound
std::vector<BlockStep> plan_blocks(const BallMatrix& a, const BallMatrix& b, std::int64_t p);

// scale columns [lo,hi) of a / rows [lo,hi) of b to integers of minimal
// height; scale[i] is the power of two applied to row i (column j)
IntMatrix scale_block_rows(const BallMatrix& a, std::size_t lo, std::size_t hi,
                           std::vector<std::int64_t>& scale);
IntMatrix scale_block_cols(const BallMatrix& b, std::size_t lo, std::size_t hi,
                           std::vector<std::int64_t>& scale);

enum class IntMulAlgo { Classical, Multimodular, Auto };
IntMatrix int_matmul(const IntMatrix& a, const IntMatrix& b,
                     IntMulAlgo algo = IntMulAlgo::Auto);

// entrywise upper bound of the product of nonnegative matrices
MagMatrix radius_matmul_upper(const MagMatrix& p, const MagMatrix& q);

BallMatrix classical_matmul_ball(const BallMatrix& a, const BallMatrix& b, std::int64_t p);
BallMatrix block_matmul_ball(const BallMatrix& a, const BallMatrix& b, std::int64_t p);
BallMatrix matmul_auto(const BallMatrix& a, const BallMatrix& b, std::int64_t p);
ComplexBallMatrix complex_matmul_ball(const ComplexBallMatrix& a, const ComplexBallMatrix& b,
                                      std::int64_t p);

// classical dispatch cutoff for the auto path
std::size_t matmul_dispatch_cutoff(std::int64_t p);

struct MatmulStats {
    std::uint64_t classical_calls = 0;
    std::uint64_t block_calls = 0;
    std::uint64_t multimod_products = 0;
    std::size_t last_block_count = 0;
    void reset() { *this = MatmulStats{}; }
};
MatmulStats& matmul_stats();

// line-oriented text format: "rows cols" header, one ball per line
void write_ball_matrix(std::ostream& os, const BallMatrix& m);
std::optional<BallMatrix> read_ball_matrix(std::istream& is);

}  // namespace apball
