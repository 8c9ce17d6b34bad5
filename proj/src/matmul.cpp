// matmul.cpp - ball matrix multiplication

#include "apball/matmul.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace apball {

MatmulStats& matmul_stats() {
    thread_local MatmulStats stats;
    return stats;
}

BallMatrix ComplexBallMatrix::real_part() const {
    BallMatrix m(rows, cols);
    for (std::size_t i = 0; i < a.size(); i++) m.a[i] = a[i].re;
    return m;
}

BallMatrix ComplexBallMatrix::imag_part() const {
    BallMatrix m(rows, cols);
    for (std::size_t i = 0; i < a.size(); i++) m.a[i] = a[i].im;
    return m;
}

ComplexBallMatrix ComplexBallMatrix::from_parts(const BallMatrix& re, const BallMatrix& im) {
    assert(re.rows == im.rows && re.cols == im.cols);
    ComplexBallMatrix m(re.rows, re.cols);
    for (std::size_t i = 0; i < m.a.size(); i++) m.a[i] = {re.a[i], im.a[i]};
    return m;
}

std::size_t IntMatrix::height() const {
    std::size_t h = 0;
    for (const auto& v : a) h = std::max(h, v.bit_length());
    return h;
}

std::int64_t entry_precision(const BallMatrix& m) {
    std::int64_t p = 0;
    for (const auto& b : m.a)
        if (b.mid.is_finite() && !b.mid.is_zero()) p = std::max(p, b.mid.bit_width());
    return p;
}

namespace {

struct Window {
    std::int64_t top = INT64_MIN;
    std::int64_t bot = INT64_MAX;
    std::int64_t width() const { return top == INT64_MIN ? 0 : top - bot; }
    std::int64_t merged_width(std::int64_t t, std::int64_t b) const {
        if (top == INT64_MIN) return t - b;
        return std::max(top, t) - std::min(bot, b);
    }
    void merge(std::int64_t t, std::int64_t b) {
        top = std::max(top, t);
        bot = std::min(bot, b);
    }
};

// Greedy contiguous splitting of the inner index range: extend the current
// block while every row window of A and column window of B stays <= h bits.
// entry_a(i,k) / entry_b(j,k) yield the (top, bot) bit window of the entry or
// false for zero entries.
template <class EA, class EB>
std::vector<std::pair<std::size_t, std::size_t>> greedy_split(std::size_t n, std::size_t m_rows,
                                                              std::size_t k_cols, EA&& entry_a,
                                                              EB&& entry_b, std::int64_t h) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::vector<Window> wa(m_rows), wb(k_cols);
    std::size_t lo = 0;
    std::size_t k = 0;
    auto reset = [&] {
        std::fill(wa.begin(), wa.end(), Window{});
        std::fill(wb.begin(), wb.end(), Window{});
    };
    reset();
    while (lo < n) {
        bool ok = k == lo;  // the first index of a block is always taken
        if (!ok) {
            ok = true;
            std::int64_t t, b;
            for (std::size_t i = 0; i < m_rows && ok; i++)
                if (entry_a(i, k, t, b) && wa[i].merged_width(t, b) > h) ok = false;
            for (std::size_t j = 0; j < k_cols && ok; j++)
                if (entry_b(j, k, t, b) && wb[j].merged_width(t, b) > h) ok = false;
        }
        if (ok) {
            std::int64_t t, b;
            for (std::size_t i = 0; i < m_rows; i++)
                if (entry_a(i, k, t, b)) wa[i].merge(t, b);
            for (std::size_t j = 0; j < k_cols; j++)
                if (entry_b(j, k, t, b)) wb[j].merge(t, b);
            if (++k == n) {
                out.emplace_back(lo, k);
                lo = k;
            }
        } else {
            out.emplace_back(lo, k);
            lo = k;
            reset();
        }
    }
    return out;
}

inline bool ball_window(const Ball& e, std::int64_t& top, std::int64_t& bot) {
    if (e.mid.is_zero() || !e.mid.is_finite()) return false;
    top = e.mid.exponent();
    bot = e.mid.bottom_exponent();
    return true;
}

inline bool mag_window(const Mag& e, std::int64_t& top, std::int64_t& bot) {
    if (e.is_zero() || e.is_inf()) return false;
    top = e.exponent();
    bot = e.exponent() - std::int64_t(kRadPrec);
    return true;
}

}  // namespace

std::vector<BlockStep> plan_blocks(const BallMatrix& a, const BallMatrix& b, std::int64_t p) {
    if (a.cols != b.rows) throw std::invalid_argument("plan_blocks: dimension mismatch");
    const std::size_t n = a.cols;
    std::vector<BlockStep> steps;
    if (n == 0) return steps;
    const std::int64_t pm = std::min<std::int64_t>(
        p, std::max(entry_precision(a), entry_precision(b)));
    const std::int64_t h = (5 * pm) / 4 + 192;
    auto ea = [&](std::size_t i, std::size_t k, std::int64_t& t, std::int64_t& bo) {
        return ball_window(a.at(i, k), t, bo);
    };
    auto eb = [&](std::size_t j, std::size_t k, std::int64_t& t, std::int64_t& bo) {
        return ball_window(b.at(k, j), t, bo);
    };
    auto raw = greedy_split(n, a.rows, b.cols, ea, eb, h);
    for (std::size_t idx = 0; idx < raw.size(); idx++) {
        auto [lo, hi] = raw[idx];
        if (hi - lo < 30) {
            // short block: extend to min(30, remaining) and take the dot basecase
            hi = std::min(lo + 30, n);
            // swallow following blocks covered by the extension
            while (idx + 1 < raw.size() && raw[idx + 1].second <= hi) idx++;
            if (idx + 1 < raw.size() && raw[idx + 1].first < hi) raw[idx + 1].first = hi;
            steps.push_back({lo, hi, true});
        } else {
            steps.push_back({lo, hi, false});
        }
    }
    return steps;
}

IntMatrix scale_block_rows(const BallMatrix& a, std::size_t lo, std::size_t hi,
                           std::vector<std::int64_t>& scale) {
    const std::size_t w = hi - lo;
    IntMatrix m(a.rows, w);
    scale.assign(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; i++) {
        std::int64_t bot = INT64_MAX;
        for (std::size_t k = lo; k < hi; k++) {
            const ApFloat& e = a.at(i, k).mid;
            if (!e.is_zero()) bot = std::min(bot, e.bottom_exponent());
        }
        if (bot == INT64_MAX) continue;  // zero row: scale 0, zero entries
        scale[i] = -bot;
        for (std::size_t k = lo; k < hi; k++) {
            const ApFloat& e = a.at(i, k).mid;
            if (!e.is_zero()) m.at(i, k - lo) = bigint_from_apfloat_scaled(e, scale[i]);
        }
    }
    return m;
}

IntMatrix scale_block_cols(const BallMatrix& b, std::size_t lo, std::size_t hi,
                           std::vector<std::int64_t>& scale) {
    const std::size_t w = hi - lo;
    IntMatrix m(w, b.cols);
    scale.assign(b.cols, 0);
    for (std::size_t j = 0; j < b.cols; j++) {
        std::int64_t bot = INT64_MAX;
        for (std::size_t k = lo; k < hi; k++) {
            const ApFloat& e = b.at(k, j).mid;
            if (!e.is_zero()) bot = std::min(bot, e.bottom_exponent());
        }
        if (bot == INT64_MAX) continue;
        scale[j] = -bot;
        for (std::size_t k = lo; k < hi; k++) {
            const ApFloat& e = b.at(k, j).mid;
            if (!e.is_zero()) m.at(k - lo, j) = bigint_from_apfloat_scaled(e, scale[j]);
        }
    }
    return m;
}

// --------------------------------------------------------- integer product

namespace {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return std::uint64_t((unsigned __int128)a * b % p);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        r++;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r && witness; i++) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

// fixed list of primes just below 2^62, largest first
const std::vector<std::uint64_t>& modular_primes() {
    static const std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> v;
        std::uint64_t c = (std::uint64_t(1) << 62) - 1;
        while (v.size() < 64) {
            if (is_prime_u64(c)) v.push_back(c);
            c -= 2;
        }
        return v;
    }();
    return primes;
}

IntMatrix int_matmul_classical(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows, b.cols);
    const std::size_t n = a.cols;
    for (std::size_t i = 0; i < a.rows; i++)
        for (std::size_t j = 0; j < b.cols; j++) {
            BigInt s;
            for (std::size_t l = 0; l < n; l++) {
                const BigInt& x = a.at(i, l);
                const BigInt& y = b.at(l, j);
                if (!x.is_zero() && !y.is_zero()) s = s + x * y;
            }
            c.at(i, j) = std::move(s);
        }
    return c;
}

IntMatrix int_matmul_multimodular(const IntMatrix& a, const IntMatrix& b) {
    matmul_stats().multimod_products++;
    const std::size_t m = a.rows, n = a.cols, k = b.cols;
    const std::size_t bound_bits = a.height() + b.height() + std::bit_width(n) + 2;
    const auto& primes = modular_primes();
    std::size_t np = (bound_bits + 60) / 61;
    np = std::max<std::size_t>(np, 1);
    if (np > primes.size())
        throw std::overflow_error("int_matmul: height exceeds the fixed prime table");
    std::vector<std::vector<std::uint64_t>> residues(np);
    std::vector<std::uint64_t> ra(m * n), rb(n * k);
    for (std::size_t pi = 0; pi < np; pi++) {
        const std::uint64_t p = primes[pi];
        for (std::size_t idx = 0; idx < m * n; idx++) {
            std::uint64_t r = a.a[idx].mag_mod_u64(p);
            ra[idx] = (a.a[idx].negative() && r) ? p - r : r;
        }
        for (std::size_t idx = 0; idx < n * k; idx++) {
            std::uint64_t r = b.a[idx].mag_mod_u64(p);
            rb[idx] = (b.a[idx].negative() && r) ? p - r : r;
        }
        auto& rc = residues[pi];
        rc.assign(m * k, 0);
        for (std::size_t i = 0; i < m; i++) {
            for (std::size_t j = 0; j < k; j++) {
                unsigned __int128 acc = 0;
                unsigned cnt = 0;
                const std::uint64_t* ap = &ra[i * n];
                for (std::size_t l = 0; l < n; l++) {
                    acc += (unsigned __int128)ap[l] * rb[l * k + j];
                    if (++cnt == 15) {
                        acc %= p;
                        cnt = 0;
                    }
                }
                rc[i * k + j] = std::uint64_t(acc % p);
            }
        }
    }
    // CRT reconstruction into the symmetric range
    std::vector<std::uint64_t> pref_inv(np, 0);
    for (std::size_t pi = 1; pi < np; pi++) {
        const std::uint64_t p = primes[pi];
        std::uint64_t pm = 1;
        for (std::size_t l = 0; l < pi; l++) pm = mulmod_u64(pm, primes[l] % p, p);
        pref_inv[pi] = powmod_u64(pm, p - 2, p);
    }
    std::vector<BigInt> prefix(np + 1);
    prefix[0] = BigInt(1);
    for (std::size_t pi = 0; pi < np; pi++)
        prefix[pi + 1] = prefix[pi].mul_u64(primes[pi]);
    const BigInt& full = prefix[np];
    IntMatrix c(m, k);
    for (std::size_t idx = 0; idx < m * k; idx++) {
        std::uint64_t r0 = residues[0][idx];
        BigInt x = BigInt::from_limbs({&r0, 1}, false);
        for (std::size_t pi = 1; pi < np; pi++) {
            const std::uint64_t p = primes[pi];
            std::uint64_t xm = x.mag_mod_u64(p);
            std::uint64_t diff = residues[pi][idx] >= xm
                                     ? residues[pi][idx] - xm
                                     : residues[pi][idx] + p - xm;
            std::uint64_t t = mulmod_u64(diff, pref_inv[pi], p);
            if (t) x = x + prefix[pi].mul_u64(t);
        }
        // x in [0, P); map to (-P/2, P/2]
        if (BigInt::cmp(x << 1, full) > 0) x = x - full;
        c.a[idx] = std::move(x);
    }
    return c;
}

}  // namespace

IntMatrix int_matmul(const IntMatrix& a, const IntMatrix& b, IntMulAlgo algo) {
    if (a.cols != b.rows) throw std::invalid_argument("int_matmul: dimension mismatch");
    if (algo == IntMulAlgo::Auto) {
        const std::size_t hsum = a.height() + b.height();
        algo = (a.cols >= 16 && hsum >= 96 && a.rows * b.cols >= 64)
                   ? IntMulAlgo::Multimodular
                   : IntMulAlgo::Classical;
    }
    if (algo == IntMulAlgo::Multimodular && a.cols > 0) return int_matmul_multimodular(a, b);
    return int_matmul_classical(a, b);
}

// ---------------------------------------------------------- radius product

MagMatrix radius_matmul_upper(const MagMatrix& p, const MagMatrix& q) {
    if (p.cols != q.rows) throw std::invalid_argument("radius_matmul_upper: dimension mismatch");
    const std::size_t m = p.rows, n = p.cols, k = q.cols;
    MagMatrix c(m, k);
    bool any_inf = false;
    for (const auto& e : p.a) any_inf |= e.is_inf();
    for (const auto& e : q.a) any_inf |= e.is_inf();
    if (any_inf || n == 0) {
        // rare path: plain Mag arithmetic entrywise
        for (std::size_t i = 0; i < m; i++)
            for (std::size_t j = 0; j < k; j++) {
                Mag acc;
                for (std::size_t l = 0; l < n; l++)
                    acc = mag_add_up(acc, mag_mul_up(p.at(i, l), q.at(l, j)));
                c.at(i, j) = acc;
            }
        return c;
    }
    auto ea = [&](std::size_t i, std::size_t l, std::int64_t& t, std::int64_t& bo) {
        return mag_window(p.at(i, l), t, bo);
    };
    auto eb = [&](std::size_t j, std::size_t l, std::int64_t& t, std::int64_t& bo) {
        return mag_window(q.at(l, j), t, bo);
    };
    auto blocks = greedy_split(n, m, k, ea, eb, 900);
    // covers binary64 summation error for inner chunks up to 1024 terms
    static const Mag infl = Mag::from_parts((std::uint64_t(1) << 29) + 1, 1);
    for (auto [lo, hi] : blocks) {
        const std::size_t w = hi - lo;
        std::vector<std::int64_t> ei(m, 0), fj(k, 0);
        for (std::size_t i = 0; i < m; i++) {
            Window win;
            std::int64_t t, bo;
            for (std::size_t l = lo; l < hi; l++)
                if (mag_window(p.at(i, l), t, bo)) win.merge(t, bo);
            if (win.top != INT64_MIN) ei[i] = -((win.top + win.bot) / 2);
        }
        for (std::size_t j = 0; j < k; j++) {
            Window win;
            std::int64_t t, bo;
            for (std::size_t l = lo; l < hi; l++)
                if (mag_window(q.at(l, j), t, bo)) win.merge(t, bo);
            if (win.top != INT64_MIN) fj[j] = -((win.top + win.bot) / 2);
        }
        std::vector<double> da(m * w), db(w * k);
        for (std::size_t i = 0; i < m; i++)
            for (std::size_t l = 0; l < w; l++) {
                const Mag& e = p.at(i, lo + l);
                da[i * w + l] = e.is_zero() ? 0.0 : mag_ldexp(e, ei[i]);
            }
        for (std::size_t l = 0; l < w; l++)
            for (std::size_t j = 0; j < k; j++) {
                const Mag& e = q.at(lo + l, j);
                db[l * k + j] = e.is_zero() ? 0.0 : mag_ldexp(e, fj[j]);
            }
        for (std::size_t i = 0; i < m; i++)
            for (std::size_t j = 0; j < k; j++) {
                Mag entry;
                for (std::size_t c0 = 0; c0 < w; c0 += 1024) {
                    const std::size_t c1 = std::min(w, c0 + 1024);
                    double s = 0.0;
                    for (std::size_t l = c0; l < c1; l++) s += da[i * w + l] * db[l * k + j];
                    if (s != 0.0)
                        entry = mag_add_up(
                            entry, mag_mul_up(Mag::from_double_upper(s, -ei[i] - fj[j]), infl));
                }
                if (!entry.is_zero()) c.at(i, j) = mag_add_up(c.at(i, j), entry);
            }
    }
    return c;
}

// ------------------------------------------------------------- ball paths

BallMatrix classical_matmul_ball(const BallMatrix& a, const BallMatrix& b, std::int64_t p) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    matmul_stats().classical_calls++;
    BallMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; i++)
        for (std::size_t j = 0; j < b.cols; j++)
            c.at(i, j) = dot_ball(nullptr, false, &a.at(i, 0), 1, &b.at(0, j),
                                  std::ptrdiff_t(b.cols), a.cols, p);
    return c;
}

BallMatrix block_matmul_ball(const BallMatrix& a, const BallMatrix& b, std::int64_t p) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    for (const auto& e : a.a)
        if (!e.mid.is_finite() || e.rad.is_inf()) return classical_matmul_ball(a, b, p);
    for (const auto& e : b.a)
        if (!e.mid.is_finite() || e.rad.is_inf()) return classical_matmul_ball(a, b, p);
    matmul_stats().block_calls++;
    auto steps = plan_blocks(a, b, p);
    matmul_stats().last_block_count = steps.size();
    BallMatrix c(a.rows, b.cols);
    for (const BlockStep& st : steps) {
        const std::size_t w = st.hi - st.lo;
        if (st.basecase) {
            for (std::size_t i = 0; i < a.rows; i++)
                for (std::size_t j = 0; j < b.cols; j++)
                    c.at(i, j) = dot_ball(&c.at(i, j), false, &a.at(i, st.lo), 1,
                                          &b.at(st.lo, j), std::ptrdiff_t(b.cols), w, p);
            continue;
        }
        std::vector<std::int64_t> ei, fj;
        IntMatrix ia = scale_block_rows(a, st.lo, st.hi, ei);
        IntMatrix ib = scale_block_cols(b, st.lo, st.hi, fj);
        // roughly square chunks: outer dimensions at most 2w
        const std::size_t chunk = std::max<std::size_t>(1, 2 * w);
        for (std::size_t r0 = 0; r0 < a.rows; r0 += chunk) {
            const std::size_t r1 = std::min(a.rows, r0 + chunk);
            IntMatrix ta(r1 - r0, w);
            for (std::size_t i = r0; i < r1; i++)
                for (std::size_t l = 0; l < w; l++) ta.at(i - r0, l) = ia.at(i, l);
            for (std::size_t c0 = 0; c0 < b.cols; c0 += chunk) {
                const std::size_t c1 = std::min(b.cols, c0 + chunk);
                IntMatrix tb(w, c1 - c0);
                for (std::size_t l = 0; l < w; l++)
                    for (std::size_t j = c0; j < c1; j++) tb.at(l, j - c0) = ib.at(l, j);
                IntMatrix t = int_matmul(ta, tb, IntMulAlgo::Auto);
                for (std::size_t i = r0; i < r1; i++)
                    for (std::size_t j = c0; j < c1; j++) {
                        const BigInt& v = t.at(i - r0, j - c0);
                        if (v.is_zero()) continue;
                        ApFloat val = apfloat_from_bigint_scaled(v, -ei[i] - fj[j]);
                        c.at(i, j) = ball_add(c.at(i, j), Ball::exact(std::move(val)), p);
                    }
            }
        }
    }
    // R_C += |A| R_B + R_A (|B| + R_B)
    MagMatrix abs_a(a.rows, a.cols), rad_a(a.rows, a.cols);
    for (std::size_t idx = 0; idx < a.a.size(); idx++) {
        if (!a.a[idx].mid.is_zero()) abs_a.a[idx] = mag_upper_from_apfloat(a.a[idx].mid);
        rad_a.a[idx] = a.a[idx].rad;
    }
    MagMatrix rad_b(b.rows, b.cols), absrad_b(b.rows, b.cols);
    for (std::size_t idx = 0; idx < b.a.size(); idx++) {
        rad_b.a[idx] = b.a[idx].rad;
        Mag ab = b.a[idx].mid.is_zero() ? Mag::zero() : mag_upper_from_apfloat(b.a[idx].mid);
        absrad_b.a[idx] = mag_add_up(ab, b.a[idx].rad);
    }
    MagMatrix r1 = radius_matmul_upper(abs_a, rad_b);
    MagMatrix r2 = radius_matmul_upper(rad_a, absrad_b);
    for (std::size_t idx = 0; idx < c.a.size(); idx++)
        c.a[idx].rad = mag_add_up(c.a[idx].rad, mag_add_up(r1.a[idx], r2.a[idx]));
    return c;
}

std::size_t matmul_dispatch_cutoff(std::int64_t p) {
    if (p <= 64) return 60;
    if (p <= 128) return 56;
    if (p <= 256) return 52;
    if (p <= 512) return 48;
    if (p <= 1024) return 44;
    return 40;
}

BallMatrix matmul_auto(const BallMatrix& a, const BallMatrix& b, std::int64_t p) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    const std::size_t mind = std::min({a.rows, a.cols, b.cols});
    if (mind <= matmul_dispatch_cutoff(p)) return classical_matmul_ball(a, b, p);
    return block_matmul_ball(a, b, p);
}

ComplexBallMatrix complex_matmul_ball(const ComplexBallMatrix& a, const ComplexBallMatrix& b,
                                      std::int64_t p) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    BallMatrix ar = a.real_part(), ai = a.imag_part();
    BallMatrix br = b.real_part(), bi = b.imag_part();
    BallMatrix ac = matmul_auto(ar, br, p);
    BallMatrix bd = matmul_auto(ai, bi, p);
    BallMatrix ad = matmul_auto(ar, bi, p);
    BallMatrix bc = matmul_auto(ai, br, p);
    BallMatrix re(a.rows, b.cols), im(a.rows, b.cols);
    for (std::size_t idx = 0; idx < re.a.size(); idx++) {
        re.a[idx] = ball_sub(ac.a[idx], bd.a[idx], p);
        im.a[idx] = ball_add(ad.a[idx], bc.a[idx], p);
    }
    return ComplexBallMatrix::from_parts(re, im);
}

// ------------------------------------------------------------------- io

void write_ball_matrix(std::ostream& os, const BallMatrix& m) {
    os << m.rows << ' ' << m.cols << '\n';
    for (const auto& b : m.a) os << b.to_string() << '\n';
}

std::optional<BallMatrix> read_ball_matrix(std::istream& is) {
    std::size_t r = 0, c = 0;
    if (!(is >> r >> c)) return std::nullopt;
    std::string line;
    std::getline(is, line);  // trailing newline
    BallMatrix m(r, c);
    for (std::size_t i = 0; i < r * c; i++) {
        if (!std::getline(is, line)) return std::nullopt;
        auto b = Ball::parse(line);
        if (!b) return std::nullopt;
        m.a[i] = std::move(*b);
    }
    return m;
}

}  // namespace apball
