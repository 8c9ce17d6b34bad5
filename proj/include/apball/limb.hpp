#pragma once
// limb.hpp - word-array (limb) arithmetic primitives.
//
// Limbs are 64-bit unsigned words in little-endian order: a slice
// {p, n} represents sum_k p[k] * 2^(64k). Higher layers impose
// normalization; nothing here does.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <memory>
#include <span>

namespace apball {

using Limb = std::uint64_t;
inline constexpr unsigned kLimbBits = 64;

// 64x64 -> 128 multiply
inline Limb umul_hilo(Limb a, Limb b, Limb* hi) {
    unsigned __int128 r = (unsigned __int128)a * b;
    *hi = (Limb)(r >> 64);
    return (Limb)r;
}

inline void limbs_zero(Limb* p, std::size_t n) {
    std::memset(p, 0, n * sizeof(Limb));
}

// rp[0..n) = ap[0..n) + bp[0..n), returns carry
inline Limb limbs_add_n(Limb* rp, const Limb* ap, const Limb* bp, std::size_t n) {
    unsigned __int128 c = 0;
    for (std::size_t i = 0; i < n; i++) {
        c += ap[i];
        c += bp[i];
        rp[i] = (Limb)c;
        c >>= 64;
    }
    return (Limb)c;
}

// rp[0..n) = ap[0..n) - bp[0..n), returns borrow
inline Limb limbs_sub_n(Limb* rp, const Limb* ap, const Limb* bp, std::size_t n) {
    Limb borrow = 0;
    for (std::size_t i = 0; i < n; i++) {
        Limb a = ap[i], b = bp[i];
        Limb d = a - b - borrow;
        borrow = (a < b) || (a == b && borrow);
        rp[i] = d;
    }
    return borrow;
}

// rp[0..n) = ap[0..n) + b, returns carry
inline Limb limbs_add_1(Limb* rp, const Limb* ap, std::size_t n, Limb b) {
    Limb carry = b;
    for (std::size_t i = 0; i < n; i++) {
        Limb s = ap[i] + carry;
        carry = s < carry;
        rp[i] = s;
        if (!carry && rp == ap) return 0;
    }
    return carry;
}

// rp[0..n) = ap[0..n) - b, returns borrow
inline Limb limbs_sub_1(Limb* rp, const Limb* ap, std::size_t n, Limb b) {
    Limb borrow = b;
    for (std::size_t i = 0; i < n; i++) {
        Limb a = ap[i];
        rp[i] = a - borrow;
        borrow = a < borrow;
        if (!borrow && rp == ap) return 0;
    }
    return borrow;
}

// rp[0..n) += ap[0..n) * b, returns carry limb
inline Limb limbs_addmul_1(Limb* rp, const Limb* ap, std::size_t n, Limb b) {
    Limb carry = 0;
    for (std::size_t i = 0; i < n; i++) {
        unsigned __int128 t = (unsigned __int128)ap[i] * b + carry + rp[i];
        rp[i] = (Limb)t;
        carry = (Limb)(t >> 64);
    }
    return carry;
}

// rp[0..n) = ap[0..n) * b, returns carry limb
inline Limb limbs_mul_1(Limb* rp, const Limb* ap, std::size_t n, Limb b) {
    Limb carry = 0;
    for (std::size_t i = 0; i < n; i++) {
        unsigned __int128 t = (unsigned __int128)ap[i] * b + carry;
        rp[i] = (Limb)t;
        carry = (Limb)(t >> 64);
    }
    return carry;
}

// rp[0..n) = ap[0..n) << cnt (0 < cnt < 64), returns shifted-out top bits
inline Limb limbs_shl(Limb* rp, const Limb* ap, std::size_t n, unsigned cnt) {
    assert(n > 0 && cnt > 0 && cnt < kLimbBits);
    unsigned rc = kLimbBits - cnt;
    Limb out = ap[n - 1] >> rc;
    for (std::size_t i = n - 1; i > 0; i--)
        rp[i] = (ap[i] << cnt) | (ap[i - 1] >> rc);
    rp[0] = ap[0] << cnt;
    return out;
}

// rp[0..n) = ap[0..n) >> cnt (0 < cnt < 64), returns shifted-out low bits (in the top of the word)
inline Limb limbs_shr(Limb* rp, const Limb* ap, std::size_t n, unsigned cnt) {
    assert(n > 0 && cnt > 0 && cnt < kLimbBits);
    unsigned rc = kLimbBits - cnt;
    Limb out = ap[0] << rc;
    for (std::size_t i = 0; i + 1 < n; i++)
        rp[i] = (ap[i] >> cnt) | (ap[i + 1] << rc);
    rp[n - 1] = ap[n - 1] >> cnt;
    return out;
}

inline int limbs_cmp(const Limb* ap, const Limb* bp, std::size_t n) {
    for (std::size_t i = n; i-- > 0;)
        if (ap[i] != bp[i]) return ap[i] > bp[i] ? 1 : -1;
    return 0;
}

// significant length after stripping high zero limbs
inline std::size_t limbs_normalize(const Limb* ap, std::size_t n) {
    while (n > 0 && ap[n - 1] == 0) n--;
    return n;
}

// out[0..a.len+b.len) = a * b, exact schoolbook product.
// out must not alias a or b.
inline void mul_limbs(std::span<const Limb> a, std::span<const Limb> b, std::span<Limb> out) {
    assert(!a.empty() && !b.empty());
    assert(out.size() == a.size() + b.size());
    out[a.size()] = limbs_mul_1(out.data(), a.data(), a.size(), b[0]);
    for (std::size_t j = 1; j < b.size(); j++)
        out[a.size() + j] = limbs_addmul_1(out.data() + j, a.data(), a.size(), b[j]);
}

// s +-= t * 2^(64*offset) with carry/borrow propagated through at most
// carry_span limbs above the window. Wraparound at the top limb of s is
// permitted (two's complement semantics); a carry that survives below the
// top limb violates the caller's span contract.
inline void add_signed_range(std::span<Limb> s, std::span<const Limb> t,
                             std::size_t offset, std::size_t carry_span, bool negate) {
    assert(offset + t.size() <= s.size());
    assert(offset + t.size() + carry_span <= s.size());
    Limb* w = s.data() + offset;
    Limb cy;
    if (!negate)
        cy = limbs_add_n(w, w, t.data(), t.size());
    else
        cy = limbs_sub_n(w, w, t.data(), t.size());
    if (carry_span > 0) {
        Limb* u = w + t.size();
        if (!negate)
            cy = limbs_add_1(u, u, carry_span, cy);
        else
            cy = limbs_sub_1(u, u, carry_span, cy);
    }
    // carry may fall off the top limb only
    assert(cy == 0 || offset + t.size() + carry_span == s.size());
    (void)cy;
}

// out[0..t.len] = t * 2^(-bits) exactly, the low bits landing in an extra
// bottom limb: out viewed as a (t.len+1)-limb integer equals t << (64-bits).
inline void rshift_bits(std::span<const Limb> t, unsigned bits, std::span<Limb> out) {
    assert(bits >= 1 && bits <= kLimbBits - 1);
    assert(out.size() == t.size() + 1);
    out[0] = limbs_shr(out.data() + 1, t.data(), t.size(), bits);
}

// s <- 2^(64*len) - s
inline void neg_in_place(std::span<Limb> s) {
    assert(!s.empty());
    std::size_t i = 0;
    while (i < s.size() && s[i] == 0) i++;
    if (i == s.size()) return;
    s[i] = ~s[i] + 1;
    for (i++; i < s.size(); i++) s[i] = ~s[i];
}

// Top k limbs of a*b into out[0..k). Only the partial products landing in
// the top k+2 limb positions are accumulated, so the omitted tail plus the
// truncated guard limbs stay below one ulp of out[0] (valid for limb counts
// below 2^32). Returns the error bound in ulps of out[0]: 0 when the result
// is the exact truncation, 1 otherwise.
inline unsigned mulhigh_approx(std::span<const Limb> a, std::span<const Limb> b,
                               std::size_t k, std::span<Limb> out) {
    const std::size_t total = a.size() + b.size();
    assert(k <= total && out.size() == k);
    if (k == 0) return 0;
    if (k == total) {
        mul_limbs(a, b, out);
        return 0;
    }
    // base = lowest accumulated product position (two guard limbs)
    const std::size_t base = total - k >= 2 ? total - k - 2 : 0;
    const std::size_t wlen = total - base;
    Limb buf[2 * 66];
    Limb* w;
    std::unique_ptr<Limb[]> heap;
    if (wlen <= sizeof(buf) / sizeof(Limb)) {
        w = buf;
    } else {
        heap.reset(new Limb[wlen]);
        w = heap.get();
    }
    limbs_zero(w, wlen);
    for (std::size_t j = 0; j < b.size(); j++) {
        std::size_t i0 = base > j ? base - j : 0;
        if (i0 >= a.size()) continue;
        std::size_t len = a.size() - i0;
        std::size_t off = i0 + j - base;
        Limb cy = limbs_addmul_1(w + off, a.data() + i0, len, b[j]);
        if (off + len < wlen)
            limbs_add_1(w + off + len, w + off + len, wlen - off - len, cy);
    }
    std::memcpy(out.data(), w + (wlen - k), k * sizeof(Limb));
    if (base == 0 && limbs_normalize(w, wlen - k) == 0) return 0;
    return 1;
}

}  // namespace apball
