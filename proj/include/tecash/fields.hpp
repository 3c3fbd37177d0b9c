#pragma once

// Arithmetic for the BLS12-381 base field, scalar field and the Fp12 tower.
// Fixed-width Montgomery representation on top of GMP's mpn layer.

#include <gmp.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace tecash {

static_assert(GMP_LIMB_BITS == 64, "64-bit limbs required");

// Runtime-initialized Montgomery parameters for a prime modulus of N limbs.
template <std::size_t N>
struct MontParams {
    std::array<mp_limb_t, N> mod{};
    std::array<mp_limb_t, N> r2{};    // R^2 mod m, R = 2^(64N)
    std::array<mp_limb_t, N> one{};   // R mod m
    mp_limb_t n0inv = 0;              // -m^{-1} mod 2^64
    unsigned bits = 0;

    void init(const char* hex);
};

template <std::size_t N, const MontParams<N>& P>
class Fq {
  public:
    std::array<mp_limb_t, N> v{};  // Montgomery form

    static Fq zero() { return Fq{}; }
    static Fq one() {
        Fq r;
        r.v = P.one;
        return r;
    }

    static Fq from_u64(std::uint64_t x) {
        Fq r;
        r.v[0] = x;
        return mont_mul(r, r2());
    }

    // Reduces an arbitrary big-endian byte string mod m.
    static Fq from_bytes_wide(const std::uint8_t* data, std::size_t len);
    // Strict: rejects values >= m. Big-endian, 8*N bytes.
    static bool from_bytes(const std::uint8_t* data, Fq& out);
    void to_bytes(std::uint8_t* out) const;  // big-endian, 8*N bytes

    static Fq from_hex(const std::string& hex);

    bool is_zero() const {
        for (auto l : v)
            if (l) return false;
        return true;
    }

    bool operator==(const Fq& o) const { return v == o.v; }
    bool operator!=(const Fq& o) const { return v != o.v; }

    Fq operator+(const Fq& o) const {
        Fq r;
        mp_limb_t carry = mpn_add_n(r.v.data(), v.data(), o.v.data(), N);
        if (carry || mpn_cmp(r.v.data(), P.mod.data(), N) >= 0)
            mpn_sub_n(r.v.data(), r.v.data(), P.mod.data(), N);
        return r;
    }

    Fq operator-(const Fq& o) const {
        Fq r;
        mp_limb_t borrow = mpn_sub_n(r.v.data(), v.data(), o.v.data(), N);
        if (borrow) mpn_add_n(r.v.data(), r.v.data(), P.mod.data(), N);
        return r;
    }

    Fq operator-() const {
        if (is_zero()) return *this;
        Fq r;
        mpn_sub_n(r.v.data(), P.mod.data(), v.data(), N);
        return r;
    }

    Fq operator*(const Fq& o) const { return mont_mul(*this, o); }
    Fq square() const { return mont_mul(*this, *this); }

    Fq dbl() const { return *this + *this; }

    Fq inverse() const;                      // modular inverse via mpz
    Fq pow_mpz(const mpz_t e) const;         // generic exponentiation
    bool sqrt(Fq& out) const;                // p == 3 mod 4 only
    int legendre() const;                    // 1, -1 or 0

    // Compares canonical (non-Montgomery) representatives.
    int cmp_canonical(const Fq& o) const {
        Fq a = from_mont(*this), b = from_mont(o);
        return mpn_cmp(a.v.data(), b.v.data(), N);
    }
    // True when the canonical value exceeds (m-1)/2.
    bool is_high() const;

    void to_mpz(mpz_t out) const;
    static Fq from_mpz(const mpz_t x);

  private:
    static const Fq& r2() {
        static Fq r = [] {
            Fq x;
            x.v = P.r2;
            return x;
        }();
        return r;
    }

    static Fq from_mont(const Fq& a) {
        std::array<mp_limb_t, 2 * N + 1> t{};
        std::memcpy(t.data(), a.v.data(), N * sizeof(mp_limb_t));
        Fq r;
        redc(t.data(), r.v.data());
        return r;
    }

    static void redc(mp_limb_t* t, mp_limb_t* out) {
        // t has 2N+1 limbs; reduces t / R mod m into out.
        for (std::size_t i = 0; i < N; i++) {
            mp_limb_t m = t[i] * P.n0inv;
            mp_limb_t carry = mpn_addmul_1(t + i, P.mod.data(), N, m);
            mp_limb_t c2 = mpn_add_1(t + i + N, t + i + N, N + 1 - i, carry);
            (void)c2;  // cannot overflow: top limb reserved
        }
        if (t[2 * N] || mpn_cmp(t + N, P.mod.data(), N) >= 0)
            mpn_sub_n(out, t + N, P.mod.data(), N);
        else
            std::memcpy(out, t + N, N * sizeof(mp_limb_t));
    }

    static Fq mont_mul(const Fq& a, const Fq& b) {
        std::array<mp_limb_t, 2 * N + 1> t{};
        mpn_mul_n(t.data(), a.v.data(), b.v.data(), N);
        t[2 * N] = 0;
        Fq r;
        redc(t.data(), r.v.data());
        return r;
    }
};

// BLS12-381 base field p (381 bits) and scalar field r (255 bits).
extern MontParams<6> FpParams;
extern MontParams<4> FrParams;

using Fp = Fq<6, FpParams>;
using Fr = Fq<4, FrParams>;

// ---------------------------------------------------------------- Fp2

// Fp2 = Fp[u] / (u^2 + 1)
struct Fp2 {
    Fp c0, c1;

    static Fp2 zero() { return {Fp::zero(), Fp::zero()}; }
    static Fp2 one() { return {Fp::one(), Fp::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp2& o) const { return !(*this == o); }

    Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Fp2 operator-() const { return {-c0, -c1}; }

    Fp2 operator*(const Fp2& o) const {
        Fp t0 = c0 * o.c0;
        Fp t1 = c1 * o.c1;
        Fp t2 = (c0 + c1) * (o.c0 + o.c1);
        return {t0 - t1, t2 - t0 - t1};
    }

    Fp2 square() const {
        Fp a = c0 + c1;
        Fp b = c0 - c1;
        Fp c = c0 + c0;
        return {a * b, c * c1};
    }

    Fp2 mul_fp(const Fp& s) const { return {c0 * s, c1 * s}; }
    Fp2 conjugate() const { return {c0, -c1}; }
    Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }

    Fp2 inverse() const {
        Fp norm = (c0.square() + c1.square()).inverse();
        return {c0 * norm, -(c1 * norm)};
    }

    Fp2 pow_mpz(const mpz_t e) const;
    bool sqrt(Fp2& out) const;
    bool is_high() const {  // lexicographic: c1 dominant
        if (!c1.is_zero()) return c1.is_high();
        return c0.is_high();
    }
};

// xi = 1 + u, the Fp6/Fp12 non-residue
inline Fp2 fp2_xi() { return {Fp::one(), Fp::one()}; }

inline Fp2 mul_by_xi(const Fp2& a) {
    // (c0 + c1 u)(1 + u) = (c0 - c1) + (c0 + c1) u
    return {a.c0 - a.c1, a.c0 + a.c1};
}

// ---------------------------------------------------------------- Fp6

// Fp6 = Fp2[v] / (v^3 - xi)
struct Fp6 {
    Fp2 c0, c1, c2;

    static Fp6 zero() { return {Fp2::zero(), Fp2::zero(), Fp2::zero()}; }
    static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
    bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }

    Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Fp6 operator-() const { return {-c0, -c1, -c2}; }

    Fp6 operator*(const Fp6& o) const {
        Fp2 v0 = c0 * o.c0;
        Fp2 v1 = c1 * o.c1;
        Fp2 v2 = c2 * o.c2;
        Fp2 t0 = v0 + mul_by_xi((c1 + c2) * (o.c1 + o.c2) - v1 - v2);
        Fp2 t1 = (c0 + c1) * (o.c0 + o.c1) - v0 - v1 + mul_by_xi(v2);
        Fp2 t2 = (c0 + c2) * (o.c0 + o.c2) - v0 - v2 + v1;
        return {t0, t1, t2};
    }

    Fp6 square() const { return *this * *this; }

    Fp6 mul_by_v() const { return {mul_by_xi(c2), c0, c1}; }
    Fp6 mul_fp2(const Fp2& s) const { return {c0 * s, c1 * s, c2 * s}; }

    Fp6 inverse() const {
        Fp2 a = c0.square() - mul_by_xi(c1 * c2);
        Fp2 b = mul_by_xi(c2.square()) - c0 * c1;
        Fp2 c = c1.square() - c0 * c2;
        Fp2 t = (c0 * a + mul_by_xi(c2 * b + c1 * c)).inverse();
        return {a * t, b * t, c * t};
    }
};

// ---------------------------------------------------------------- Fp12

// Fp12 = Fp6[w] / (w^2 - v)
struct Fp12 {
    Fp6 c0, c1;

    static Fp12 zero() { return {Fp6::zero(), Fp6::zero()}; }
    static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

    bool is_one() const { return c0 == Fp6::one() && c1.is_zero(); }
    bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
    bool operator!=(const Fp12& o) const { return !(*this == o); }

    Fp12 operator+(const Fp12& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Fp12 operator-(const Fp12& o) const { return {c0 - o.c0, c1 - o.c1}; }

    Fp12 operator*(const Fp12& o) const {
        Fp6 v0 = c0 * o.c0;
        Fp6 v1 = c1 * o.c1;
        Fp6 t = (c0 + c1) * (o.c0 + o.c1);
        return {v0 + v1.mul_by_v(), t - v0 - v1};
    }

    Fp12 square() const {
        Fp6 a = c0 + c1;
        Fp6 b = c0 + c1.mul_by_v();
        Fp6 ab = c0 * c1;
        Fp6 t = a * b - ab - ab.mul_by_v();
        return {t, ab + ab};
    }

    Fp12 inverse() const {
        Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
        return {c0 * t, -(c1 * t)};
    }

    // Valid inverse only for unitary elements (after the easy part of
    // the final exponentiation), i.e. in the cyclotomic subgroup.
    Fp12 conjugate() const { return {c0, -c1}; }

    Fp12 frobenius() const;            // x -> x^p
    Fp12 cyclotomic_square() const;
    Fp12 pow_mpz(const mpz_t e) const;              // generic
    Fp12 cyclotomic_pow(const mpz_t e) const;       // unitary elements
    Fp12 cyclotomic_pow_u64(std::uint64_t e) const;
};

void fields_init();  // idempotent; called by group setup

}  // namespace tecash
