#pragma once

// BLS12-381 groups: G1 over Fp, G2 over the quadratic twist, GT inside
// Fp12, plus the optimal-ate pairing.

#include "tecash/bytes.hpp"
#include "tecash/fields.hpp"

#include <span>

namespace tecash {

// Short Weierstrass point, Jacobian coordinates, a = 0. Z = 0 encodes the
// identity.
template <typename F>
struct EcPoint {
    F X = F::one();
    F Y = F::one();
    F Z = F::zero();

    static EcPoint identity() { return EcPoint{}; }

    static EcPoint from_affine(const F& x, const F& y) {
        return {x, y, F::one()};
    }

    bool is_identity() const { return Z.is_zero(); }

    void to_affine(F& x, F& y) const {
        F zi = Z.inverse();
        F zi2 = zi.square();
        x = X * zi2;
        y = Y * zi2 * zi;
    }

    EcPoint operator-() const { return {X, -Y, Z}; }

    EcPoint dbl() const {
        if (is_identity()) return *this;
        F a = X.square();
        F b = Y.square();
        F c = b.square();
        F d = ((X + b).square() - a - c).dbl();
        F e = a + a + a;
        F f = e.square();
        EcPoint r;
        r.X = f - d.dbl();
        F c8 = c.dbl().dbl().dbl();
        r.Y = e * (d - r.X) - c8;
        r.Z = (Y * Z).dbl();
        return r;
    }

    EcPoint operator+(const EcPoint& o) const {
        if (is_identity()) return o;
        if (o.is_identity()) return *this;
        F z1z1 = Z.square();
        F z2z2 = o.Z.square();
        F u1 = X * z2z2;
        F u2 = o.X * z1z1;
        F s1 = Y * o.Z * z2z2;
        F s2 = o.Y * Z * z1z1;
        if (u1 == u2) {
            if (s1 == s2) return dbl();
            return identity();
        }
        F h = u2 - u1;
        F i = h.dbl().square();
        F j = h * i;
        F rr = (s2 - s1).dbl();
        F v = u1 * i;
        EcPoint r;
        r.X = rr.square() - j - v.dbl();
        r.Y = rr * (v - r.X) - (s1 * j).dbl();
        r.Z = ((Z + o.Z).square() - z1z1 - z2z2) * h;
        return r;
    }

    EcPoint operator-(const EcPoint& o) const { return *this + (-o); }

    EcPoint mul_mpz(const mpz_t e) const {
        EcPoint acc = identity();
        if (mpz_sgn(e) == 0) return acc;
        std::size_t nbits = mpz_sizeinbase(e, 2);
        for (std::size_t i = nbits; i-- > 0;) {
            acc = acc.dbl();
            if (mpz_tstbit(e, i)) acc = acc + *this;
        }
        if (mpz_sgn(e) < 0) return -acc;
        return acc;
    }

    EcPoint operator*(const Fr& e) const {
        mpz_t z;
        mpz_init(z);
        e.to_mpz(z);
        EcPoint r = mul_mpz(z);
        mpz_clear(z);
        return r;
    }

    bool operator==(const EcPoint& o) const {
        if (is_identity() || o.is_identity())
            return is_identity() == o.is_identity();
        F z1z1 = Z.square();
        F z2z2 = o.Z.square();
        if (X * z2z2 != o.X * z1z1) return false;
        return Y * o.Z * z2z2 == o.Y * Z * z1z1;
    }
    bool operator!=(const EcPoint& o) const { return !(*this == o); }
};

using G1 = EcPoint<Fp>;
using G2 = EcPoint<Fp2>;

// Target group: order-r subgroup of Fp12*. Elements produced by the
// pairing are unitary, so inversion is conjugation.
struct Gt {
    Fp12 f = Fp12::one();

    static Gt unity() { return Gt{}; }
    bool is_unity() const { return f.is_one(); }

    Gt operator*(const Gt& o) const { return {f * o.f}; }
    Gt inverse() const { return {f.conjugate()}; }
    Gt pow(const Fr& e) const;
    bool operator==(const Gt& o) const { return f == o.f; }
    bool operator!=(const Gt& o) const { return !(f == o.f); }

    Bytes to_bytes() const;  // 576 bytes, canonical
    static bool from_bytes(BytesView in, Gt& out);  // checks order
};

void curve_init();  // idempotent

const G1& g1_generator();
const G2& g2_generator();

bool g1_on_curve(const G1& p);
bool g2_on_curve(const G2& p);
bool g1_in_subgroup(const G1& p);  // r*P == 0 (on-curve assumed)
bool g2_in_subgroup(const G2& p);

Bytes g1_to_bytes(const G1& p);  // 48 bytes, compressed
Bytes g2_to_bytes(const G2& p);  // 96 bytes, compressed
bool g1_from_bytes(BytesView in, G1& out);  // full validation
bool g2_from_bytes(BytesView in, G2& out);

// Deterministic map into G1 (try-and-increment over SHA-256, cofactor
// cleared). Never returns the identity.
G1 hash_to_g1(const std::string& tag, BytesView msg);

Gt pairing(const G1& p, const G2& q);
// Product of pairings sharing one final exponentiation.
Gt multi_pairing(std::span<const G1> ps, std::span<const G2> qs);

}  // namespace tecash
