#include "tecash/fields.hpp"

#include <mutex>
#include <stdexcept>

namespace tecash {

MontParams<6> FpParams;
MontParams<4> FrParams;

namespace {

constexpr const char* kFpHex =
    "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f624"
    "1eabfffeb153ffffb9feffffffffaaab";
constexpr const char* kFrHex =
    "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";

struct MpzScoped {
    mpz_t z;
    MpzScoped() { mpz_init(z); }
    ~MpzScoped() { mpz_clear(z); }
    operator mpz_ptr() { return z; }
};

// Frobenius coefficients gamma^i = xi^{i(p-1)/6}, i in [0,5]
Fp2 g_frob_gamma[6];

// exponents used by square roots
MpzScoped* g_fp_sqrt_exp;    // (p+1)/4
MpzScoped* g_fp2_exp_a;      // (p-3)/4
MpzScoped* g_fp2_exp_b;      // (p-1)/2

std::once_flag g_init_flag;

}  // namespace

template <std::size_t N>
void MontParams<N>::init(const char* hex) {
    MpzScoped m, r, t;
    mpz_set_str(m, hex, 16);
    bits = static_cast<unsigned>(mpz_sizeinbase(m, 2));

    auto export_limbs = [&](mpz_ptr src, std::array<mp_limb_t, N>& dst) {
        dst.fill(0);
        std::size_t count = 0;
        mpz_export(dst.data(), &count, -1, sizeof(mp_limb_t), 0, 0, src);
        if (count > N) throw std::logic_error("modulus too large");
    };
    export_limbs(m, mod);

    mpz_set_ui(r, 1);
    mpz_mul_2exp(r, r, 64 * N);  // R
    mpz_mod(t, r, m);
    export_limbs(t, one);
    mpz_mul(t, t, t);
    mpz_mod(t, t, m);
    export_limbs(t, r2);

    // n0inv = -m^{-1} mod 2^64
    MpzScoped b64, minv;
    mpz_set_ui(b64, 1);
    mpz_mul_2exp(b64, b64, 64);
    mpz_invert(minv, m, b64);
    mpz_sub(minv, b64, minv);
    mpz_mod(minv, minv, b64);
    n0inv = mpz_get_ui(minv);
}

template struct MontParams<6>;
template struct MontParams<4>;

template <std::size_t N, const MontParams<N>& P>
void Fq<N, P>::to_mpz(mpz_t out) const {
    Fq plain = from_mont(*this);
    mpz_import(out, N, -1, sizeof(mp_limb_t), 0, 0, plain.v.data());
}

template <std::size_t N, const MontParams<N>& P>
Fq<N, P> Fq<N, P>::from_mpz(const mpz_t x) {
    MpzScoped m, t;
    mpz_import(m, N, -1, sizeof(mp_limb_t), 0, 0, P.mod.data());
    mpz_mod(t, x, m);
    Fq r;
    std::size_t count = 0;
    mpz_export(r.v.data(), &count, -1, sizeof(mp_limb_t), 0, 0, t);
    for (std::size_t i = count; i < N; i++) r.v[i] = 0;
    return mont_mul(r, r2());
}

template <std::size_t N, const MontParams<N>& P>
Fq<N, P> Fq<N, P>::from_bytes_wide(const std::uint8_t* data, std::size_t len) {
    MpzScoped t;
    mpz_import(t, len, 1, 1, 1, 0, data);
    return from_mpz(t);
}

template <std::size_t N, const MontParams<N>& P>
bool Fq<N, P>::from_bytes(const std::uint8_t* data, Fq& out) {
    std::array<mp_limb_t, N> raw{};
    for (std::size_t i = 0; i < 8 * N; i++) {
        std::size_t limb = N - 1 - i / 8;
        raw[limb] = (raw[limb] << 8) | data[i];
    }
    if (mpn_cmp(raw.data(), P.mod.data(), N) >= 0) return false;
    Fq r;
    r.v = raw;
    out = mont_mul(r, r2());
    return true;
}

template <std::size_t N, const MontParams<N>& P>
void Fq<N, P>::to_bytes(std::uint8_t* out) const {
    Fq plain = from_mont(*this);
    for (std::size_t i = 0; i < 8 * N; i++) {
        std::size_t limb = N - 1 - i / 8;
        unsigned shift = 8 * (7 - (i % 8));
        out[i] = static_cast<std::uint8_t>(plain.v[limb] >> shift);
    }
}

template <std::size_t N, const MontParams<N>& P>
Fq<N, P> Fq<N, P>::from_hex(const std::string& hex) {
    MpzScoped t;
    if (mpz_set_str(t, hex.c_str(), 16) != 0) throw std::invalid_argument("bad hex");
    return from_mpz(t);
}

template <std::size_t N, const MontParams<N>& P>
Fq<N, P> Fq<N, P>::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    MpzScoped m, a, r;
    mpz_import(m, N, -1, sizeof(mp_limb_t), 0, 0, P.mod.data());
    to_mpz(a);
    mpz_invert(r, a, m);
    return from_mpz(r);
}

template <std::size_t N, const MontParams<N>& P>
Fq<N, P> Fq<N, P>::pow_mpz(const mpz_t e) const {
    MpzScoped m, a, r;
    mpz_import(m, N, -1, sizeof(mp_limb_t), 0, 0, P.mod.data());
    to_mpz(a);
    mpz_powm(r, a, e, m);
    return from_mpz(r);
}

template <std::size_t N, const MontParams<N>& P>
int Fq<N, P>::legendre() const {
    MpzScoped m, a;
    mpz_import(m, N, -1, sizeof(mp_limb_t), 0, 0, P.mod.data());
    to_mpz(a);
    return mpz_jacobi(a, m);
}

template <std::size_t N, const MontParams<N>& P>
bool Fq<N, P>::sqrt(Fq& out) const {
    // p == 3 mod 4
    MpzScoped m, e;
    mpz_import(m, N, -1, sizeof(mp_limb_t), 0, 0, P.mod.data());
    mpz_add_ui(e, m, 1);
    mpz_fdiv_q_2exp(e, e, 2);
    Fq cand = pow_mpz(e);
    if (cand.square() == *this) {
        out = cand;
        return true;
    }
    return false;
}

template <std::size_t N, const MontParams<N>& P>
bool Fq<N, P>::is_high() const {
    Fq plain = from_mont(*this);
    std::array<mp_limb_t, N> half{};
    std::array<mp_limb_t, N> m1 = P.mod;
    mpn_sub_1(m1.data(), m1.data(), N, 1);
    mpn_rshift(half.data(), m1.data(), N, 1);
    return mpn_cmp(plain.v.data(), half.data(), N) > 0;
}

template class Fq<6, FpParams>;
template class Fq<4, FrParams>;

// ---------------------------------------------------------------- Fp2

Fp2 Fp2::pow_mpz(const mpz_t e) const {
    Fp2 base = *this;
    Fp2 acc = Fp2::one();
    std::size_t nbits = mpz_sizeinbase(e, 2);
    for (std::size_t i = nbits; i-- > 0;) {
        acc = acc.square();
        if (mpz_tstbit(e, i)) acc = acc * base;
    }
    return acc;
}

bool Fp2::sqrt(Fp2& out) const {
    if (is_zero()) {
        out = Fp2::zero();
        return true;
    }
    // Adj & Rodriguez-Henriquez, works for p == 3 mod 4
    Fp2 a1 = pow_mpz(*g_fp2_exp_a);
    Fp2 x0 = a1 * *this;
    Fp2 alpha = a1 * x0;
    Fp2 minus_one = -Fp2::one();
    Fp2 x;
    if (alpha == minus_one) {
        x = Fp2{-x0.c1, x0.c0};  // multiply by u
    } else {
        Fp2 b = (alpha + Fp2::one()).pow_mpz(*g_fp2_exp_b);
        x = b * x0;
    }
    if (x.square() == *this) {
        out = x;
        return true;
    }
    return false;
}

// ---------------------------------------------------------------- Fp12

Fp12 Fp12::frobenius() const {
    // Recast as Fp2 coefficients of powers of w (w^2 = v, w^6 = xi):
    // [a0, b0, a1, b1, a2, b2]
    const Fp2* cw[6] = {&c0.c0, &c1.c0, &c0.c1, &c1.c1, &c0.c2, &c1.c2};
    Fp2 t[6];
    for (int i = 0; i < 6; i++) t[i] = cw[i]->conjugate() * g_frob_gamma[i];
    return {{t[0], t[2], t[4]}, {t[1], t[3], t[5]}};
}

Fp12 Fp12::cyclotomic_square() const { return square(); }

Fp12 Fp12::pow_mpz(const mpz_t e) const {
    Fp12 acc = Fp12::one();
    std::size_t nbits = mpz_sizeinbase(e, 2);
    if (mpz_sgn(e) == 0) return acc;
    for (std::size_t i = nbits; i-- > 0;) {
        acc = acc.square();
        if (mpz_tstbit(e, i)) acc = acc * *this;
    }
    if (mpz_sgn(e) < 0) return acc.inverse();
    return acc;
}

Fp12 Fp12::cyclotomic_pow(const mpz_t e) const {
    // 4-bit windowed; inversion via conjugation is valid here.
    bool neg = mpz_sgn(e) < 0;
    MpzScoped abs_e;
    mpz_abs(abs_e, e);
    std::size_t nbits = mpz_sizeinbase(abs_e, 2);
    if (mpz_cmp_ui(abs_e.z, 0) == 0) return Fp12::one();

    Fp12 table[16];
    table[0] = Fp12::one();
    table[1] = *this;
    for (int i = 2; i < 16; i++) table[i] = table[i - 1] * *this;

    Fp12 acc = Fp12::one();
    std::size_t pos = ((nbits + 3) / 4) * 4;
    while (pos > 0) {
        pos -= 4;
        for (int i = 0; i < 4; i++) acc = acc.cyclotomic_square();
        unsigned window = 0;
        for (int i = 3; i >= 0; i--)
            window = (window << 1) | mpz_tstbit(abs_e, pos + i);
        if (window) acc = acc * table[window];
    }
    return neg ? acc.conjugate() : acc;
}

Fp12 Fp12::cyclotomic_pow_u64(std::uint64_t e) const {
    MpzScoped z;
    mpz_import(z, 1, -1, 8, 0, 0, &e);
    return cyclotomic_pow(z);
}

// ---------------------------------------------------------------- init

void fields_init() {
    std::call_once(g_init_flag, [] {
        FpParams.init(kFpHex);
        FrParams.init(kFrHex);

        MpzScoped p;
        mpz_set_str(p, kFpHex, 16);

        g_fp_sqrt_exp = new MpzScoped;
        mpz_add_ui(*g_fp_sqrt_exp, p, 1);
        mpz_fdiv_q_2exp(*g_fp_sqrt_exp, *g_fp_sqrt_exp, 2);

        g_fp2_exp_a = new MpzScoped;
        mpz_sub_ui(*g_fp2_exp_a, p, 3);
        mpz_fdiv_q_2exp(*g_fp2_exp_a, *g_fp2_exp_a, 2);

        g_fp2_exp_b = new MpzScoped;
        mpz_sub_ui(*g_fp2_exp_b, p, 1);
        mpz_fdiv_q_2exp(*g_fp2_exp_b, *g_fp2_exp_b, 1);

        // gamma^i = xi^{i(p-1)/6}
        MpzScoped e6;
        mpz_sub_ui(e6, p, 1);
        mpz_fdiv_q_ui(e6, e6, 6);
        Fp2 gamma = fp2_xi().pow_mpz(e6);
        g_frob_gamma[0] = Fp2::one();
        for (int i = 1; i < 6; i++) g_frob_gamma[i] = g_frob_gamma[i - 1] * gamma;
    });
}

}  // namespace tecash
