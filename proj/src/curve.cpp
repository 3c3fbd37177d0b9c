#include "tecash/curve.hpp"

#include <mutex>
#include <stdexcept>

namespace tecash {

namespace {

struct MpzScoped {
    mpz_t z;
    MpzScoped() { mpz_init(z); }
    ~MpzScoped() { mpz_clear(z); }
    operator mpz_ptr() { return z; }
};

// |z| for the BLS parameter z = -0xd201000000010000
constexpr std::uint64_t kAbsZ = 0xd201000000010000ULL;

constexpr const char* kFpHexC =
    "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f624"
    "1eabfffeb153ffffb9feffffffffaaab";
constexpr const char* kFrHexC =
    "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";
constexpr const char* kH1Hex = "396c8c005555e1568c00aaab0000aaab";
constexpr const char* kH2Hex =
    "5d543a95414e7f1091d50792876a202cd91de4547085abaa68a205b2e5a7ddfa"
    "628f1cb4d9e82ef21537e293a6691ae1616ec6e786f0c70cf1c38e31c7238e5";

Fp fp_b() { return Fp::from_u64(4); }
Fp2 fp2_b() { return {Fp::from_u64(4), Fp::from_u64(4)}; }  // 4(1 + u)

// Function-local static: safe against static-init ordering across TUs.
struct CurveCtx {
    MpzScoped r, h1, h2;
    MpzScoped hard;  // (p^4 - p^2 + 1) / r
    Fp2 xi_inv;
    G1 g1;
    G2 g2;

    CurveCtx() {
        fields_init();
        mpz_set_str(r, kFrHexC, 16);
        mpz_set_str(h1, kH1Hex, 16);
        mpz_set_str(h2, kH2Hex, 16);

        MpzScoped p, t;
        mpz_set_str(p, kFpHexC, 16);
        mpz_pow_ui(hard, p, 4);
        mpz_pow_ui(t, p, 2);
        mpz_sub(hard, hard, t);
        mpz_add_ui(hard, hard, 1);
        if (!mpz_divisible_p(hard.z, r.z))
            throw std::logic_error("bad curve constants");
        mpz_divexact(hard, hard, r);

        xi_inv = fp2_xi().inverse();

        g1 = G1::from_affine(
            Fp::from_hex("17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905"
                         "a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb"),
            Fp::from_hex("08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af6"
                         "00db18cb2c04b3edd03cc744a2888ae40caa232946c5e7e1"));
        g2 = G2::from_affine(
            Fp2{Fp::from_hex("024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02"
                             "b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8"),
                Fp::from_hex("13e02b6052719f607dacd3a088274f65596bd0d09920b61a"
                             "b5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e")},
            Fp2{Fp::from_hex("0ce5d527727d6e118cc9cdc6da2e351aadfd9baa8cbdd3a7"
                             "6d429a695160d12c923ac9cc3baca289e193548608b82801"),
                Fp::from_hex("0606c4a02ea734cc32acd2b02bc28b99cb3e287e85a763af"
                             "267492ab572e99ab3f370d275cec1da1aaa9075ff05f79be")});
    }
};

CurveCtx& ctx() {
    static CurveCtx c;
    return c;
}

}  // namespace

void curve_init() { ctx(); }

const G1& g1_generator() { return ctx().g1; }

const G2& g2_generator() { return ctx().g2; }

bool g1_on_curve(const G1& p) {
    if (p.is_identity()) return true;
    Fp x, y;
    p.to_affine(x, y);
    return y.square() == x.square() * x + fp_b();
}

bool g2_on_curve(const G2& p) {
    if (p.is_identity()) return true;
    Fp2 x, y;
    p.to_affine(x, y);
    return y.square() == x.square() * x + fp2_b();
}

bool g1_in_subgroup(const G1& p) {
    curve_init();
    return p.mul_mpz(ctx().r).is_identity();
}

bool g2_in_subgroup(const G2& p) {
    curve_init();
    return p.mul_mpz(ctx().r).is_identity();
}

// -------------------------------------------------------- serialization
//
// Compressed encodings: big-endian x coordinate with three flag bits in
// the top byte (0x80 compressed, 0x40 infinity, 0x20 the larger of the
// two y candidates). G2 stores x.c1 first.

Bytes g1_to_bytes(const G1& p) {
    Bytes out(48, 0);
    if (p.is_identity()) {
        out[0] = 0xc0;
        return out;
    }
    Fp x, y;
    p.to_affine(x, y);
    x.to_bytes(out.data());
    out[0] |= 0x80;
    if (y.is_high()) out[0] |= 0x20;
    return out;
}

Bytes g2_to_bytes(const G2& p) {
    Bytes out(96, 0);
    if (p.is_identity()) {
        out[0] = 0xc0;
        return out;
    }
    Fp2 x, y;
    p.to_affine(x, y);
    x.c1.to_bytes(out.data());
    x.c0.to_bytes(out.data() + 48);
    out[0] |= 0x80;
    if (y.is_high()) out[0] |= 0x20;
    return out;
}

bool g1_from_bytes(BytesView in, G1& out) {
    curve_init();
    if (in.size() != 48) return false;
    std::uint8_t flags = in[0] & 0xe0;
    if (!(flags & 0x80)) return false;
    if (flags & 0x40) {
        if (flags & 0x20) return false;
        std::uint8_t acc = in[0] & 0x1f;
        for (std::size_t i = 1; i < 48; i++) acc |= in[i];
        if (acc) return false;
        out = G1::identity();
        return true;
    }
    std::uint8_t buf[48];
    std::memcpy(buf, in.data(), 48);
    buf[0] &= 0x1f;
    Fp x;
    if (!Fp::from_bytes(buf, x)) return false;
    Fp rhs = x.square() * x + fp_b();
    Fp y;
    if (!rhs.sqrt(y)) return false;
    bool want_high = (flags & 0x20) != 0;
    if (y.is_high() != want_high) y = -y;
    out = G1::from_affine(x, y);
    return g1_in_subgroup(out);
}

bool g2_from_bytes(BytesView in, G2& out) {
    curve_init();
    if (in.size() != 96) return false;
    std::uint8_t flags = in[0] & 0xe0;
    if (!(flags & 0x80)) return false;
    if (flags & 0x40) {
        if (flags & 0x20) return false;
        std::uint8_t acc = in[0] & 0x1f;
        for (std::size_t i = 1; i < 96; i++) acc |= in[i];
        if (acc) return false;
        out = G2::identity();
        return true;
    }
    std::uint8_t buf[48];
    std::memcpy(buf, in.data(), 48);
    buf[0] &= 0x1f;
    Fp2 x;
    if (!Fp::from_bytes(buf, x.c1)) return false;
    if (!Fp::from_bytes(in.data() + 48, x.c0)) return false;
    Fp2 rhs = x.square() * x + fp2_b();
    Fp2 y;
    if (!rhs.sqrt(y)) return false;
    bool want_high = (flags & 0x20) != 0;
    if (y.is_high() != want_high) y = -y;
    out = G2::from_affine(x, y);
    return g2_in_subgroup(out);
}

Bytes Gt::to_bytes() const {
    Bytes out(576);
    const Fp* parts[12] = {
        &f.c0.c0.c0, &f.c0.c0.c1, &f.c0.c1.c0, &f.c0.c1.c1,
        &f.c0.c2.c0, &f.c0.c2.c1, &f.c1.c0.c0, &f.c1.c0.c1,
        &f.c1.c1.c0, &f.c1.c1.c1, &f.c1.c2.c0, &f.c1.c2.c1};
    for (int i = 0; i < 12; i++) parts[i]->to_bytes(out.data() + 48 * i);
    return out;
}

bool Gt::from_bytes(BytesView in, Gt& out) {
    curve_init();
    if (in.size() != 576) return false;
    Fp* parts[12] = {
        &out.f.c0.c0.c0, &out.f.c0.c0.c1, &out.f.c0.c1.c0, &out.f.c0.c1.c1,
        &out.f.c0.c2.c0, &out.f.c0.c2.c1, &out.f.c1.c0.c0, &out.f.c1.c0.c1,
        &out.f.c1.c1.c0, &out.f.c1.c1.c1, &out.f.c1.c2.c0, &out.f.c1.c2.c1};
    for (int i = 0; i < 12; i++)
        if (!Fp::from_bytes(in.data() + 48 * i, *parts[i])) return false;
    return out.f.pow_mpz(ctx().r).is_one();
}

Gt Gt::pow(const Fr& e) const {
    MpzScoped z;
    e.to_mpz(z);
    return {f.cyclotomic_pow(z)};
}

// ------------------------------------------------------------ hashing

G1 hash_to_g1(const std::string& tag, BytesView msg) {
    curve_init();
    Bytes transcript;
    append_chunk(transcript, to_bytes(tag));
    append_chunk(transcript, msg);
    for (unsigned ctr = 0; ctr < 256; ctr++) {
        Bytes wide;
        for (std::uint8_t half = 0; half < 2; half++) {
            Bytes block = transcript;
            append_u8(block, static_cast<std::uint8_t>(ctr));
            append_u8(block, half);
            append(wide, sha256(block));
        }
        Fp x = Fp::from_bytes_wide(wide.data(), wide.size());
        Fp rhs = x.square() * x + fp_b();
        Fp y;
        if (!rhs.sqrt(y)) continue;
        if (y.is_high()) y = -y;
        G1 p = G1::from_affine(x, y).mul_mpz(ctx().h1);
        if (!p.is_identity()) return p;
    }
    throw std::runtime_error("hash_to_g1 failed");  // cryptographically unreachable
}

// ------------------------------------------------------------ pairing
//
// Optimal ate pairing via the untwist into Fp12. For an affine twist
// point (x, y), the untwisted coordinates are X = x*xi^{-1} at w^4 and
// Y = y*xi^{-1} at w^3. A line through the untwisted T with twist slope
// lam evaluated at P = (xp, yp) in G1 collapses to three Fp2
// coefficients at w^0, w^3, w^5.

namespace {

Fp12 line_eval(const Fp2& lam, const Fp2& xt, const Fp2& yt, const Fp& xp,
               const Fp& yp) {
    Fp12 l = Fp12::zero();
    l.c0.c0 = Fp2{yp, Fp::zero()};
    l.c1.c1 = (lam * xt - yt) * ctx().xi_inv;
    l.c1.c2 = -(lam * ctx().xi_inv).mul_fp(xp);
    return l;
}

Fp12 miller_loop(const Fp& xp, const Fp& yp, const Fp2& xq, const Fp2& yq) {
    Fp12 f = Fp12::one();
    Fp2 xt = xq, yt = yq;
    for (int i = 62; i >= 0; i--) {
        Fp2 lam = (xt.square() + xt.square().dbl()) * yt.dbl().inverse();
        f = f.square() * line_eval(lam, xt, yt, xp, yp);
        Fp2 x3 = lam.square() - xt.dbl();
        yt = lam * (xt - x3) - yt;
        xt = x3;
        if ((kAbsZ >> i) & 1) {
            lam = (yq - yt) * (xq - xt).inverse();
            f = f * line_eval(lam, xt, yt, xp, yp);
            x3 = lam.square() - xt - xq;
            yt = lam * (xt - x3) - yt;
            xt = x3;
        }
    }
    return f;
}

Fp12 final_exp(const Fp12& f) {
    // easy part: f^((p^6 - 1)(p^2 + 1))
    Fp12 m = f.conjugate() * f.inverse();
    m = m.frobenius().frobenius() * m;
    // hard part
    return m.cyclotomic_pow(ctx().hard);
}

}  // namespace

Gt multi_pairing(std::span<const G1> ps, std::span<const G2> qs) {
    curve_init();
    if (ps.size() != qs.size()) throw std::invalid_argument("pairing arity");
    Fp12 acc = Fp12::one();
    bool any = false;
    for (std::size_t i = 0; i < ps.size(); i++) {
        if (ps[i].is_identity() || qs[i].is_identity()) continue;
        Fp xp, yp;
        Fp2 xq, yq;
        ps[i].to_affine(xp, yp);
        qs[i].to_affine(xq, yq);
        acc = acc * miller_loop(xp, yp, xq, yq);
        any = true;
    }
    if (!any) return Gt::unity();
    // z < 0: fold the sign into a conjugation, absorbed by the final
    // exponentiation's p^6 - 1 factor.
    return {final_exp(acc.conjugate())};
}

Gt pairing(const G1& p, const G2& q) {
    return multi_pairing(std::span<const G1>(&p, 1),
                         std::span<const G2>(&q, 1));
}

}  // namespace tecash
