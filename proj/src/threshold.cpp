#include "tecash/threshold.hpp"

#include <set>
#include <stdexcept>

namespace tecash {

namespace {

// Evaluates sum coeffs[k] * x^k.
Scalar poly_eval(const std::vector<Scalar>& coeffs, const Scalar& x) {
    Scalar acc = Scalar::zero();
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

std::vector<Scalar> random_poly(std::uint32_t deg, Rng& rng) {
    std::vector<Scalar> c(deg + 1);
    for (auto& s : c) s = random_scalar(rng);
    return c;
}

}  // namespace

ThresholdKeys ttp_keygen(std::uint32_t t, std::uint32_t n, Rng& rng) {
    if (t < 1 || t > n) throw std::invalid_argument("need 1 <= t <= n");
    std::vector<Scalar> v = random_poly(t - 1, rng);
    std::vector<Scalar> w1 = random_poly(t - 1, rng);
    std::vector<Scalar> w2 = random_poly(t - 1, rng);

    ThresholdKeys out;
    out.t = t;
    out.n = n;
    const G1& g = g1_generator();
    const G2& gt = g2_generator();
    for (std::uint32_t i = 1; i <= n; i++) {
        Scalar xi = Scalar::from_u64(i);
        AuthorityKeyShare sh{i, poly_eval(v, xi), poly_eval(w1, xi),
                             poly_eval(w2, xi)};
        out.public_shares.push_back({i, gt * sh.x, g * sh.y1, g * sh.y2,
                                     gt * sh.y1, gt * sh.y2});
        out.shares.push_back(std::move(sh));
    }
    out.vk = {gt * v[0], g * w1[0], g * w2[0], gt * w1[0], gt * w2[0]};
    return out;
}

std::vector<Scalar> lagrange_at_zero(const std::vector<std::uint32_t>& indices) {
    std::set<std::uint32_t> seen(indices.begin(), indices.end());
    if (seen.size() != indices.size() || seen.count(0))
        throw std::invalid_argument("indices must be distinct and positive");
    std::vector<Scalar> out;
    for (std::uint32_t i : indices) {
        Scalar num = Scalar::one(), den = Scalar::one();
        Scalar si = Scalar::from_u64(i);
        for (std::uint32_t j : indices) {
            if (j == i) continue;
            Scalar sj = Scalar::from_u64(j);
            num = num * (-sj);
            den = den * (si - sj);
        }
        out.push_back(num * den.inverse());
    }
    return out;
}

PsPublicKey authority_share_pk(const AuthorityPublicShare& s) {
    PsPublicKey pk;
    pk.alpha_tilde = s.alpha_tilde;
    pk.betas = {{s.beta1, s.beta1_tilde}, {s.beta2, s.beta2_tilde}};
    return pk;
}

PsPublicKey verification_pk(const VerificationKey& vk) {
    PsPublicKey pk;
    pk.alpha_tilde = vk.alpha_tilde;
    pk.betas = {{vk.beta1, vk.beta1_tilde}, {vk.beta2, vk.beta2_tilde}};
    return pk;
}

PsSignature aggregate_signature_shares(const std::vector<std::uint32_t>& indices,
                                       const std::vector<PsSignature>& shares,
                                       std::uint32_t t) {
    if (indices.size() != t || shares.size() != t)
        throw std::invalid_argument("need exactly t shares");
    std::vector<Scalar> ls = lagrange_at_zero(indices);
    G1 h = shares[0].h;
    if (h.is_identity()) throw std::invalid_argument("identity base");
    G1 s = G1::identity();
    for (std::size_t k = 0; k < shares.size(); k++) {
        if (shares[k].h != h) throw std::invalid_argument("base mismatch");
        s = s + shares[k].s * ls[k];
    }
    return {h, s};
}

}  // namespace tecash
