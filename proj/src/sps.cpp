#include "tecash/sps.hpp"

#include <array>

namespace tecash {

std::pair<SpsSecretKey, SpsPublicKey> sps_keygen(Rng& rng) {
    SpsSecretKey sk{random_scalar(rng), random_scalar(rng), random_scalar(rng),
                    random_scalar(rng)};
    const G2& gt = g2_generator();
    SpsPublicKey pk{gt * sk.y, gt * sk.w1, gt * sk.w2, gt * sk.z};
    return {sk, pk};
}

SpsSignature sps_sign(const SpsSecretKey& sk, const G1& m1, const G1& m2,
                      Rng& rng) {
    Scalar r = random_nonzero_scalar(rng);
    const G1& g = g1_generator();
    G1 R = g * r;
    G1 S = g * (sk.z - r * sk.y) + (-(m1 * sk.w1)) + (-(m2 * sk.w2));
    G2 T = g2_generator() * r.inverse();
    return {R, S, T};
}

bool sps_verify(const SpsPublicKey& pk, const SpsSignature& sig, const G1& m1,
                const G1& m2) {
    if (sig.R.is_identity()) return false;
    const G1& g = g1_generator();
    const G2& gt = g2_generator();
    std::array<G1, 5> p1 = {sig.R, sig.S, m1, m2, -g};
    std::array<G2, 5> q1 = {pk.Y, gt, pk.W1, pk.W2, pk.Z};
    if (!multi_pairing(p1, q1).is_unity()) return false;
    std::array<G1, 2> p2 = {sig.R, -g};
    std::array<G2, 2> q2 = {sig.T, gt};
    return multi_pairing(p2, q2).is_unity();
}

}  // namespace tecash
