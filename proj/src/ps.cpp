#include "tecash/ps.hpp"

#include <array>
#include <stdexcept>

namespace tecash {

std::pair<PsSecretKey, PsPublicKey> ps_keygen(std::size_t q, Rng& rng) {
    if (q == 0) throw std::invalid_argument("q must be positive");
    PsSecretKey sk;
    PsPublicKey pk;
    sk.x = random_scalar(rng);
    pk.alpha_tilde = g2_generator() * sk.x;
    for (std::size_t j = 0; j < q; j++) {
        Scalar y = random_scalar(rng);
        sk.ys.push_back(y);
        pk.betas.emplace_back(g1_generator() * y, g2_generator() * y);
    }
    return {std::move(sk), std::move(pk)};
}

PsSignature ps_sign_on_base(const PsSecretKey& sk, const G1& h,
                            const std::vector<Scalar>& msgs) {
    if (h.is_identity()) throw std::invalid_argument("identity base");
    if (msgs.size() != sk.ys.size()) throw std::invalid_argument("arity mismatch");
    Scalar e = sk.x;
    for (std::size_t j = 0; j < msgs.size(); j++) e = e + sk.ys[j] * msgs[j];
    return {h, h * e};
}

PsSignature ps_sign(const PsSecretKey& sk, const std::vector<Scalar>& msgs,
                    Rng& rng) {
    G1 h = g1_generator() * random_nonzero_scalar(rng);
    return ps_sign_on_base(sk, h, msgs);
}

bool ps_verify(const PsPublicKey& pk, const PsSignature& sig,
               const std::vector<Scalar>& msgs) {
    if (msgs.size() != pk.betas.size()) throw std::invalid_argument("arity mismatch");
    if (sig.h.is_identity()) return false;
    G2 acc = pk.alpha_tilde;
    for (std::size_t j = 0; j < msgs.size(); j++)
        acc = acc + pk.betas[j].second * msgs[j];
    // e(h, acc) == e(s, g~)  <=>  e(h, acc) * e(-s, g~) == 1
    std::array<G1, 2> ps = {sig.h, -sig.s};
    std::array<G2, 2> qs = {acc, g2_generator()};
    return multi_pairing(ps, qs).is_unity();
}

std::pair<PsSignature, G2> ps_randomize(const PsSignature& sig, const Scalar& r,
                                        const Scalar& r_prime) {
    if (r_prime.is_zero()) throw std::invalid_argument("r' must be nonzero");
    G1 h2 = sig.h * r_prime;
    G1 s2 = sig.s * r_prime + h2 * r;
    return {PsSignature{h2, s2}, g2_generator() * r};
}

}  // namespace tecash
