#pragma once

// Pointcheval-Sanders signatures on q scalar messages, with the
// random-oracle base variant and randomization used for anonymous
// signature possession.

#include "tecash/group.hpp"

#include <utility>
#include <vector>

namespace tecash {

struct PsSecretKey {
    Scalar x;
    std::vector<Scalar> ys;
};

struct PsPublicKey {
    G2 alpha_tilde;                       // g~^x
    std::vector<std::pair<G1, G2>> betas;  // (g^{y_j}, g~^{y_j})
};

struct PsSignature {
    G1 h;
    G1 s;
};

std::pair<PsSecretKey, PsPublicKey> ps_keygen(std::size_t q, Rng& rng);

// s = h^{x + sum y_j m_j}; throws on identity base or arity mismatch.
PsSignature ps_sign_on_base(const PsSecretKey& sk, const G1& h,
                            const std::vector<Scalar>& msgs);

// Convenience: fresh random base h = g^r.
PsSignature ps_sign(const PsSecretKey& sk, const std::vector<Scalar>& msgs,
                    Rng& rng);

bool ps_verify(const PsPublicKey& pk, const PsSignature& sig,
               const std::vector<Scalar>& msgs);

// sigma' = (h^{r'}, s^{r'} (h')^r); returns sigma' and g~^r, the term the
// caller folds into kappa. Verification contract for a randomized
// signature: e(h', kappa) = e(s', g~) with
// kappa = alpha~ * prod beta~_j^{m_j} * g~^r.
std::pair<PsSignature, G2> ps_randomize(const PsSignature& sig, const Scalar& r,
                                        const Scalar& r_prime);

}  // namespace tecash
