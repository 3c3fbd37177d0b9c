#pragma once

// AGHO structure-preserving signatures on two G1 messages (a=2, b=0).

#include "tecash/group.hpp"

#include <utility>

namespace tecash {

struct SpsSecretKey {
    Scalar y, w1, w2, z;
};

struct SpsPublicKey {
    G2 Y, W1, W2, Z;
};

struct SpsSignature {
    G1 R, S;
    G2 T;
};

std::pair<SpsSecretKey, SpsPublicKey> sps_keygen(Rng& rng);

SpsSignature sps_sign(const SpsSecretKey& sk, const G1& m1, const G1& m2,
                      Rng& rng);

// e(R,Y) e(S,g~) e(m1,W1) e(m2,W2) = e(g,Z) and e(R,T) = e(g,g~).
bool sps_verify(const SpsPublicKey& pk, const SpsSignature& sig, const G1& m1,
                const G1& m2);

}  // namespace tecash
