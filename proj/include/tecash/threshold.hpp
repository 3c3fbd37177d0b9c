#pragma once

// Shamir-shared issuance keys for two-message blind signatures: a trusted
// dealer splits (x, y1, y2), each authority holds one share, and any t
// partial signatures on a common base combine by Lagrange interpolation.

#include "tecash/ps.hpp"

#include <vector>

namespace tecash {

struct AuthorityKeyShare {
    std::uint32_t index = 0;  // 1-based
    Scalar x;
    Scalar y1, y2;
};

struct AuthorityPublicShare {
    std::uint32_t index = 0;
    G2 alpha_tilde;                 // g~^{x_i}
    G1 beta1, beta2;                // g^{y_{i,j}}
    G2 beta1_tilde, beta2_tilde;    // g~^{y_{i,j}}
};

struct VerificationKey {
    G2 alpha_tilde;  // g~^{v(0)}
    G1 beta1, beta2;
    G2 beta1_tilde, beta2_tilde;
};

struct ThresholdKeys {
    std::uint32_t t = 0, n = 0;
    std::vector<AuthorityKeyShare> shares;
    std::vector<AuthorityPublicShare> public_shares;
    VerificationKey vk;
};

// Dealer keygen with degree-(t-1) polynomials; throws unless 1 <= t <= n.
ThresholdKeys ttp_keygen(std::uint32_t t, std::uint32_t n, Rng& rng);

// Lagrange coefficients l_i(0) for the given distinct 1-based indices.
std::vector<Scalar> lagrange_at_zero(const std::vector<std::uint32_t>& indices);

PsPublicKey authority_share_pk(const AuthorityPublicShare& s);
PsPublicKey verification_pk(const VerificationKey& vk);

// Combines exactly-t partial signatures sharing a common base h into
// sigma = (h, prod s_i^{l_i}). Throws on count/index/base mismatch.
PsSignature aggregate_signature_shares(const std::vector<std::uint32_t>& indices,
                                       const std::vector<PsSignature>& shares,
                                       std::uint32_t t);

}  // namespace tecash
