#pragma once

// Threshold wallet issuance, shared by both schemes: the user commits to
// (sk, sn), proves the openings, each authority blindly signs its share,
// the user unblinds and aggregates t shares into a wallet.

#include "tecash/nizk.hpp"
#include "tecash/threshold.hpp"

#include <optional>

namespace tecash {

enum class SchemeTag : std::uint8_t { compact = 1, divisible = 2 };

struct UserKeyPair {
    Scalar sk;
    G1 pk;  // g^sk
};

UserKeyPair user_keygen(Rng& rng);

// Wallet of L coins of one denomination: an aggregated signature on
// (sk, sn) plus a spend counter. Compact counts coins 0..L-1 starting at
// 0; divisible counts 1..L starting at 1.
struct Wallet {
    PsSignature sigma;
    Scalar sn;
    std::uint32_t l = 0;
    SchemeTag scheme = SchemeTag::compact;
};

// The two commitment generators both schemes expose for (sk, sn).
struct IssuanceBases {
    G1 gamma1, gamma2;
};

struct WithdrawalRequest {
    G1 h;  // hash of com; the base every authority signs on
    G1 com, com1, com2;
    NizkProof pi;
};

struct RequestInfo {
    G1 h;
    Scalar o1, o2;
    Scalar sn;
};

struct BlindShare {
    G1 h, c;
};

struct PartialWallet {
    std::uint32_t index = 0;
    PsSignature sigma;
    Scalar sn;
};

std::pair<WithdrawalRequest, RequestInfo> request(const IssuanceBases& bases,
                                                  const UserKeyPair& user,
                                                  Rng& rng);

bool request_vf(const IssuanceBases& bases, const WithdrawalRequest& req,
                const G1& user_pk);

// c = h^{x_i} com1^{y_{i,1}} com2^{y_{i,2}}.
BlindShare withdraw(const AuthorityKeyShare& share,
                    const WithdrawalRequest& req);

// Unblinds and checks the share against the authority's public share key.
std::optional<PartialWallet> withdraw_vf(const AuthorityPublicShare& pub_share,
                                         const Scalar& user_sk,
                                         const BlindShare& response,
                                         const RequestInfo& info);

// Exactly t partials with distinct indices and a common sn; the aggregate
// must verify on (sk, sn) under vk.
std::optional<Wallet> create_wallet(const VerificationKey& vk,
                                    const Scalar& user_sk,
                                    const std::vector<PartialWallet>& partials,
                                    std::uint32_t t, SchemeTag scheme);

}  // namespace tecash
