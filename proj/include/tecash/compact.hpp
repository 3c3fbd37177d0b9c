#pragma once

// Compact e-cash scheme: wallets of L fixed-value coins, spends of V coins
// publishing one serial number and one double-spend tag per coin, with a
// signature-based set-membership argument that each spent index lies in
// [0, L-1].

#include "tecash/withdraw.hpp"

#include <optional>

namespace tecash {

// payment_info convention: the first kProviderIdLen bytes name the
// provider, the rest is a caller-chosen nonce plus free bytes.
constexpr std::size_t kProviderIdLen = 16;

struct CompactParams {
    G1 gamma1, gamma2, delta;
    std::uint32_t L = 0;
    PsPublicKey sm_pk;                 // one-message key for index membership
    std::vector<PsSignature> range_sigs;  // sigma_l on message l, l in [0, L-1]
};

CompactParams compact_setup(std::uint32_t L, Rng& rng);

struct CompactCoin {
    G1 S;        // serial number delta^{1/(sn+l_k+1)}
    G1 T;        // double-spend tag g^{sk + R_k/(sn+l_k+1)}
    G1 A;        // commitment to the coin index
    G2 kappa_k;  // randomized membership verification aggregate
    PsSignature range_sig;  // randomized sigma_{l_k}
};

struct CompactPayment {
    G2 kappa;
    PsSignature sigma;  // randomized wallet signature
    G1 C;               // commitment to sn
    std::vector<CompactCoin> coins;
    NizkProof pi;

    std::uint32_t V() const { return static_cast<std::uint32_t>(coins.size()); }
    Bytes to_bytes() const;
    static bool from_bytes(BytesView in, CompactPayment& out);
};

// Per-coin challenge scalar R_k bound to the payment context.
Scalar coin_challenge(BytesView payment_info, std::uint32_t k);

// Spends coin indices l..l+V-1; rejects (nullopt) if V is out of range or
// the wallet has fewer than V coins left. Returns the advanced wallet.
std::optional<std::pair<Wallet, CompactPayment>> spend(
    const CompactParams& params, const VerificationKey& vk,
    const Scalar& user_sk, const Wallet& wallet, BytesView payment_info,
    std::uint32_t V, Rng& rng);

enum class SpendError : std::uint8_t {
    none = 0,
    bad_info,
    bad_signature,
    duplicate_serial,
    bad_proof,
};

struct SpendCheck {
    std::uint32_t V = 0;
    SpendError error = SpendError::none;
    bool ok() const { return error == SpendError::none; }
};

SpendCheck spend_vf(const CompactParams& params, const VerificationKey& vk,
                    const CompactPayment& payment, BytesView payment_info);

struct IdentifyOutcome {
    enum Kind : std::uint8_t { distinct, double_deposit, guilty, unknown };
    Kind kind = distinct;
    Bytes info;  // set for double_deposit
    G1 pk;       // set for guilty
};

IdentifyOutcome identify(const CompactParams& params,
                         const std::vector<G1>& pk_list,
                         const CompactPayment& pay1, const CompactPayment& pay2,
                         BytesView info1, BytesView info2);

// Test-only: builds a payment starting at an arbitrary coin index without
// the range guard, substituting the last available range signature for
// out-of-range indices. Lets tests confirm spend_vf rejects indices >= L.
std::optional<CompactPayment> spend_at_index_unchecked(
    const CompactParams& params, const VerificationKey& vk,
    const Scalar& user_sk, const Wallet& wallet, BytesView payment_info,
    std::uint32_t start_index, std::uint32_t V, Rng& rng);

}  // namespace tecash
