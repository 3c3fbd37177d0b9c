#pragma once

// Divisible e-cash scheme: wallets of L coins spendable V at a time with a
// constant-size payment. Serial numbers are recovered by authorities from
// an ElGamal-style ciphertext using quadratic-size public parameters; the
// spend proof works over blinded copies of certified level bases.

#include "tecash/compact.hpp"  // SpendCheck, IdentifyOutcome, payment_info
#include "tecash/sps.hpp"
#include "tecash/withdraw.hpp"

#include <optional>

namespace tecash {

struct DivisibleLevel {
    G1 eta_l;    // g^{a_l}
    G1 zeta_l;   // zeta^{y^l}
    G1 theta_l;  // theta^{y^l}
    SpsSignature tau;  // certification of (zeta_l, theta_l)
};

struct DivisibleParams {
    std::uint32_t L = 0;
    G1 eta, gamma1, gamma2, psi;
    G2 psi_tilde;
    G1 zeta, theta;                    // zeta = g^z, theta = eta^z
    std::vector<DivisibleLevel> levels;  // level l at index l-1, l in [1, L]
    std::vector<G2> delta_tilde;         // g~^{y^k}, k in [0, L-1]
    SpsPublicKey sps_pk;
};

// Quadratic part held by authorities only: eta_tilde[l-1][k] = g~^{-a_l y^k}
// for l in [1, L], k in [0, l-1].
struct DivisibleAuthorityParams {
    std::vector<std::vector<G2>> eta_tilde;
};

// Dealer secrets retained exclusively for test oracles.
struct TestTrapdoors {
    Scalar y, z;
    std::vector<Scalar> a;  // a_l at index l-1
    SpsSecretKey sps_sk;
};

struct DivisibleSetup {
    DivisibleParams params;
    DivisibleAuthorityParams authority;
    TestTrapdoors trapdoors;
};

DivisibleSetup d_setup(std::uint32_t L, Rng& rng);

struct DivisiblePayment {
    G2 kappa;
    PsSignature sigma;      // randomized wallet signature
    G1 phi1, phi2;          // serial ciphertext (g^{r1}, zeta_l^{sn} eta_V^{r1})
    G1 phip1, phip2;        // tag ciphertext (g^{r2}, g^{R sk} theta_l^{sn} eta_V^{r2})
    G1 zeta_lo, theta_lo;   // blinded bases at level l
    G1 zeta_hi, theta_hi;   // blinded bases at level l+V-1
    G1 sps_r, sps_s;        // blinded certification signature
    G2 sps_t;
    Scalar R;               // hash of payment_info
    std::uint32_t V = 0;
    NizkProof pi;

    Bytes to_bytes() const;
    static bool from_bytes(BytesView in, DivisiblePayment& out);
};

std::optional<std::pair<Wallet, DivisiblePayment>> d_spend(
    const DivisibleParams& params, const VerificationKey& vk,
    const Scalar& user_sk, const Wallet& wallet, BytesView payment_info,
    std::uint32_t V, Rng& rng);

SpendCheck d_spend_vf(const DivisibleParams& params, const VerificationKey& vk,
                      const DivisiblePayment& payment, BytesView payment_info);

// Authority-side serial numbers SN_k = e(phi2, delta~_k) e(phi1, eta~_{V,k});
// throws if V exceeds the available eta~ rows.
std::vector<Gt> d_serial_numbers(const DivisibleParams& params,
                                 const DivisibleAuthorityParams& authority,
                                 const DivisiblePayment& payment);

IdentifyOutcome d_identify(const DivisibleParams& params,
                           const DivisibleAuthorityParams& authority,
                           const std::vector<G1>& pk_list,
                           const DivisiblePayment& pay1,
                           const DivisiblePayment& pay2, BytesView info1,
                           BytesView info2);

}  // namespace tecash
