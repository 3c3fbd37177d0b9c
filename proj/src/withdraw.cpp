#include "tecash/withdraw.hpp"

#include <set>
#include <stdexcept>

namespace tecash {

namespace {

constexpr const char* kRequestTag = "TECASH-REQ";
constexpr const char* kComHashTag = "TECASH-H";

// Witness order: (sk, sn, o, o1, o2).
NizkStatement request_statement(const IssuanceBases& bases, const G1& user_pk,
                                const G1& com, const G1& com1, const G1& com2,
                                const G1& h) {
    const G1& g = g1_generator();
    NizkStatement st;
    st.context = kRequestTag;
    st.witness_count = 5;
    st.eqs.push_back({NizkElt{com},
                      {{NizkElt{g}, 2},
                       {NizkElt{bases.gamma1}, 0},
                       {NizkElt{bases.gamma2}, 1}}});
    st.eqs.push_back({NizkElt{user_pk}, {{NizkElt{g}, 0}}});
    st.eqs.push_back({NizkElt{com1}, {{NizkElt{g}, 3}, {NizkElt{h}, 0}}});
    st.eqs.push_back({NizkElt{com2}, {{NizkElt{g}, 4}, {NizkElt{h}, 1}}});
    return st;
}

}  // namespace

UserKeyPair user_keygen(Rng& rng) {
    Scalar sk = random_nonzero_scalar(rng);
    return {sk, g1_generator() * sk};
}

std::pair<WithdrawalRequest, RequestInfo> request(const IssuanceBases& bases,
                                                  const UserKeyPair& user,
                                                  Rng& rng) {
    const G1& g = g1_generator();
    Scalar sn = random_scalar(rng);
    Scalar o = random_scalar(rng);
    G1 com = g * o + bases.gamma1 * user.sk + bases.gamma2 * sn;
    G1 h = hash_to_g1(kComHashTag, g1_to_bytes(com));
    Scalar o1 = random_scalar(rng), o2 = random_scalar(rng);
    G1 com1 = g * o1 + h * user.sk;
    G1 com2 = g * o2 + h * sn;

    NizkStatement st = request_statement(bases, user.pk, com, com1, com2, h);
    NizkProof pi = nizk_prove(st, {user.sk, sn, o, o1, o2}, rng);
    return {WithdrawalRequest{h, com, com1, com2, std::move(pi)},
            RequestInfo{h, o1, o2, sn}};
}

bool request_vf(const IssuanceBases& bases, const WithdrawalRequest& req,
                const G1& user_pk) {
    if (req.h != hash_to_g1(kComHashTag, g1_to_bytes(req.com))) return false;
    NizkStatement st = request_statement(bases, user_pk, req.com, req.com1,
                                         req.com2, req.h);
    return nizk_verify(st, req.pi);
}

BlindShare withdraw(const AuthorityKeyShare& share,
                    const WithdrawalRequest& req) {
    G1 c = req.h * share.x + req.com1 * share.y1 + req.com2 * share.y2;
    return {req.h, c};
}

std::optional<PartialWallet> withdraw_vf(const AuthorityPublicShare& pub_share,
                                         const Scalar& user_sk,
                                         const BlindShare& response,
                                         const RequestInfo& info) {
    if (response.h != info.h) return std::nullopt;
    G1 s = response.c - pub_share.beta1 * info.o1 - pub_share.beta2 * info.o2;
    PsSignature sigma{response.h, s};
    if (!ps_verify(authority_share_pk(pub_share), sigma, {user_sk, info.sn}))
        return std::nullopt;
    return PartialWallet{pub_share.index, sigma, info.sn};
}

std::optional<Wallet> create_wallet(const VerificationKey& vk,
                                    const Scalar& user_sk,
                                    const std::vector<PartialWallet>& partials,
                                    std::uint32_t t, SchemeTag scheme) {
    if (partials.size() != t || t == 0) return std::nullopt;
    std::vector<std::uint32_t> indices;
    std::vector<PsSignature> sigs;
    std::set<std::uint32_t> seen;
    for (const auto& p : partials) {
        if (!seen.insert(p.index).second) return std::nullopt;
        if (!(p.sn == partials[0].sn)) return std::nullopt;
        indices.push_back(p.index);
        sigs.push_back(p.sigma);
    }
    PsSignature sigma;
    try {
        sigma = aggregate_signature_shares(indices, sigs, t);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!ps_verify(verification_pk(vk), sigma, {user_sk, partials[0].sn}))
        return std::nullopt;
    std::uint32_t l0 = scheme == SchemeTag::divisible ? 1 : 0;
    return Wallet{sigma, partials[0].sn, l0, scheme};
}

}  // namespace tecash
