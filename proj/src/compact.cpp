#include "tecash/compact.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace tecash {

namespace {

constexpr const char* kSpendTag = "TECASH-SPEND-COMPACT";
constexpr const char* kRkTag = "TECASH-RK";

// sigma-pairing contract for a randomized signature: h != 1 and
// e(h, kappa) = e(s, g~).
bool kappa_check(const PsSignature& sig, const G2& kappa) {
    if (sig.h.is_identity()) return false;
    std::array<G1, 2> ps = {sig.h, -sig.s};
    std::array<G2, 2> qs = {kappa, g2_generator()};
    return multi_pairing(ps, qs).is_unity();
}

// Witness order: sk, sn, r, o_c, then per coin (l_k, r_k, o_ak, mu_k,
// o_mu_k) at offset 4 + 5k.
NizkStatement spend_statement(const CompactParams& pp,
                              const VerificationKey& vk,
                              const CompactPayment& pay,
                              const std::vector<Scalar>& rks,
                              BytesView payment_info) {
    const G1& g = g1_generator();
    const G2& gt = g2_generator();
    const G2& a_sm = pp.sm_pk.alpha_tilde;
    const G2& b_sm = pp.sm_pk.betas[0].second;

    NizkStatement st;
    st.context = kSpendTag;
    st.witness_count = 4 + 5 * pay.V();
    st.message.assign(payment_info.begin(), payment_info.end());

    st.eqs.push_back({NizkElt{pay.kappa - vk.alpha_tilde},
                      {{NizkElt{vk.beta1_tilde}, 0},
                       {NizkElt{vk.beta2_tilde}, 1},
                       {NizkElt{gt}, 2}}});
    st.eqs.push_back(
        {NizkElt{pay.C}, {{NizkElt{g}, 3}, {NizkElt{pp.gamma1}, 1}}});
    for (std::uint32_t k = 0; k < pay.V(); k++) {
        const CompactCoin& c = pay.coins[k];
        std::uint32_t w = 4 + 5 * k;
        st.eqs.push_back(
            {NizkElt{c.A}, {{NizkElt{g}, w + 2}, {NizkElt{pp.gamma1}, w}}});
        st.eqs.push_back({NizkElt{c.kappa_k - a_sm},
                          {{NizkElt{b_sm}, w}, {NizkElt{gt}, w + 1}}});
        st.eqs.push_back({NizkElt{c.S}, {{NizkElt{pp.delta}, w + 3}}});
        st.eqs.push_back({NizkElt{pp.gamma1},
                          {{NizkElt{c.A + pay.C + pp.gamma1}, w + 3},
                           {NizkElt{g}, w + 4}}});
        st.eqs.push_back(
            {NizkElt{c.T}, {{NizkElt{g}, 0}, {NizkElt{g * rks[k]}, w + 3}}});
    }
    return st;
}

std::optional<CompactPayment> build_payment(const CompactParams& pp,
                                            const VerificationKey& vk,
                                            const Scalar& user_sk,
                                            const Wallet& wallet,
                                            BytesView payment_info,
                                            std::uint32_t start,
                                            std::uint32_t V, Rng& rng) {
    const G1& g = g1_generator();
    const G2& gt = g2_generator();

    CompactPayment pay;
    Scalar r = random_scalar(rng);
    auto [sigma2, gr] = ps_randomize(wallet.sigma, r, random_nonzero_scalar(rng));
    pay.sigma = sigma2;
    pay.kappa = vk.alpha_tilde + vk.beta1_tilde * user_sk +
                vk.beta2_tilde * wallet.sn + gr;

    Scalar o_c = random_scalar(rng);
    pay.C = g * o_c + pp.gamma1 * wallet.sn;

    std::vector<Scalar> wit = {user_sk, wallet.sn, r, o_c};
    std::vector<Scalar> rks;
    for (std::uint32_t k = 0; k < V; k++) {
        std::uint32_t lk = start + k;
        Scalar den = wallet.sn + Scalar::from_u64(lk + 1);
        if (den.is_zero()) return std::nullopt;
        Scalar mu = den.inverse();
        Scalar rk_ch = coin_challenge(payment_info, k);
        rks.push_back(rk_ch);

        CompactCoin coin;
        coin.S = pp.delta * mu;
        coin.T = g * (user_sk + rk_ch * mu);
        Scalar o_ak = random_scalar(rng);
        coin.A = g * o_ak + pp.gamma1 * Scalar::from_u64(lk);

        std::uint32_t sig_idx = lk < pp.L ? lk : pp.L - 1;
        Scalar r_k = random_scalar(rng);
        auto [rsig, gr_k] =
            ps_randomize(pp.range_sigs[sig_idx], r_k, random_nonzero_scalar(rng));
        coin.range_sig = rsig;
        coin.kappa_k = pp.sm_pk.alpha_tilde +
                       pp.sm_pk.betas[0].second * Scalar::from_u64(lk) + gr_k;

        Scalar o_mu = -(o_ak + o_c) * mu;
        wit.insert(wit.end(),
                   {Scalar::from_u64(lk), r_k, o_ak, mu, o_mu});
        pay.coins.push_back(std::move(coin));
    }

    NizkStatement st = spend_statement(pp, vk, pay, rks, payment_info);
    pay.pi = nizk_prove(st, wit, rng);
    return pay;
}

}  // namespace

CompactParams compact_setup(std::uint32_t L, Rng& rng) {
    if (L == 0) throw std::invalid_argument("L must be positive");
    CompactParams pp;
    pp.L = L;
    pp.gamma1 = g1_generator() * random_nonzero_scalar(rng);
    pp.gamma2 = g1_generator() * random_nonzero_scalar(rng);
    pp.delta = g1_generator() * random_nonzero_scalar(rng);
    auto [sm_sk, sm_pk] = ps_keygen(1, rng);
    pp.sm_pk = std::move(sm_pk);
    for (std::uint32_t l = 0; l < L; l++)
        pp.range_sigs.push_back(ps_sign(sm_sk, {Scalar::from_u64(l)}, rng));
    return pp;
}

Scalar coin_challenge(BytesView payment_info, std::uint32_t k) {
    Bytes msg(payment_info.begin(), payment_info.end());
    append_u64_be(msg, k);
    return hash_to_scalar(kRkTag, msg);
}

std::optional<std::pair<Wallet, CompactPayment>> spend(
    const CompactParams& params, const VerificationKey& vk,
    const Scalar& user_sk, const Wallet& wallet, BytesView payment_info,
    std::uint32_t V, Rng& rng) {
    if (wallet.scheme != SchemeTag::compact) return std::nullopt;
    if (V < 1 || V > params.L) return std::nullopt;
    if (wallet.l + V > params.L) return std::nullopt;  // l + V - 1 >= L
    if (payment_info.size() < kProviderIdLen) return std::nullopt;
    auto pay = build_payment(params, vk, user_sk, wallet, payment_info,
                             wallet.l, V, rng);
    if (!pay) return std::nullopt;
    Wallet next = wallet;
    next.l += V;
    return std::make_pair(next, std::move(*pay));
}

SpendCheck spend_vf(const CompactParams& params, const VerificationKey& vk,
                    const CompactPayment& payment, BytesView payment_info) {
    std::uint32_t V = payment.V();
    if (payment_info.size() < kProviderIdLen) return {V, SpendError::bad_info};
    if (V < 1 || V > params.L) return {V, SpendError::bad_proof};

    if (!kappa_check(payment.sigma, payment.kappa))
        return {V, SpendError::bad_signature};
    for (const auto& c : payment.coins)
        if (!kappa_check(c.range_sig, c.kappa_k))
            return {V, SpendError::bad_signature};

    std::map<Bytes, std::uint32_t> seen;
    for (std::uint32_t k = 0; k < V; k++)
        if (!seen.emplace(g1_to_bytes(payment.coins[k].S), k).second)
            return {V, SpendError::duplicate_serial};

    std::vector<Scalar> rks;
    for (std::uint32_t k = 0; k < V; k++)
        rks.push_back(coin_challenge(payment_info, k));
    NizkStatement st = spend_statement(params, vk, payment, rks, payment_info);
    if (!nizk_verify(st, payment.pi)) return {V, SpendError::bad_proof};
    return {V, SpendError::none};
}

IdentifyOutcome identify(const CompactParams& params,
                         const std::vector<G1>& pk_list,
                         const CompactPayment& pay1, const CompactPayment& pay2,
                         BytesView info1, BytesView info2) {
    (void)params;
    std::map<Bytes, std::uint32_t> serials1;
    for (std::uint32_t k = 0; k < pay1.V(); k++)
        serials1.emplace(g1_to_bytes(pay1.coins[k].S), k);

    for (std::uint32_t j = 0; j < pay2.V(); j++) {
        auto hit = serials1.find(g1_to_bytes(pay2.coins[j].S));
        if (hit == serials1.end()) continue;
        std::uint32_t k = hit->second;

        if (info1.size() == info2.size() &&
            std::equal(info1.begin(), info1.end(), info2.begin())) {
            IdentifyOutcome out;
            out.kind = IdentifyOutcome::double_deposit;
            out.info.assign(info1.begin(), info1.end());
            return out;
        }

        Scalar r1 = coin_challenge(info1, k);
        Scalar r2 = coin_challenge(info2, j);
        Scalar d = r1 - r2;
        if (d.is_zero()) return {IdentifyOutcome::unknown, {}, {}};
        // T_1 = g^{sk + r1 mu}, T_2 = g^{sk + r2 mu} for the shared coin:
        // (T_2^{r1} T_1^{-r2})^{1/(r1-r2)} = g^{sk}.
        G1 spk = (pay2.coins[j].T * r1 - pay1.coins[k].T * r2) * d.inverse();
        for (const G1& pk : pk_list)
            if (pk == spk) return {IdentifyOutcome::guilty, {}, pk};
        return {IdentifyOutcome::unknown, {}, {}};
    }
    return {IdentifyOutcome::distinct, {}, {}};
}

std::optional<CompactPayment> spend_at_index_unchecked(
    const CompactParams& params, const VerificationKey& vk,
    const Scalar& user_sk, const Wallet& wallet, BytesView payment_info,
    std::uint32_t start_index, std::uint32_t V, Rng& rng) {
    return build_payment(params, vk, user_sk, wallet, payment_info,
                         start_index, V, rng);
}

Bytes CompactPayment::to_bytes() const {
    Bytes out;
    append(out, g2_to_bytes(kappa));
    append(out, g1_to_bytes(sigma.h));
    append(out, g1_to_bytes(sigma.s));
    append(out, g1_to_bytes(C));
    append_u32(out, V());
    for (const auto& c : coins) {
        append(out, g1_to_bytes(c.S));
        append(out, g1_to_bytes(c.T));
        append(out, g1_to_bytes(c.A));
        append(out, g2_to_bytes(c.kappa_k));
        append(out, g1_to_bytes(c.range_sig.h));
        append(out, g1_to_bytes(c.range_sig.s));
    }
    append_chunk(out, pi.to_bytes());
    return out;
}

bool CompactPayment::from_bytes(BytesView in, CompactPayment& out) {
    try {
        ByteReader rd(in);
        if (!g2_from_bytes(rd.take(96), out.kappa)) return false;
        if (!g1_from_bytes(rd.take(48), out.sigma.h)) return false;
        if (!g1_from_bytes(rd.take(48), out.sigma.s)) return false;
        if (!g1_from_bytes(rd.take(48), out.C)) return false;
        std::uint32_t v = rd.u32();
        if (v == 0 || v > 4096) return false;
        out.coins.clear();
        for (std::uint32_t k = 0; k < v; k++) {
            CompactCoin c;
            if (!g1_from_bytes(rd.take(48), c.S)) return false;
            if (!g1_from_bytes(rd.take(48), c.T)) return false;
            if (!g1_from_bytes(rd.take(48), c.A)) return false;
            if (!g2_from_bytes(rd.take(96), c.kappa_k)) return false;
            if (!g1_from_bytes(rd.take(48), c.range_sig.h)) return false;
            if (!g1_from_bytes(rd.take(48), c.range_sig.s)) return false;
            out.coins.push_back(std::move(c));
        }
        Bytes pi_bytes = rd.chunk();
        if (!NizkProof::from_bytes(pi_bytes, out.pi)) return false;
        return rd.done();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace tecash
