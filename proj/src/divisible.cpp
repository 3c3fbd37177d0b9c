#include "tecash/divisible.hpp"

#include <array>
#include <stdexcept>

namespace tecash {

namespace {

constexpr const char* kSpendTag = "TECASH-SPEND-DIV";
constexpr const char* kRTag = "TECASH-R-DIV";

bool kappa_check(const PsSignature& sig, const G2& kappa) {
    if (sig.h.is_identity()) return false;
    std::array<G1, 2> ps = {sig.h, -sig.s};
    std::array<G2, 2> qs = {kappa, g2_generator()};
    return multi_pairing(ps, qs).is_unity();
}

Gt pair2(const G1& a, const G2& x, const G1& b, const G2& y) {
    std::array<G1, 2> ps = {a, b};
    std::array<G2, 2> qs = {x, y};
    return multi_pairing(ps, qs);
}

// Witness order: sk, sn, r, r1, r2, rho_zlo, rho_tlo, rho_zhi, rho_thi,
// rho_R, rho_S, rho_T, rho1 = -sn rho_zlo, rho2 = -sn rho_tlo,
// rho3 = rho_R rho_T.
NizkStatement spend_statement(const DivisibleParams& pp,
                              const VerificationKey& vk,
                              const DivisiblePayment& pay,
                              BytesView payment_info) {
    const G1& g = g1_generator();
    const G2& gt = g2_generator();
    const G2& dtv = pp.delta_tilde.at(pay.V - 1);
    const G1& eta_v = pp.levels.at(pay.V - 1).eta_l;

    NizkStatement st;
    st.context = kSpendTag;
    st.witness_count = 15;
    st.message.assign(payment_info.begin(), payment_info.end());

    // Wallet signature representation.
    st.eqs.push_back({NizkElt{pay.kappa - vk.alpha_tilde},
                      {{NizkElt{vk.beta1_tilde}, 0},
                       {NizkElt{vk.beta2_tilde}, 1},
                       {NizkElt{gt}, 2}}});
    // Serial ciphertext.
    st.eqs.push_back({NizkElt{pay.phi1}, {{NizkElt{g}, 3}}});
    st.eqs.push_back({NizkElt{pay.phi2},
                      {{NizkElt{pay.zeta_lo}, 1},
                       {NizkElt{pp.psi}, 12},
                       {NizkElt{eta_v}, 3}}});
    // Tag ciphertext.
    st.eqs.push_back({NizkElt{pay.phip1}, {{NizkElt{g}, 4}}});
    st.eqs.push_back({NizkElt{pay.phip2},
                      {{NizkElt{g * pay.R}, 0},
                       {NizkElt{pay.theta_lo}, 1},
                       {NizkElt{pp.psi}, 13},
                       {NizkElt{eta_v}, 4}}});
    // Level shift by y^{V-1} for both base families.
    st.eqs.push_back(
        {NizkElt{pair2(pay.zeta_hi, gt, -pay.zeta_lo, dtv)},
         {{NizkElt{pairing(-pp.psi, dtv)}, 5}, {NizkElt{pairing(pp.psi, gt)}, 7}}});
    st.eqs.push_back(
        {NizkElt{pair2(pay.theta_hi, gt, -pay.theta_lo, dtv)},
         {{NizkElt{pairing(-pp.psi, dtv)}, 6}, {NizkElt{pairing(pp.psi, gt)}, 8}}});
    // Possession of a certification signature on the high-level bases.
    {
        std::array<G1, 5> ps = {g, -pay.sps_r, -pay.sps_s, -pay.zeta_hi,
                                -pay.theta_hi};
        std::array<G2, 5> qs = {pp.sps_pk.Z, pp.sps_pk.Y, gt, pp.sps_pk.W1,
                                pp.sps_pk.W2};
        st.eqs.push_back({NizkElt{multi_pairing(ps, qs)},
                          {{NizkElt{pairing(-pp.psi, pp.sps_pk.Y)}, 9},
                           {NizkElt{pairing(-pp.psi, gt)}, 10},
                           {NizkElt{pairing(-pp.psi, pp.sps_pk.W1)}, 7},
                           {NizkElt{pairing(-pp.psi, pp.sps_pk.W2)}, 8}}});
    }
    st.eqs.push_back(
        {NizkElt{pair2(g, gt, -pay.sps_r, pay.sps_t)},
         {{NizkElt{pairing(-pay.sps_r, pp.psi_tilde)}, 11},
          {NizkElt{pairing(-pp.psi, pay.sps_t)}, 9},
          {NizkElt{pairing(pp.psi, pp.psi_tilde)}, 14}}});
    return st;
}

Gt tag_value(const DivisibleParams& pp,
             const DivisibleAuthorityParams& auth, const DivisiblePayment& pay,
             std::uint32_t k) {
    return pair2(pay.phip2, pp.delta_tilde.at(k), pay.phip1,
                 auth.eta_tilde.at(pay.V - 1).at(k));
}

}  // namespace

DivisibleSetup d_setup(std::uint32_t L, Rng& rng) {
    if (L == 0) throw std::invalid_argument("L must be positive");
    const G1& g = g1_generator();
    const G2& gt = g2_generator();

    DivisibleSetup out;
    DivisibleParams& pp = out.params;
    pp.L = L;
    pp.eta = g * random_nonzero_scalar(rng);
    pp.gamma1 = g * random_nonzero_scalar(rng);
    pp.gamma2 = g * random_nonzero_scalar(rng);
    pp.psi = g * random_nonzero_scalar(rng);
    pp.psi_tilde = gt * random_nonzero_scalar(rng);

    Scalar y = random_nonzero_scalar(rng);
    Scalar z = random_nonzero_scalar(rng);
    pp.zeta = g * z;
    pp.theta = pp.eta * z;

    auto [sps_sk, sps_pk] = sps_keygen(rng);
    pp.sps_pk = sps_pk;

    Scalar yk = Scalar::one();
    for (std::uint32_t k = 0; k < L; k++) {
        pp.delta_tilde.push_back(gt * yk);
        yk = yk * y;
    }

    out.trapdoors = {y, z, {}, sps_sk};
    Scalar yl = y;
    for (std::uint32_t l = 1; l <= L; l++) {
        Scalar a = random_nonzero_scalar(rng);
        out.trapdoors.a.push_back(a);
        DivisibleLevel lvl;
        lvl.eta_l = g * a;
        lvl.zeta_l = pp.zeta * yl;
        lvl.theta_l = pp.theta * yl;
        lvl.tau = sps_sign(sps_sk, lvl.zeta_l, lvl.theta_l, rng);
        pp.levels.push_back(std::move(lvl));

        std::vector<G2> row;
        Scalar ayk = a;  // a_l y^k as k advances
        for (std::uint32_t k = 0; k < l; k++) {
            row.push_back(gt * (-ayk));
            ayk = ayk * y;
        }
        out.authority.eta_tilde.push_back(std::move(row));
        yl = yl * y;
    }
    return out;
}

std::optional<std::pair<Wallet, DivisiblePayment>> d_spend(
    const DivisibleParams& params, const VerificationKey& vk,
    const Scalar& user_sk, const Wallet& wallet, BytesView payment_info,
    std::uint32_t V, Rng& rng) {
    if (wallet.scheme != SchemeTag::divisible) return std::nullopt;
    if (V < 1 || wallet.l < 1) return std::nullopt;
    if (wallet.l + V - 1 > params.L) return std::nullopt;
    if (payment_info.size() < kProviderIdLen) return std::nullopt;

    const G1& g = g1_generator();
    std::uint32_t lo = wallet.l, hi = wallet.l + V - 1;  // 1-based levels
    const DivisibleLevel& level_lo = params.levels[lo - 1];
    const DivisibleLevel& level_hi = params.levels[hi - 1];
    const G1& eta_v = params.levels[V - 1].eta_l;

    DivisiblePayment pay;
    pay.V = V;
    pay.R = hash_to_scalar(kRTag, payment_info);

    Scalar r = random_scalar(rng);
    auto [sigma2, gr] = ps_randomize(wallet.sigma, r, random_nonzero_scalar(rng));
    pay.sigma = sigma2;
    pay.kappa = vk.alpha_tilde + vk.beta1_tilde * user_sk +
                vk.beta2_tilde * wallet.sn + gr;

    Scalar r1 = random_scalar(rng), r2 = random_scalar(rng);
    pay.phi1 = g * r1;
    pay.phi2 = level_lo.zeta_l * wallet.sn + eta_v * r1;
    pay.phip1 = g * r2;
    pay.phip2 = g * (pay.R * user_sk) + level_lo.theta_l * wallet.sn +
                eta_v * r2;

    Scalar rho_zlo = random_scalar(rng), rho_tlo = random_scalar(rng);
    Scalar rho_zhi = random_scalar(rng), rho_thi = random_scalar(rng);
    Scalar rho_r = random_scalar(rng), rho_s = random_scalar(rng);
    Scalar rho_t = random_scalar(rng);
    pay.zeta_lo = level_lo.zeta_l + params.psi * rho_zlo;
    pay.theta_lo = level_lo.theta_l + params.psi * rho_tlo;
    pay.zeta_hi = level_hi.zeta_l + params.psi * rho_zhi;
    pay.theta_hi = level_hi.theta_l + params.psi * rho_thi;
    pay.sps_r = level_hi.tau.R + params.psi * rho_r;
    pay.sps_s = level_hi.tau.S + params.psi * rho_s;
    pay.sps_t = level_hi.tau.T + params.psi_tilde * rho_t;

    std::vector<Scalar> wit = {user_sk, wallet.sn, r, r1, r2,
                               rho_zlo, rho_tlo, rho_zhi, rho_thi,
                               rho_r, rho_s, rho_t,
                               -(wallet.sn * rho_zlo),
                               -(wallet.sn * rho_tlo),
                               rho_r * rho_t};
    NizkStatement st = spend_statement(params, vk, pay, payment_info);
    pay.pi = nizk_prove(st, wit, rng);

    Wallet next = wallet;
    next.l += V;
    return std::make_pair(next, std::move(pay));
}

SpendCheck d_spend_vf(const DivisibleParams& params, const VerificationKey& vk,
                      const DivisiblePayment& payment, BytesView payment_info) {
    std::uint32_t V = payment.V;
    if (payment_info.size() < kProviderIdLen) return {V, SpendError::bad_info};
    if (V < 1 || V > params.L) return {V, SpendError::bad_proof};
    if (payment.R != hash_to_scalar(kRTag, payment_info))
        return {V, SpendError::bad_proof};
    if (!kappa_check(payment.sigma, payment.kappa))
        return {V, SpendError::bad_signature};
    NizkStatement st = spend_statement(params, vk, payment, payment_info);
    if (!nizk_verify(st, payment.pi)) return {V, SpendError::bad_proof};
    return {V, SpendError::none};
}

std::vector<Gt> d_serial_numbers(const DivisibleParams& params,
                                 const DivisibleAuthorityParams& authority,
                                 const DivisiblePayment& payment) {
    if (payment.V < 1 || payment.V > authority.eta_tilde.size())
        throw std::invalid_argument("V out of range");
    std::vector<Gt> out;
    for (std::uint32_t k = 0; k < payment.V; k++)
        out.push_back(pair2(payment.phi2, params.delta_tilde.at(k),
                            payment.phi1,
                            authority.eta_tilde[payment.V - 1][k]));
    return out;
}

IdentifyOutcome d_identify(const DivisibleParams& params,
                           const DivisibleAuthorityParams& authority,
                           const std::vector<G1>& pk_list,
                           const DivisiblePayment& pay1,
                           const DivisiblePayment& pay2, BytesView info1,
                           BytesView info2) {
    std::vector<Gt> sn1 = d_serial_numbers(params, authority, pay1);
    std::vector<Gt> sn2 = d_serial_numbers(params, authority, pay2);
    for (std::uint32_t k1 = 0; k1 < sn1.size(); k1++)
        for (std::uint32_t k2 = 0; k2 < sn2.size(); k2++) {
            if (sn1[k1] != sn2[k2]) continue;

            if (info1.size() == info2.size() &&
                std::equal(info1.begin(), info1.end(), info2.begin())) {
                IdentifyOutcome out;
                out.kind = IdentifyOutcome::double_deposit;
                out.info.assign(info1.begin(), info1.end());
                return out;
            }

            // T1 T2^{-1} = e(g^{sk}, delta~_{k1}^{R1} delta~_{k2}^{-R2})
            // when both tags stem from one coin.
            Gt quotient = tag_value(params, authority, pay1, k1) *
                          tag_value(params, authority, pay2, k2).inverse();
            G2 probe = params.delta_tilde.at(k1) * pay1.R -
                       params.delta_tilde.at(k2) * pay2.R;
            for (const G1& pk : pk_list)
                if (pairing(pk, probe) == quotient)
                    return {IdentifyOutcome::guilty, {}, pk};
            return {IdentifyOutcome::unknown, {}, {}};
        }
    return {IdentifyOutcome::distinct, {}, {}};
}

Bytes DivisiblePayment::to_bytes() const {
    Bytes out;
    append(out, g2_to_bytes(kappa));
    append(out, g1_to_bytes(sigma.h));
    append(out, g1_to_bytes(sigma.s));
    for (const G1* p : {&phi1, &phi2, &phip1, &phip2, &zeta_lo, &theta_lo,
                        &zeta_hi, &theta_hi, &sps_r, &sps_s})
        append(out, g1_to_bytes(*p));
    append(out, g2_to_bytes(sps_t));
    append(out, scalar_to_bytes(R));
    append_u32(out, V);
    append_chunk(out, pi.to_bytes());
    return out;
}

bool DivisiblePayment::from_bytes(BytesView in, DivisiblePayment& out) {
    try {
        ByteReader rd(in);
        if (!g2_from_bytes(rd.take(96), out.kappa)) return false;
        if (!g1_from_bytes(rd.take(48), out.sigma.h)) return false;
        if (!g1_from_bytes(rd.take(48), out.sigma.s)) return false;
        for (G1* p : {&out.phi1, &out.phi2, &out.phip1, &out.phip2,
                      &out.zeta_lo, &out.theta_lo, &out.zeta_hi,
                      &out.theta_hi, &out.sps_r, &out.sps_s})
            if (!g1_from_bytes(rd.take(48), *p)) return false;
        if (!g2_from_bytes(rd.take(96), out.sps_t)) return false;
        if (!scalar_from_bytes(rd.take(32), out.R)) return false;
        out.V = rd.u32();
        if (out.V == 0 || out.V > 4096) return false;
        Bytes pi_bytes = rd.chunk();
        if (!NizkProof::from_bytes(pi_bytes, out.pi)) return false;
        return rd.done();
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace tecash
