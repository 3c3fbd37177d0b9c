#include "tecash/commit.hpp"
#include "tecash/ps.hpp"
#include "tecash/sps.hpp"
#include "tecash/threshold.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace tecash;

namespace {

PedersenParams test_pedersen(Rng& rng, std::size_t q) {
    PedersenParams pp;
    pp.g = g1_generator();
    for (std::size_t i = 0; i < q; i++)
        pp.bases.push_back(g1_generator() * random_nonzero_scalar(rng));
    return pp;
}

}  // namespace

TEST_CASE("pedersen commitments") {
    curve_init();
    DrbgRng rng(1001);
    PedersenParams pp = test_pedersen(rng, 2);
    std::vector<Scalar> msgs = {random_scalar(rng), random_scalar(rng)};
    Scalar o = random_scalar(rng);
    G1 com = pedersen_commit(pp, msgs, o);

    CHECK(pedersen_verify(pp, com, msgs, o));
    // Homomorphism oracle: com(m) * com(m') == com(m + m').
    std::vector<Scalar> msgs2 = {random_scalar(rng), random_scalar(rng)};
    Scalar o2 = random_scalar(rng);
    G1 com2 = pedersen_commit(pp, msgs2, o2);
    std::vector<Scalar> sum = {msgs[0] + msgs2[0], msgs[1] + msgs2[1]};
    CHECK(pedersen_commit(pp, sum, o + o2) == com + com2);

    CHECK_FALSE(pedersen_verify(pp, com, msgs2, o));
    CHECK_FALSE(pedersen_verify(pp, com, msgs, o + Scalar::one()));
    CHECK_THROWS_AS(pedersen_commit(pp, {Scalar::one()}, o),
                    std::invalid_argument);
}

TEST_CASE("ps signatures") {
    curve_init();
    DrbgRng rng(1002);
    auto [sk, pk] = ps_keygen(2, rng);
    std::vector<Scalar> msgs = {random_scalar(rng), random_scalar(rng)};
    PsSignature sig = ps_sign(sk, msgs, rng);
    CHECK(ps_verify(pk, sig, msgs));

    // Oracle: signature is deterministic given the base.
    PsSignature again = ps_sign_on_base(sk, sig.h, msgs);
    CHECK(again.s == sig.s);

    std::vector<Scalar> wrong = {msgs[0], msgs[1] + Scalar::one()};
    CHECK_FALSE(ps_verify(pk, sig, wrong));
    CHECK_FALSE(ps_verify(pk, {G1::identity(), G1::identity()}, msgs));
    CHECK_THROWS_AS(ps_verify(pk, sig, {msgs[0]}), std::invalid_argument);
    CHECK_THROWS_AS(ps_sign_on_base(sk, G1::identity(), msgs),
                    std::invalid_argument);
}

TEST_CASE("ps randomization hides the signature, keeps the contract") {
    curve_init();
    DrbgRng rng(1003);
    auto [sk, pk] = ps_keygen(2, rng);
    std::vector<Scalar> msgs = {random_scalar(rng), random_scalar(rng)};
    PsSignature sig = ps_sign(sk, msgs, rng);

    Scalar r = random_scalar(rng), rp = random_nonzero_scalar(rng);
    auto [sig2, gr] = ps_randomize(sig, r, rp);
    CHECK(sig2.h != sig.h);

    // e(h', kappa) == e(s', g~) with kappa = alpha~ beta~_1^{m1} beta~_2^{m2} g~^r.
    G2 kappa = pk.alpha_tilde + pk.betas[0].second * msgs[0] +
               pk.betas[1].second * msgs[1] + gr;
    CHECK(pairing(sig2.h, kappa) == pairing(sig2.s, g2_generator()));
    // Kappa for the wrong message fails.
    G2 bad = kappa + pk.betas[0].second;
    CHECK(pairing(sig2.h, bad) != pairing(sig2.s, g2_generator()));
    CHECK_THROWS_AS(ps_randomize(sig, r, Scalar::zero()), std::invalid_argument);
}

TEST_CASE("structure-preserving signatures") {
    curve_init();
    DrbgRng rng(1004);
    auto [sk, pk] = sps_keygen(rng);
    G1 m1 = g1_generator() * random_nonzero_scalar(rng);
    G1 m2 = g1_generator() * random_nonzero_scalar(rng);
    SpsSignature sig = sps_sign(sk, m1, m2, rng);
    CHECK(sps_verify(pk, sig, m1, m2));
    CHECK_FALSE(sps_verify(pk, sig, m2, m1));
    CHECK_FALSE(sps_verify(pk, sig, m1, m2 + g1_generator()));

    SpsSignature tampered = sig;
    tampered.S = tampered.S + g1_generator();
    CHECK_FALSE(sps_verify(pk, tampered, m1, m2));
    tampered = sig;
    tampered.T = tampered.T + g2_generator();
    CHECK_FALSE(sps_verify(pk, tampered, m1, m2));

    // A second keypair rejects the first key's signature.
    auto [sk2, pk2] = sps_keygen(rng);
    CHECK_FALSE(sps_verify(pk2, sig, m1, m2));
}

TEST_CASE("lagrange coefficients") {
    curve_init();
    // Oracle: interpolating a known polynomial at 0.
    // f(x) = 7 + 3x + 5x^2, f(0) = 7, over points {1, 2, 4}.
    auto f = [](std::uint64_t x) {
        return Scalar::from_u64(7 + 3 * x + 5 * x * x);
    };
    std::vector<std::uint32_t> idx = {1, 2, 4};
    std::vector<Scalar> ls = lagrange_at_zero(idx);
    Scalar acc = Scalar::zero();
    for (std::size_t k = 0; k < idx.size(); k++) acc = acc + ls[k] * f(idx[k]);
    CHECK(acc == Scalar::from_u64(7));

    // Closed form for {1, 2}: l_1 = 2, l_2 = -1.
    std::vector<Scalar> ls2 = lagrange_at_zero({1, 2});
    CHECK(ls2[0] == Scalar::from_u64(2));
    CHECK(ls2[1] == -Scalar::one());

    CHECK_THROWS_AS(lagrange_at_zero({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(lagrange_at_zero({0, 1}), std::invalid_argument);
}

TEST_CASE("threshold key sharing and signature aggregation") {
    curve_init();
    DrbgRng rng(1005);
    std::uint32_t t = 3, n = 5;
    ThresholdKeys keys = ttp_keygen(t, n, rng);
    REQUIRE(keys.shares.size() == n);

    // Each public share matches its secret share.
    for (std::uint32_t i = 0; i < n; i++) {
        CHECK(keys.public_shares[i].alpha_tilde ==
              g2_generator() * keys.shares[i].x);
        CHECK(keys.public_shares[i].beta1 == g1_generator() * keys.shares[i].y1);
    }

    std::vector<Scalar> msgs = {random_scalar(rng), random_scalar(rng)};
    G1 h = g1_generator() * random_nonzero_scalar(rng);
    auto share_sig = [&](std::uint32_t i) {  // 1-based
        PsSecretKey sk{keys.shares[i - 1].x,
                       {keys.shares[i - 1].y1, keys.shares[i - 1].y2}};
        return ps_sign_on_base(sk, h, msgs);
    };

    // Every size-t subset aggregates to a signature under the combined key.
    PsPublicKey vk = verification_pk(keys.vk);
    for (std::uint32_t a = 1; a <= n; a++)
        for (std::uint32_t b = a + 1; b <= n; b++)
            for (std::uint32_t c = b + 1; c <= n; c++) {
                std::vector<std::uint32_t> idx = {a, b, c};
                std::vector<PsSignature> parts = {share_sig(a), share_sig(b),
                                                  share_sig(c)};
                PsSignature agg =
                    aggregate_signature_shares(idx, parts, t);
                CHECK(ps_verify(vk, agg, msgs));
            }

    // Partial signatures verify under the per-authority share key.
    for (std::uint32_t i = 1; i <= n; i++)
        CHECK(ps_verify(authority_share_pk(keys.public_shares[i - 1]),
                        share_sig(i), msgs));

    // t-1 shares padded with a repeat, or a wrong count, are rejected.
    CHECK_THROWS_AS(aggregate_signature_shares({1, 2}, {share_sig(1),
                                                        share_sig(2)}, t),
                    std::invalid_argument);
    CHECK_THROWS_AS(aggregate_signature_shares({1, 2, 2},
                                               {share_sig(1), share_sig(2),
                                                share_sig(2)}, t),
                    std::invalid_argument);
    CHECK_THROWS_AS(ttp_keygen(4, 3, rng), std::invalid_argument);

    // An aggregate from fewer honest shares (wrong subset coefficients)
    // does not verify under the combined key.
    std::vector<Scalar> ls = lagrange_at_zero({1, 2});
    G1 s_bad = share_sig(1).s * ls[0] + share_sig(2).s * ls[1];
    CHECK_FALSE(ps_verify(vk, {h, s_bad}, msgs));
}
