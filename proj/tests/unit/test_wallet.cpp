#include "tecash/withdraw.hpp"

#include <doctest.h>

using namespace tecash;

namespace {

IssuanceBases test_bases(Rng& rng) {
    return {g1_generator() * random_nonzero_scalar(rng),
            g1_generator() * random_nonzero_scalar(rng)};
}

}  // namespace

TEST_CASE("withdrawal request round trip") {
    curve_init();
    DrbgRng rng(3001);
    IssuanceBases bases = test_bases(rng);
    UserKeyPair user = user_keygen(rng);
    auto [req, info] = request(bases, user, rng);

    CHECK(request_vf(bases, req, user.pk));

    UserKeyPair other = user_keygen(rng);
    CHECK_FALSE(request_vf(bases, req, other.pk));

    // Fresh randomness every request.
    auto [req2, info2] = request(bases, user, rng);
    CHECK(req2.com != req.com);
    CHECK(info2.sn != info.sn);

    // h replaced or commitments mutated -> reject.
    WithdrawalRequest bad = req;
    bad.h = g1_generator();
    CHECK_FALSE(request_vf(bases, bad, user.pk));
    bad = req;
    bad.com1 = bad.com1 + g1_generator();
    CHECK_FALSE(request_vf(bases, bad, user.pk));
    bad = req;
    bad.com = bad.com + g1_generator();  // breaks h = H(com)
    CHECK_FALSE(request_vf(bases, bad, user.pk));
}

TEST_CASE("blind issuance and unblinding") {
    curve_init();
    DrbgRng rng(3002);
    IssuanceBases bases = test_bases(rng);
    ThresholdKeys keys = ttp_keygen(2, 3, rng);
    UserKeyPair user = user_keygen(rng);
    auto [req, info] = request(bases, user, rng);

    BlindShare b1 = withdraw(keys.shares[0], req);
    BlindShare b2 = withdraw(keys.shares[1], req);
    CHECK(b1.h == b2.h);
    CHECK(b1.c != b2.c);

    auto p1 = withdraw_vf(keys.public_shares[0], user.sk, b1, info);
    REQUIRE(p1.has_value());
    CHECK(p1->index == 1);
    CHECK(ps_verify(authority_share_pk(keys.public_shares[0]), p1->sigma,
                    {user.sk, info.sn}));

    // Oracle: unblinding strips exactly the committed randomness — the
    // unblinded share equals the share-key signature on base h directly.
    PsSecretKey share_sk{keys.shares[0].x,
                         {keys.shares[0].y1, keys.shares[0].y2}};
    PsSignature direct = ps_sign_on_base(share_sk, req.h, {user.sk, info.sn});
    CHECK(p1->sigma.s == direct.s);

    // Mismatched h or corrupted c -> reject.
    BlindShare bad = b1;
    bad.h = g1_generator();
    CHECK_FALSE(withdraw_vf(keys.public_shares[0], user.sk, bad, info).has_value());
    bad = b1;
    bad.c = bad.c + g1_generator();
    CHECK_FALSE(withdraw_vf(keys.public_shares[0], user.sk, bad, info).has_value());
}

TEST_CASE("wallet creation from t shares") {
    curve_init();
    DrbgRng rng(3003);
    IssuanceBases bases = test_bases(rng);
    std::uint32_t t = 3, n = 5;
    ThresholdKeys keys = ttp_keygen(t, n, rng);
    UserKeyPair user = user_keygen(rng);
    auto [req, info] = request(bases, user, rng);

    std::vector<PartialWallet> partials;
    for (std::uint32_t i = 0; i < t; i++) {
        auto p = withdraw_vf(keys.public_shares[i], user.sk,
                             withdraw(keys.shares[i], req), info);
        REQUIRE(p.has_value());
        partials.push_back(*p);
    }

    auto wallet = create_wallet(keys.vk, user.sk, partials, t,
                                SchemeTag::compact);
    REQUIRE(wallet.has_value());
    CHECK(wallet->l == 0);
    CHECK(wallet->sn == info.sn);
    CHECK(ps_verify(verification_pk(keys.vk), wallet->sigma,
                    {user.sk, wallet->sn}));

    auto wallet_d = create_wallet(keys.vk, user.sk, partials, t,
                                  SchemeTag::divisible);
    REQUIRE(wallet_d.has_value());
    CHECK(wallet_d->l == 1);

    // Wrong count, duplicate index, corrupted share -> reject.
    std::vector<PartialWallet> two(partials.begin(), partials.begin() + 2);
    CHECK_FALSE(create_wallet(keys.vk, user.sk, two, t, SchemeTag::compact)
                    .has_value());
    std::vector<PartialWallet> dup = partials;
    dup[2] = dup[0];
    CHECK_FALSE(create_wallet(keys.vk, user.sk, dup, t, SchemeTag::compact)
                    .has_value());
    std::vector<PartialWallet> bad = partials;
    bad[1].sigma.s = bad[1].sigma.s + g1_generator();
    CHECK_FALSE(create_wallet(keys.vk, user.sk, bad, t, SchemeTag::compact)
                    .has_value());
}
