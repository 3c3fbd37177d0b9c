#include "tecash/ledger.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace tecash;

namespace {

struct LedgerFixture {
    CompactParams pp;
    ThresholdKeys keys;
    UserKeyPair user;
    Wallet wallet;
    CompactOps ops;

    LedgerFixture(Rng& rng, std::uint32_t L = 6)
        : pp(compact_setup(L, rng)), keys(ttp_keygen(2, 3, rng)),
          user(user_keygen(rng)), ops(pp, keys.vk) {
        IssuanceBases bases{pp.gamma1, pp.gamma2};
        auto [req, info] = request(bases, user, rng);
        std::vector<PartialWallet> partials;
        for (std::uint32_t i = 0; i < 2; i++) {
            auto p = withdraw_vf(keys.public_shares[i], user.sk,
                                 withdraw(keys.shares[i], req), info);
            REQUIRE(p.has_value());
            partials.push_back(*p);
        }
        auto w = create_wallet(keys.vk, user.sk, partials, 2,
                               SchemeTag::compact);
        REQUIRE(w.has_value());
        wallet = *w;
    }

    std::pair<Bytes, Bytes> pay(const Wallet& w, const std::string& provider,
                                const std::string& nonce, std::uint32_t V,
                                Rng& rng, Wallet* next = nullptr) {
        Bytes info = make_payment_info(provider, to_bytes(nonce));
        auto res = spend(pp, keys.vk, user.sk, w, info, V, rng);
        REQUIRE(res.has_value());
        if (next) *next = res->first;
        return {res->second.to_bytes(), info};
    }
};

}  // namespace

TEST_CASE("bulletin board append, read, persistence") {
    std::string path = "test_board.jsonl";
    std::remove(path.c_str());
    {
        BulletinBoard bb(path);
        Bytes pay = to_bytes("payment-bytes");
        Bytes info = to_bytes("info-bytes");
        CHECK(bb.append("p1", "compact", pay, info) == 1);
        CHECK(bb.append("p2", "compact", pay, info) == 2);
        CHECK(bb.count() == 2);
        CHECK_FALSE(bb.read(0).has_value());
        CHECK(bb.read(2)->provider == "p2");
        CHECK_FALSE(bb.read(3).has_value());
        CHECK(bb.read(1)->payment == pay);
    }
    // Simulate a crash mid-append: torn trailing line is ignored on load.
    {
        std::ofstream out(path, std::ios::app);
        out << "{\"idx\":3,\"provider\":\"p3\",\"sch";
    }
    BulletinBoard bb2(path);
    CHECK(bb2.count() == 2);
    CHECK(bb2.read(2)->provider == "p2");
    std::remove(path.c_str());
}

TEST_CASE("board file is append-only across writes") {
    std::string path = "test_board2.jsonl";
    std::remove(path.c_str());
    BulletinBoard bb(path);
    bb.append("p1", "compact", to_bytes("a"), to_bytes("i1"));
    std::ifstream f1(path);
    std::string before((std::istreambuf_iterator<char>(f1)),
                       std::istreambuf_iterator<char>());
    bb.append("p2", "compact", to_bytes("b"), to_bytes("i2"));
    std::ifstream f2(path);
    std::string after((std::istreambuf_iterator<char>(f2)),
                      std::istreambuf_iterator<char>());
    CHECK(after.substr(0, before.size()) == before);
    CHECK(after.size() > before.size());
    std::remove(path.c_str());
}

TEST_CASE("deposit contract") {
    curve_init();
    DrbgRng rng(6001);
    LedgerFixture fx(rng);
    BulletinBoard bb;
    auto [pay, info] = fx.pay(fx.wallet, "p1", "n1", 1, rng);

    auto idx = deposit(bb, fx.ops, "p1", pay, info);
    REQUIRE(idx.has_value());
    CHECK(*idx == 1);
    // Same provider, same payment object -> refused.
    CHECK_FALSE(deposit(bb, fx.ops, "p1", pay, info).has_value());
    // Another provider may still push it (clearance catches them later).
    auto idx2 = deposit(bb, fx.ops, "p2", pay, info);
    REQUIRE(idx2.has_value());
    CHECK(*idx2 == 2);
    // Tampered payment -> refused by re-verification.
    Bytes bad = pay;
    bad[5] ^= 1;
    CHECK_FALSE(deposit(bb, fx.ops, "p1", bad, info).has_value());
}

TEST_CASE("deposit_verify verdicts") {
    curve_init();
    DrbgRng rng(6002);
    LedgerFixture fx(rng);
    std::vector<G1> registry = {fx.user.pk};

    BulletinBoard bb;
    Wallet w1;
    auto [pay1, info1] = fx.pay(fx.wallet, "p1", "n1", 1, rng, &w1);
    CHECK(deposit_verify(bb, fx.ops, registry, info1).kind ==
          DepositVerdict::no_deposit);

    REQUIRE(deposit(bb, fx.ops, "p1", pay1, info1).has_value());
    CHECK(deposit_verify(bb, fx.ops, registry, info1).kind ==
          DepositVerdict::cleared);
    // Deterministic and idempotent.
    CHECK(deposit_verify(bb, fx.ops, registry, info1).kind ==
          DepositVerdict::cleared);

    // Honest second spend deposited elsewhere stays cleared.
    auto [pay2, info2] = fx.pay(w1, "p2", "n2", 1, rng);
    REQUIRE(deposit(bb, fx.ops, "p2", pay2, info2).has_value());
    CHECK(deposit_verify(bb, fx.ops, registry, info2).kind ==
          DepositVerdict::cleared);

    // Double deposit of one payment (second provider via raw append).
    bb.append("p2", "compact", pay1, info1);
    auto v = deposit_verify(bb, fx.ops, registry, info1);
    REQUIRE(v.kind == DepositVerdict::guilty_providers);
    REQUIRE(v.providers.size() == 1);
    CHECK(v.providers[0] == "p2");  // p1 is named in info1, p2 is not
}

TEST_CASE("deposit_verify clearance violation") {
    curve_init();
    DrbgRng rng(6003);
    LedgerFixture fx(rng);
    std::vector<G1> registry = {fx.user.pk};
    BulletinBoard bb;

    // info names p1 but p2 deposits it.
    auto [pay, info] = fx.pay(fx.wallet, "p1", "n1", 1, rng);
    REQUIRE(deposit(bb, fx.ops, "p2", pay, info).has_value());
    auto v = deposit_verify(bb, fx.ops, registry, info);
    REQUIRE(v.kind == DepositVerdict::guilty_providers);
    CHECK(v.providers == std::vector<std::string>{"p2"});
}

TEST_CASE("deposit_verify catches compact double spends") {
    curve_init();
    DrbgRng rng(6004);
    LedgerFixture fx(rng);
    std::vector<G1> registry = {fx.user.pk};
    BulletinBoard bb;

    // Cloned wallet state spent at two providers.
    auto [pay1, info1] = fx.pay(fx.wallet, "p1", "n1", 2, rng);
    auto [pay2, info2] = fx.pay(fx.wallet, "p2", "n2", 1, rng);
    REQUIRE(deposit(bb, fx.ops, "p1", pay1, info1).has_value());
    REQUIRE(deposit(bb, fx.ops, "p2", pay2, info2).has_value());

    auto v = deposit_verify(bb, fx.ops, registry, info2);
    REQUIRE(v.kind == DepositVerdict::guilty_user);
    CHECK(v.user_pk == fx.user.pk);

    // Empty registry -> collision seen but unattributable.
    CHECK(deposit_verify(bb, fx.ops, {}, info2).kind ==
          DepositVerdict::undetected);
}

TEST_CASE("deposit_verify catches divisible double spends") {
    curve_init();
    DrbgRng rng(6005);
    DivisibleSetup su = d_setup(4, rng);
    ThresholdKeys keys = ttp_keygen(2, 3, rng);
    UserKeyPair user = user_keygen(rng);
    IssuanceBases bases{su.params.gamma1, su.params.gamma2};
    auto [req, rinfo] = request(bases, user, rng);
    std::vector<PartialWallet> partials;
    for (std::uint32_t i = 0; i < 2; i++)
        partials.push_back(*withdraw_vf(keys.public_shares[i], user.sk,
                                        withdraw(keys.shares[i], req), rinfo));
    Wallet wallet =
        *create_wallet(keys.vk, user.sk, partials, 2, SchemeTag::divisible);

    DivisibleOps ops(su.params, su.authority, keys.vk);
    BulletinBoard bb;
    Bytes info1 = make_payment_info("p1", to_bytes("n1"));
    Bytes info2 = make_payment_info("p2", to_bytes("n2"));
    auto r1 = d_spend(su.params, keys.vk, user.sk, wallet, info1, 2, rng);
    auto r2 = d_spend(su.params, keys.vk, user.sk, wallet, info2, 1, rng);
    REQUIRE(r1.has_value());
    REQUIRE(r2.has_value());
    REQUIRE(deposit(bb, ops, "p1", r1->second.to_bytes(), info1).has_value());
    REQUIRE(deposit(bb, ops, "p2", r2->second.to_bytes(), info2).has_value());

    std::vector<G1> registry = {user.pk};
    auto v = deposit_verify(bb, ops, registry, info2);
    REQUIRE(v.kind == DepositVerdict::guilty_user);
    CHECK(v.user_pk == user.pk);
}
