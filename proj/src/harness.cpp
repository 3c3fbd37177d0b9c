#include "tecash/harness.hpp"

#include "tecash/ledger.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <set>

namespace tecash {

namespace {

using nlohmann::json;

std::string verdict_name(DepositVerdict::Kind k) {
    switch (k) {
        case DepositVerdict::no_deposit: return "no-deposit";
        case DepositVerdict::guilty_providers: return "guilty-providers";
        case DepositVerdict::cleared: return "cleared";
        case DepositVerdict::guilty_user: return "guilty-user";
        case DepositVerdict::undetected: return "undetected";
    }
    return "?";
}

struct StoredPayment {
    Bytes bytes;
    Bytes info;
};

struct Runner {
    json doc;
    DrbgRng rng;
    ScenarioResult res;

    SchemeTag scheme = SchemeTag::compact;
    std::uint32_t t = 0, n = 0, L = 0;
    CompactParams cparams;
    DivisibleSetup dsetup;
    ThresholdKeys keys;
    std::unique_ptr<SchemeOps> ops;

    std::vector<std::string> user_order;
    std::map<std::string, UserKeyPair> users;
    std::set<std::string> unregistered;
    std::map<std::string, Wallet> wallets;
    std::map<std::string, StoredPayment> payments;
    BulletinBoard bb;
    std::uint64_t nonce_counter = 0;

    explicit Runner(const std::string& text, std::uint64_t seed)
        : doc(json::parse(text)), rng(seed) {}

    void fail(const std::string& msg) {
        res.ok = false;
        res.failures.push_back(msg);
    }

    void emit(json line) { res.transcript += line.dump() + "\n"; }

    const UserKeyPair& user(const std::string& name) {
        auto it = users.find(name);
        if (it != users.end()) return it->second;
        user_order.push_back(name);
        return users.emplace(name, user_keygen(rng)).first->second;
    }

    std::vector<G1> registry() {
        std::vector<G1> pks;
        for (const auto& name : user_order)
            if (!unregistered.count(name)) pks.push_back(users.at(name).pk);
        return pks;
    }

    IssuanceBases bases() const {
        if (scheme == SchemeTag::compact)
            return {cparams.gamma1, cparams.gamma2};
        return {dsetup.params.gamma1, dsetup.params.gamma2};
    }

    std::string pseudonym() {
        std::uint8_t buf[8];
        rng.fill(buf, sizeof buf);
        return to_hex(Bytes(buf, buf + 8));
    }

    void setup() {
        std::string s = doc.value("scheme", "compact");
        scheme = s == "divisible" ? SchemeTag::divisible : SchemeTag::compact;
        t = doc.value("t", 2u);
        n = doc.value("n", 3u);
        L = doc.value("L", 6u);
        for (const auto& u : doc.value("unregistered", std::vector<std::string>{}))
            unregistered.insert(u);
        keys = ttp_keygen(t, n, rng);
        if (scheme == SchemeTag::compact) {
            cparams = compact_setup(L, rng);
            ops = std::make_unique<CompactOps>(cparams, keys.vk);
        } else {
            dsetup = d_setup(L, rng);
            ops = std::make_unique<DivisibleOps>(dsetup.params,
                                                 dsetup.authority, keys.vk);
        }
        emit({{"op", "setup"}, {"scheme", s}, {"t", t}, {"n", n}, {"L", L}});
    }

    void do_withdraw(const json& a) {
        const UserKeyPair& u = user(a.at("user"));
        auto [req, info] = request(bases(), u, rng);
        if (!request_vf(bases(), req, u.pk)) return fail("request rejected");
        std::vector<PartialWallet> partials;
        for (std::uint32_t i = 0; i < t; i++) {
            auto p = withdraw_vf(keys.public_shares[i], u.sk,
                                 withdraw(keys.shares[i], req), info);
            if (!p) return fail("withdraw share rejected");
            partials.push_back(*p);
        }
        auto w = create_wallet(keys.vk, u.sk, partials, t, scheme);
        if (!w) return fail("wallet aggregation failed");
        wallets[a.at("wallet")] = *w;
        emit({{"op", "withdraw"},
              {"user", a.at("user")},
              {"wallet", a.at("wallet")}});
    }

    void do_clone(const json& a) {
        auto it = wallets.find(a.at("from"));
        if (it == wallets.end()) return fail("unknown wallet to clone");
        wallets[a.at("to")] = it->second;
        emit({{"op", "clone-wallet"}, {"from", a.at("from")}, {"to", a.at("to")}});
    }

    void do_spend(const json& a) {
        const std::string wname = a.at("wallet");
        auto it = wallets.find(wname);
        if (it == wallets.end()) return fail("unknown wallet");
        const UserKeyPair& u = user(a.at("user"));
        std::string provider = a.at("provider");
        std::string nonce = a.value(
            "nonce", "auto-" + std::to_string(nonce_counter++));
        std::uint32_t v = a.value("v", 1u);
        Bytes info = make_payment_info(provider, to_bytes(nonce));

        Bytes serialized;
        bool spent = false;
        if (scheme == SchemeTag::compact) {
            auto r = spend(cparams, keys.vk, u.sk, it->second, info, v, rng);
            if (r) {
                it->second = r->first;
                serialized = r->second.to_bytes();
                spent = true;
            }
        } else {
            auto r = d_spend(dsetup.params, keys.vk, u.sk, it->second, info,
                             v, rng);
            if (r) {
                it->second = r->first;
                serialized = r->second.to_bytes();
                spent = true;
            }
        }
        // Provider-side verification over the serialized payment.
        bool ok = spent && ops->verify(serialized, info);
        bool expect_ok = a.value("expect_ok", true);
        if (ok != expect_ok)
            fail("spend " + std::string(a.at("payment")) +
                 (ok ? " unexpectedly succeeded" : " failed"));
        if (ok) payments[a.at("payment")] = {serialized, info};
        emit({{"op", "spend"},
              {"user", a.at("user")},
              {"pseudonym", pseudonym()},
              {"provider", provider},
              {"payment", a.at("payment")},
              {"v", v},
              {"ok", ok}});
    }

    void do_deposit(const json& a) {
        auto it = payments.find(a.at("payment"));
        if (it == payments.end()) return fail("unknown payment");
        auto idx = deposit(bb, *ops, a.at("provider"), it->second.bytes,
                           it->second.info);
        bool expect_ok = a.value("expect_ok", true);
        if (idx.has_value() != expect_ok)
            fail("deposit " + std::string(a.at("payment")) +
                 (idx ? " unexpectedly accepted" : " refused"));
        emit({{"op", "deposit"},
              {"provider", a.at("provider")},
              {"payment", a.at("payment")},
              {"index", idx ? *idx : 0},
              {"ok", idx.has_value()}});
    }

    void do_raw_append(const json& a) {
        auto it = payments.find(a.at("payment"));
        if (it == payments.end()) return fail("unknown payment");
        std::uint64_t idx = bb.append(a.at("provider"), ops->name(),
                                      it->second.bytes, it->second.info);
        emit({{"op", "raw-append"},
              {"provider", a.at("provider")},
              {"payment", a.at("payment")},
              {"index", idx}});
    }

    void do_depvf(const json& a) {
        auto it = payments.find(a.at("payment"));
        if (it == payments.end()) return fail("unknown payment");
        DepositVerdict v = deposit_verify(bb, *ops, registry(),
                                          it->second.info);
        std::string name = verdict_name(v.kind);
        if (a.contains("expect") && a.at("expect") != name)
            fail("depvf " + std::string(a.at("payment")) + ": expected " +
                 std::string(a.at("expect")) + ", got " + name);
        if (a.contains("expect_user")) {
            const UserKeyPair& u = user(a.at("expect_user"));
            if (v.kind != DepositVerdict::guilty_user || !(v.user_pk == u.pk))
                fail("depvf " + std::string(a.at("payment")) +
                     ": wrong or missing guilty user");
        }
        if (a.contains("expect_providers")) {
            std::vector<std::string> want = a.at("expect_providers");
            if (v.providers != want)
                fail("depvf " + std::string(a.at("payment")) +
                     ": wrong provider set");
        }
        json line = {{"op", "depvf"},
                     {"payment", a.at("payment")},
                     {"verdict", name}};
        if (!v.providers.empty()) line["providers"] = v.providers;
        emit(line);
    }

    ScenarioResult run() {
        setup();
        for (const json& a : doc.at("actions")) {
            std::string op = a.at("op");
            if (op == "withdraw") do_withdraw(a);
            else if (op == "clone-wallet") do_clone(a);
            else if (op == "spend") do_spend(a);
            else if (op == "deposit") do_deposit(a);
            else if (op == "raw-append") do_raw_append(a);
            else if (op == "depvf") do_depvf(a);
            else fail("unknown op: " + op);
        }
        return std::move(res);
    }
};

}  // namespace

ScenarioResult run_scenario(const std::string& scenario_json,
                            std::uint64_t seed) {
    try {
        Runner r(scenario_json, seed);
        return r.run();
    } catch (const std::exception& e) {
        ScenarioResult res;
        res.ok = false;
        res.failures.push_back(std::string("scenario error: ") + e.what());
        return res;
    }
}

}  // namespace tecash
