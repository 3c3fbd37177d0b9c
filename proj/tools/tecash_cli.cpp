// Command-line front end: key ceremonies, withdrawal, payments, board
// operations, denomination planning, benchmarks and scripted scenarios.
//
// Exit codes: 0 success, 1 verification/protocol failure, 2 usage error.

#include "tecash/artifact.hpp"
#include "tecash/denom.hpp"
#include "tecash/harness.hpp"
#include "tecash/ledger.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tecash;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

Bytes must_read(const std::string& path, const std::string& kind,
                const std::string& scheme) {
    Bytes payload;
    if (!read_artifact(path, kind, scheme, payload))
        throw CliError(kFail, "cannot read " + kind + " artifact: " + path);
    return payload;
}

struct SchemeContext {
    std::string scheme;
    CompactParams cparams;
    DivisibleParams dparams;
    DivisibleAuthorityParams dauth;

    static SchemeContext load(const std::string& scheme,
                              const std::string& params_path) {
        SchemeContext ctx;
        ctx.scheme = scheme;
        Bytes payload = must_read(params_path, "params", scheme);
        bool ok = scheme == "compact"
                      ? decode_compact_params(payload, ctx.cparams)
                      : decode_divisible_bundle(payload, ctx.dparams,
                                                ctx.dauth);
        if (!ok) throw CliError(kFail, "malformed params: " + params_path);
        return ctx;
    }

    IssuanceBases bases() const {
        if (scheme == "compact") return {cparams.gamma1, cparams.gamma2};
        return {dparams.gamma1, dparams.gamma2};
    }

    SchemeTag tag() const {
        return scheme == "compact" ? SchemeTag::compact : SchemeTag::divisible;
    }

    std::unique_ptr<SchemeOps> ops(const VerificationKey& vk) const {
        if (scheme == "compact")
            return std::make_unique<CompactOps>(cparams, vk);
        return std::make_unique<DivisibleOps>(dparams, dauth, vk);
    }
};

VerificationKey load_vk(const std::string& path) {
    VerificationKey vk;
    if (!decode_vk(must_read(path, "vk", ""), vk))
        throw CliError(kFail, "malformed vk: " + path);
    return vk;
}

UserKeyPair load_user(const std::string& path) {
    UserKeyPair u;
    if (!decode_user_key(must_read(path, "user-key", ""), u))
        throw CliError(kFail, "malformed user key: " + path);
    return u;
}

Wallet load_wallet(const std::string& path, const std::string& scheme) {
    Wallet w;
    if (!decode_wallet(must_read(path, "wallet", scheme), w))
        throw CliError(kFail, "malformed wallet: " + path);
    return w;
}

DenominationSet parse_denoms(const std::string& csv) {
    DenominationSet d;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) d.push_back(std::stoull(item));
    check_denoms(d);
    return d;
}

struct BenchFixture {
    SchemeContext ctx;
    ThresholdKeys keys;
    UserKeyPair user;
    Wallet wallet;
    Bytes info;

    BenchFixture(const std::string& scheme, std::uint32_t L, DrbgRng& rng) {
        ctx.scheme = scheme;
        if (scheme == "compact") {
            ctx.cparams = compact_setup(L, rng);
        } else {
            DivisibleSetup su = d_setup(L, rng);
            ctx.dparams = std::move(su.params);
            ctx.dauth = std::move(su.authority);
        }
        keys = ttp_keygen(2, 3, rng);
        user = user_keygen(rng);
        auto [req, rinfo] = request(ctx.bases(), user, rng);
        std::vector<PartialWallet> partials;
        for (std::uint32_t i = 0; i < 2; i++)
            partials.push_back(*withdraw_vf(keys.public_shares[i], user.sk,
                                            withdraw(keys.shares[i], req),
                                            rinfo));
        wallet = *create_wallet(keys.vk, user.sk, partials, 2, ctx.tag());
        info = make_payment_info("bench-provider", to_bytes("n0"));
    }
};

struct BenchStats {
    double mean_ms = 0, stddev_ms = 0;
};

template <typename F>
BenchStats time_op(std::uint32_t iters, F&& op) {
    std::vector<double> samples;
    for (std::uint32_t i = 0; i < iters; i++) {
        auto t0 = std::chrono::steady_clock::now();
        op(i);
        auto t1 = std::chrono::steady_clock::now();
        samples.push_back(
            std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    BenchStats st;
    for (double s : samples) st.mean_ms += s;
    st.mean_ms /= samples.size();
    for (double s : samples)
        st.stddev_ms += (s - st.mean_ms) * (s - st.mean_ms);
    st.stddev_ms = std::sqrt(st.stddev_ms / samples.size());
    return st;
}

BenchStats bench_op(BenchFixture& fx, const std::string& op,
                    std::uint32_t iters, DrbgRng& rng) {
    bool compact_scheme = fx.ctx.scheme == "compact";
    if (op == "spend") {
        return time_op(iters, [&](std::uint32_t) {
            if (compact_scheme)
                spend(fx.ctx.cparams, fx.keys.vk, fx.user.sk, fx.wallet,
                      fx.info, 1, rng);
            else
                d_spend(fx.ctx.dparams, fx.keys.vk, fx.user.sk, fx.wallet,
                        fx.info, 1, rng);
        });
    }
    if (op == "spend-vf") {
        if (compact_scheme) {
            auto pay = spend(fx.ctx.cparams, fx.keys.vk, fx.user.sk, fx.wallet,
                             fx.info, 1, rng)->second;
            return time_op(iters, [&](std::uint32_t) {
                spend_vf(fx.ctx.cparams, fx.keys.vk, pay, fx.info);
            });
        }
        auto pay = d_spend(fx.ctx.dparams, fx.keys.vk, fx.user.sk, fx.wallet,
                           fx.info, 1, rng)->second;
        return time_op(iters, [&](std::uint32_t) {
            d_spend_vf(fx.ctx.dparams, fx.keys.vk, pay, fx.info);
        });
    }
    if (op == "identify") {
        // 100-key registry, cheater's key last, as in the reference setup.
        std::vector<G1> registry;
        for (int i = 0; i < 99; i++)
            registry.push_back(g1_generator() * random_nonzero_scalar(rng));
        registry.push_back(fx.user.pk);
        Bytes info2 = make_payment_info("bench-provider", to_bytes("n1"));
        if (compact_scheme) {
            auto p1 = spend(fx.ctx.cparams, fx.keys.vk, fx.user.sk, fx.wallet,
                            fx.info, 1, rng)->second;
            auto p2 = spend(fx.ctx.cparams, fx.keys.vk, fx.user.sk, fx.wallet,
                            info2, 1, rng)->second;
            return time_op(iters, [&](std::uint32_t) {
                identify(fx.ctx.cparams, registry, p1, p2, fx.info, info2);
            });
        }
        auto p1 = d_spend(fx.ctx.dparams, fx.keys.vk, fx.user.sk, fx.wallet,
                          fx.info, 1, rng)->second;
        auto p2 = d_spend(fx.ctx.dparams, fx.keys.vk, fx.user.sk, fx.wallet,
                          info2, 1, rng)->second;
        return time_op(iters, [&](std::uint32_t) {
            d_identify(fx.ctx.dparams, fx.ctx.dauth, registry, p1, p2,
                       fx.info, info2);
        });
    }
    throw CliError(kUsage, "unknown bench op: " + op);
}

int run(int argc, char** argv) {
    CLI::App app{"threshold e-cash toolkit"};
    app.require_subcommand(1);

    std::string scheme = "compact", out, out2, in_path, params_path, vk_path;
    std::string user_path, wallet_path, info_path, board_path, provider;
    std::string nonce = "nonce-0", denoms_csv = "1,2,5", ops_csv;
    std::vector<std::string> share_paths, user_paths;
    std::uint32_t coins = 10, threshold = 2, authorities = 3, v = 1,
                  iters = 10;
    std::uint64_t seed = 1, pmax = 10, price = 1;

    auto add_scheme = [&](CLI::App* s) {
        s->add_option("--scheme", scheme)
            ->check(CLI::IsMember({"compact", "divisible"}));
    };

    CLI::App* setup_cmd = app.add_subcommand("setup", "generate scheme parameters");
    add_scheme(setup_cmd);
    setup_cmd->add_option("--coins", coins, "coins per wallet (L)");
    setup_cmd->add_option("--seed", seed);
    setup_cmd->add_option("--out", out)->required();

    CLI::App* ka_cmd = app.add_subcommand("keygen-authorities",
                                          "threshold issuance key ceremony");
    ka_cmd->add_option("--threshold", threshold);
    ka_cmd->add_option("--authorities", authorities);
    ka_cmd->add_option("--seed", seed);
    ka_cmd->add_option("--out", out, "output prefix")->required();

    CLI::App* ku_cmd = app.add_subcommand("keygen-user", "user keypair");
    ku_cmd->add_option("--seed", seed);
    ku_cmd->add_option("--out", out)->required();

    CLI::App* req_cmd = app.add_subcommand("request", "withdrawal request");
    add_scheme(req_cmd);
    req_cmd->add_option("--params", params_path)->required();
    req_cmd->add_option("--user-key", user_path)->required();
    req_cmd->add_option("--seed", seed);
    req_cmd->add_option("--out", out, "request artifact")->required();
    req_cmd->add_option("--out-info", out2, "private request info")->required();

    CLI::App* issue_cmd = app.add_subcommand("issue", "authority blind share");
    add_scheme(issue_cmd);
    issue_cmd->add_option("--params", params_path)->required();
    issue_cmd->add_option("--share", in_path, "authority share artifact")
        ->required();
    issue_cmd->add_option("--request", wallet_path)->required();
    issue_cmd->add_option("--user-key", user_path, "for the pk binding check")
        ->required();
    issue_cmd->add_option("--out", out)->required();

    CLI::App* agg_cmd = app.add_subcommand("aggregate", "combine blind shares");
    add_scheme(agg_cmd);
    agg_cmd->add_option("--vk", vk_path)->required();
    agg_cmd->add_option("--user-key", user_path)->required();
    agg_cmd->add_option("--info", info_path)->required();
    agg_cmd->add_option("--shares", share_paths)->required()->expected(-1);
    agg_cmd->add_option("--out", out, "wallet artifact")->required();

    CLI::App* spend_cmd = app.add_subcommand("spend", "pay a provider");
    add_scheme(spend_cmd);
    spend_cmd->add_option("--params", params_path)->required();
    spend_cmd->add_option("--vk", vk_path)->required();
    spend_cmd->add_option("--user-key", user_path)->required();
    spend_cmd->add_option("--wallet", wallet_path)->required();
    spend_cmd->add_option("--provider", provider)->required();
    spend_cmd->add_option("--nonce", nonce);
    spend_cmd->add_option("--coins", v, "coins to spend (V)");
    spend_cmd->add_option("--seed", seed);
    spend_cmd->add_option("--out", out, "payment artifact")->required();
    spend_cmd->add_option("--wallet-out", out2, "updated wallet")->required();

    CLI::App* vp_cmd = app.add_subcommand("verify-payment", "provider check");
    add_scheme(vp_cmd);
    vp_cmd->add_option("--params", params_path)->required();
    vp_cmd->add_option("--vk", vk_path)->required();
    vp_cmd->add_option("--payment", in_path)->required();

    CLI::App* dep_cmd = app.add_subcommand("deposit", "append to the board");
    add_scheme(dep_cmd);
    dep_cmd->add_option("--params", params_path)->required();
    dep_cmd->add_option("--vk", vk_path)->required();
    dep_cmd->add_option("--board", board_path)->required();
    dep_cmd->add_option("--provider", provider)->required();
    dep_cmd->add_option("--payment", in_path)->required();

    CLI::App* dv_cmd = app.add_subcommand("depvf", "deposit verification");
    add_scheme(dv_cmd);
    dv_cmd->add_option("--params", params_path)->required();
    dv_cmd->add_option("--vk", vk_path)->required();
    dv_cmd->add_option("--board", board_path)->required();
    dv_cmd->add_option("--payment", in_path)->required();
    dv_cmd->add_option("--user-keys", user_paths, "registered users")
        ->expected(-1);

    CLI::App* da_cmd = app.add_subcommand("denom-avg", "average coin count");
    da_cmd->add_option("--denoms", denoms_csv)->required();
    da_cmd->add_option("--pmax", pmax)->required();

    CLI::App* dp_cmd = app.add_subcommand("denom-plan", "greedy spend plan");
    dp_cmd->add_option("--denoms", denoms_csv)->required();
    dp_cmd->add_option("--price", price)->required();

    CLI::App* bench_cmd = app.add_subcommand("bench", "scheme comparison");
    bench_cmd->add_option("--ops", ops_csv, "comma list of spend,spend-vf,identify");
    bench_cmd->add_option("--iters", iters);
    bench_cmd->add_option("--coins", coins);
    bench_cmd->add_option("--seed", seed);

    CLI::App* sc_cmd = app.add_subcommand("scenario", "scripted multi-actor run");
    sc_cmd->add_option("--in", in_path)->required();
    sc_cmd->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << (e.get_exit_code() == 0 ? "" : "usage error: ")
                  << e.what() << "\n";
        return e.get_exit_code() == 0 ? kOk : kUsage;
    }

    curve_init();

    if (setup_cmd->parsed()) {
        DrbgRng rng(seed);
        if (scheme == "compact") {
            write_artifact(out, "params", scheme,
                           encode_compact_params(compact_setup(coins, rng)));
        } else {
            DivisibleSetup su = d_setup(coins, rng);
            write_artifact(out, "params", scheme,
                           encode_divisible_bundle(su.params, su.authority));
        }
        std::cout << "wrote " << out << "\n";
        return kOk;
    }

    if (ka_cmd->parsed()) {
        DrbgRng rng(seed);
        ThresholdKeys keys = ttp_keygen(threshold, authorities, rng);
        write_artifact(out + "-vk.json", "vk", "shared", encode_vk(keys.vk));
        for (std::uint32_t i = 0; i < authorities; i++)
            write_artifact(out + "-share-" + std::to_string(i + 1) + ".json",
                           "authority-share", "shared",
                           encode_authority_share(keys.shares[i],
                                                  keys.public_shares[i]));
        std::cout << "wrote " << out << "-vk.json and " << authorities
                  << " share files\n";
        return kOk;
    }

    if (ku_cmd->parsed()) {
        DrbgRng rng(seed);
        write_artifact(out, "user-key", "shared",
                       encode_user_key(user_keygen(rng)));
        std::cout << "wrote " << out << "\n";
        return kOk;
    }

    if (req_cmd->parsed()) {
        SchemeContext ctx = SchemeContext::load(scheme, params_path);
        UserKeyPair user = load_user(user_path);
        DrbgRng rng(seed);
        auto [req, info] = request(ctx.bases(), user, rng);
        write_artifact(out, "request", scheme, encode_request(req));
        write_artifact(out2, "request-info", scheme, encode_request_info(info));
        std::cout << "wrote " << out << " and " << out2 << "\n";
        return kOk;
    }

    if (issue_cmd->parsed()) {
        SchemeContext ctx = SchemeContext::load(scheme, params_path);
        AuthorityKeyShare sk;
        AuthorityPublicShare pk;
        if (!decode_authority_share(must_read(in_path, "authority-share", ""),
                                    sk, pk))
            throw CliError(kFail, "malformed authority share");
        WithdrawalRequest req;
        if (!decode_request(must_read(wallet_path, "request", scheme), req))
            throw CliError(kFail, "malformed request");
        UserKeyPair user = load_user(user_path);
        if (!request_vf(ctx.bases(), req, user.pk)) {
            std::cerr << "request rejected\n";
            return kFail;
        }
        write_artifact(out, "blind-share", scheme,
                       encode_blind_share(withdraw(sk, req), pk));
        std::cout << "wrote " << out << "\n";
        return kOk;
    }

    if (agg_cmd->parsed()) {
        VerificationKey vk = load_vk(vk_path);
        UserKeyPair user = load_user(user_path);
        RequestInfo info;
        if (!decode_request_info(must_read(info_path, "request-info", scheme),
                                 info))
            throw CliError(kFail, "malformed request info");
        std::vector<PartialWallet> partials;
        for (const std::string& path : share_paths) {
            BlindShare share;
            AuthorityPublicShare pub;
            if (!decode_blind_share(must_read(path, "blind-share", scheme),
                                    share, pub))
                throw CliError(kFail, "malformed blind share: " + path);
            auto p = withdraw_vf(pub, user.sk, share, info);
            if (!p) {
                std::cerr << "share rejected: " << path << "\n";
                return kFail;
            }
            partials.push_back(*p);
        }
        auto w = create_wallet(vk, user.sk, partials,
                               static_cast<std::uint32_t>(partials.size()),
                               scheme == "compact" ? SchemeTag::compact
                                                   : SchemeTag::divisible);
        if (!w) {
            std::cerr << "aggregation failed\n";
            return kFail;
        }
        write_artifact(out, "wallet", scheme, encode_wallet(*w));
        std::cout << "wrote " << out << "\n";
        return kOk;
    }

    if (spend_cmd->parsed()) {
        SchemeContext ctx = SchemeContext::load(scheme, params_path);
        VerificationKey vk = load_vk(vk_path);
        UserKeyPair user = load_user(user_path);
        Wallet wallet = load_wallet(wallet_path, scheme);
        DrbgRng rng(seed);
        Bytes info = make_payment_info(provider, to_bytes(nonce));
        Bytes payment;
        Wallet next;
        if (scheme == "compact") {
            auto r = spend(ctx.cparams, vk, user.sk, wallet, info, v, rng);
            if (!r) {
                std::cerr << "spend rejected\n";
                return kFail;
            }
            next = r->first;
            payment = r->second.to_bytes();
        } else {
            auto r = d_spend(ctx.dparams, vk, user.sk, wallet, info, v, rng);
            if (!r) {
                std::cerr << "spend rejected\n";
                return kFail;
            }
            next = r->first;
            payment = r->second.to_bytes();
        }
        write_artifact(out, "payment", scheme,
                       encode_payment_bundle(payment, info));
        write_artifact(out2, "wallet", scheme, encode_wallet(next));
        std::cout << "wrote " << out << ", wallet counter now " << next.l
                  << "\n";
        return kOk;
    }

    if (vp_cmd->parsed()) {
        SchemeContext ctx = SchemeContext::load(scheme, params_path);
        VerificationKey vk = load_vk(vk_path);
        Bytes payment, info;
        if (!decode_payment_bundle(must_read(in_path, "payment", scheme),
                                   payment, info))
            throw CliError(kFail, "malformed payment artifact");
        SpendCheck chk;
        if (scheme == "compact") {
            CompactPayment pay;
            if (!CompactPayment::from_bytes(payment, pay))
                throw CliError(kFail, "malformed payment bytes");
            chk = spend_vf(ctx.cparams, vk, pay, info);
        } else {
            DivisiblePayment pay;
            if (!DivisiblePayment::from_bytes(payment, pay))
                throw CliError(kFail, "malformed payment bytes");
            chk = d_spend_vf(ctx.dparams, vk, pay, info);
        }
        if (!chk.ok()) {
            const char* reasons[] = {"ok", "bad-info", "bad-signature",
                                     "duplicate-serial", "bad-proof"};
            std::cerr << "rejected: "
                      << reasons[static_cast<int>(chk.error)] << "\n";
            return kFail;
        }
        std::cout << "valid payment of " << chk.V << " coin(s)\n";
        return kOk;
    }

    if (dep_cmd->parsed()) {
        SchemeContext ctx = SchemeContext::load(scheme, params_path);
        VerificationKey vk = load_vk(vk_path);
        Bytes payment, info;
        if (!decode_payment_bundle(must_read(in_path, "payment", scheme),
                                   payment, info))
            throw CliError(kFail, "malformed payment artifact");
        BulletinBoard bb(board_path);
        auto ops = ctx.ops(vk);
        auto idx = deposit(bb, *ops, provider, payment, info);
        if (!idx) {
            std::cerr << "deposit refused\n";
            return kFail;
        }
        std::cout << "deposited at index " << *idx << "\n";
        return kOk;
    }

    if (dv_cmd->parsed()) {
        SchemeContext ctx = SchemeContext::load(scheme, params_path);
        VerificationKey vk = load_vk(vk_path);
        Bytes payment, info;
        if (!decode_payment_bundle(must_read(in_path, "payment", scheme),
                                   payment, info))
            throw CliError(kFail, "malformed payment artifact");
        std::vector<G1> registry;
        for (const std::string& path : user_paths)
            registry.push_back(load_user(path).pk);
        BulletinBoard bb(board_path);
        auto ops = ctx.ops(vk);
        DepositVerdict verdict = deposit_verify(bb, *ops, registry, info);
        const char* names[] = {"no-deposit", "guilty-providers", "cleared",
                               "guilty-user", "undetected"};
        std::cout << "verdict: " << names[static_cast<int>(verdict.kind)];
        for (const auto& p : verdict.providers) std::cout << " " << p;
        if (verdict.kind == DepositVerdict::guilty_user)
            std::cout << " pk=" << to_hex(g1_to_bytes(verdict.user_pk));
        std::cout << "\n";
        return verdict.kind == DepositVerdict::cleared ? kOk : kFail;
    }

    if (da_cmd->parsed()) {
        std::cout << average_coins(parse_denoms(denoms_csv), pmax) << "\n";
        return kOk;
    }

    if (dp_cmd->parsed()) {
        SpendPlan plan = greedy_decompose(price, parse_denoms(denoms_csv));
        json j = json::array();
        for (const auto& [d, c] : plan)
            j.push_back({{"denomination", d}, {"count", c}});
        std::cout << j.dump() << "\n";
        return kOk;
    }

    if (bench_cmd->parsed()) {
        if (ops_csv.empty()) ops_csv = "spend,spend-vf,identify";
        std::vector<std::string> ops;
        std::stringstream ss(ops_csv);
        std::string item;
        while (std::getline(ss, item, ',')) ops.push_back(item);

        DrbgRng rng(seed);
        BenchFixture cfx("compact", coins, rng);
        BenchFixture dfx("divisible", coins, rng);
        std::cout << "op\tcompact_ms\tcompact_sd\tdivisible_ms\tdivisible_sd"
                     "\tratio\n";
        for (const std::string& op : ops) {
            BenchStats c = bench_op(cfx, op, iters, rng);
            BenchStats d = bench_op(dfx, op, iters, rng);
            char line[256];
            std::snprintf(line, sizeof line,
                          "%s\t%.3f\t%.3f\t%.3f\t%.3f\t%.2f\n", op.c_str(),
                          c.mean_ms, c.stddev_ms, d.mean_ms, d.stddev_ms,
                          d.mean_ms / c.mean_ms);
            std::cout << line;
        }
        return kOk;
    }

    if (sc_cmd->parsed()) {
        std::ifstream in(in_path);
        if (!in) throw CliError(kFail, "cannot read scenario: " + in_path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        ScenarioResult res = run_scenario(text, seed);
        std::cout << res.transcript;
        for (const auto& f : res.failures) std::cerr << "failure: " << f << "\n";
        return res.ok ? kOk : kFail;
    }

    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
