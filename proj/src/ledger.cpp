#include "tecash/ledger.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace tecash {

namespace {

using nlohmann::json;

std::string entry_line(const BoardEntry& e) {
    json j;
    j["idx"] = e.idx;
    j["provider"] = e.provider;
    j["scheme"] = e.scheme;
    j["payment_b64"] = base64_encode(e.payment);
    j["info_b64"] = base64_encode(e.info);
    return j.dump();
}

bool parse_entry(const std::string& line, BoardEntry& out) {
    try {
        json j = json::parse(line);
        out.idx = j.at("idx").get<std::uint64_t>();
        out.provider = j.at("provider").get<std::string>();
        out.scheme = j.at("scheme").get<std::string>();
        out.payment = base64_decode(j.at("payment_b64").get<std::string>());
        out.info = base64_decode(j.at("info_b64").get<std::string>());
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

bool bytes_equal(BytesView a, BytesView b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

BulletinBoard::BulletinBoard(const std::string& path) : path_(path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        BoardEntry e;
        if (!parse_entry(line, e)) continue;  // tolerate a torn tail line
        if (e.idx != entries_.size() + 1) continue;
        entries_.push_back(std::move(e));
    }
}

std::uint64_t BulletinBoard::append(const std::string& provider,
                                    const std::string& scheme,
                                    BytesView payment, BytesView info) {
    BoardEntry e;
    e.idx = entries_.size() + 1;
    e.provider = provider;
    e.scheme = scheme;
    e.payment.assign(payment.begin(), payment.end());
    e.info.assign(info.begin(), info.end());
    if (!path_.empty()) {
        std::ofstream out(path_, std::ios::app);
        out << entry_line(e) << "\n";
        if (!out) throw std::runtime_error("board append failed: " + path_);
    }
    entries_.push_back(std::move(e));
    return entries_.back().idx;
}

std::optional<BoardEntry> BulletinBoard::read(std::uint64_t idx) const {
    if (idx < 1 || idx > entries_.size()) return std::nullopt;
    return entries_[idx - 1];
}

Bytes provider_prefix(const std::string& provider_id) {
    Bytes prefix(kProviderIdLen, 0);
    std::copy_n(provider_id.begin(),
                std::min(provider_id.size(), kProviderIdLen), prefix.begin());
    return prefix;
}

Bytes make_payment_info(const std::string& provider_id, BytesView nonce) {
    Bytes info = provider_prefix(provider_id);
    append(info, nonce);
    return info;
}

bool CompactOps::verify(BytesView payment, BytesView info) const {
    CompactPayment pay;
    if (!CompactPayment::from_bytes(payment, pay)) return false;
    return spend_vf(*params, *vk, pay, info).ok();
}

std::vector<Bytes> CompactOps::serial_keys(BytesView payment) const {
    CompactPayment pay;
    if (!CompactPayment::from_bytes(payment, pay)) return {};
    std::vector<Bytes> keys;
    for (const auto& c : pay.coins) keys.push_back(g1_to_bytes(c.S));
    return keys;
}

IdentifyOutcome CompactOps::identify_pair(const std::vector<G1>& pk_list,
                                          BytesView pay1, BytesView pay2,
                                          BytesView info1,
                                          BytesView info2) const {
    CompactPayment p1, p2;
    if (!CompactPayment::from_bytes(pay1, p1) ||
        !CompactPayment::from_bytes(pay2, p2))
        return {IdentifyOutcome::unknown, {}, {}};
    return identify(*params, pk_list, p1, p2, info1, info2);
}

bool DivisibleOps::verify(BytesView payment, BytesView info) const {
    DivisiblePayment pay;
    if (!DivisiblePayment::from_bytes(payment, pay)) return false;
    return d_spend_vf(*params, *vk, pay, info).ok();
}

std::vector<Bytes> DivisibleOps::serial_keys(BytesView payment) const {
    DivisiblePayment pay;
    if (!DivisiblePayment::from_bytes(payment, pay)) return {};
    if (pay.V < 1 || pay.V > authority->eta_tilde.size()) return {};
    std::vector<Bytes> keys;
    for (const Gt& sn : d_serial_numbers(*params, *authority, pay))
        keys.push_back(sn.to_bytes());
    return keys;
}

IdentifyOutcome DivisibleOps::identify_pair(const std::vector<G1>& pk_list,
                                            BytesView pay1, BytesView pay2,
                                            BytesView info1,
                                            BytesView info2) const {
    DivisiblePayment p1, p2;
    if (!DivisiblePayment::from_bytes(pay1, p1) ||
        !DivisiblePayment::from_bytes(pay2, p2))
        return {IdentifyOutcome::unknown, {}, {}};
    return d_identify(*params, *authority, pk_list, p1, p2, info1, info2);
}

std::optional<std::uint64_t> deposit(BulletinBoard& bb, const SchemeOps& ops,
                                     const std::string& provider_id,
                                     BytesView payment, BytesView info) {
    if (!ops.verify(payment, info)) return std::nullopt;
    for (const BoardEntry& e : bb.entries())
        if (e.provider == provider_id && bytes_equal(e.payment, payment))
            return std::nullopt;  // duplicate local deposit
    return bb.append(provider_id, ops.name(), payment, info);
}

DepositVerdict deposit_verify(const BulletinBoard& bb, const SchemeOps& ops,
                              const std::vector<G1>& registered_pks,
                              BytesView payment_info) {
    DepositVerdict verdict;
    std::uint64_t pinned = bb.count();  // consistent snapshot

    // Verified entries of this scheme, split into the queried info and the
    // rest; malformed entries are skipped but counted.
    std::vector<const BoardEntry*> matching, others;
    for (std::uint64_t i = 1; i <= pinned; i++) {
        const BoardEntry& e = bb.entries()[i - 1];
        if (e.scheme != ops.name()) continue;
        if (!ops.verify(e.payment, e.info)) {
            verdict.skipped++;
            continue;
        }
        if (bytes_equal(e.info, payment_info))
            matching.push_back(&e);
        else
            others.push_back(&e);
    }

    if (matching.empty()) {
        verdict.kind = DepositVerdict::no_deposit;
        return verdict;
    }

    Bytes named(payment_info.begin(),
                payment_info.begin() +
                    std::min(payment_info.size(), kProviderIdLen));
    auto named_in_info = [&](const std::string& provider) {
        return provider_prefix(provider) == named;
    };

    if (matching.size() > 1) {
        // Double deposit: blame providers that deposited more than once and
        // providers the payment_info does not name.
        std::map<std::string, int> counts;
        for (const BoardEntry* e : matching) counts[e->provider]++;
        std::set<std::string> blamed;
        for (const auto& [provider, c] : counts)
            if (c > 1 || !named_in_info(provider)) blamed.insert(provider);
        verdict.kind = DepositVerdict::guilty_providers;
        verdict.providers.assign(blamed.begin(), blamed.end());
        return verdict;
    }

    const BoardEntry& mine = *matching[0];
    if (!named_in_info(mine.provider)) {
        verdict.kind = DepositVerdict::guilty_providers;
        verdict.providers = {mine.provider};
        return verdict;
    }

    // Serial index over the other entries; pairwise identify only on
    // actual collisions.
    std::map<Bytes, const BoardEntry*> serial_index;
    for (const BoardEntry* e : others)
        for (Bytes& key : ops.serial_keys(e->payment))
            serial_index.emplace(std::move(key), e);

    for (const Bytes& key : ops.serial_keys(mine.payment)) {
        auto hit = serial_index.find(key);
        if (hit == serial_index.end()) continue;
        IdentifyOutcome out =
            ops.identify_pair(registered_pks, mine.payment,
                              hit->second->payment, mine.info,
                              hit->second->info);
        if (out.kind == IdentifyOutcome::guilty) {
            verdict.kind = DepositVerdict::guilty_user;
            verdict.user_pk = out.pk;
            return verdict;
        }
        verdict.kind = DepositVerdict::undetected;
        return verdict;
    }

    verdict.kind = DepositVerdict::cleared;
    return verdict;
}

}  // namespace tecash
