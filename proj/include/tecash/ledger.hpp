#pragma once

// Append-only bulletin board (JSON-lines file) plus the authority-side
// deposit bookkeeping: clearance of single deposits and double-spend /
// double-deposit attribution via pairwise identification.

#include "tecash/compact.hpp"
#include "tecash/divisible.hpp"

#include <map>
#include <optional>
#include <string>

namespace tecash {

struct BoardEntry {
    std::uint64_t idx = 0;  // dense from 1
    std::string provider;
    std::string scheme;  // "compact" | "divisible"
    Bytes payment;
    Bytes info;
};

// Single-writer append-only board backed by one JSON object per line.
// Loading tolerates a trailing partial line (crash during append).
class BulletinBoard {
  public:
    BulletinBoard() = default;                    // in-memory only
    explicit BulletinBoard(const std::string& path);  // loads + persists

    std::uint64_t append(const std::string& provider, const std::string& scheme,
                         BytesView payment, BytesView info);
    std::optional<BoardEntry> read(std::uint64_t idx) const;
    std::uint64_t count() const { return entries_.size(); }
    const std::vector<BoardEntry>& entries() const { return entries_; }

  private:
    std::string path_;
    std::vector<BoardEntry> entries_;
};

// First kProviderIdLen bytes of a payment_info for a named provider.
Bytes provider_prefix(const std::string& provider_id);
// payment_info = provider prefix || nonce bytes.
Bytes make_payment_info(const std::string& provider_id, BytesView nonce);

// Scheme-specific hooks the ledger logic needs.
struct SchemeOps {
    virtual ~SchemeOps() = default;
    virtual std::string name() const = 0;
    virtual bool verify(BytesView payment, BytesView info) const = 0;
    // Canonical per-coin serial keys; empty on malformed payment.
    virtual std::vector<Bytes> serial_keys(BytesView payment) const = 0;
    virtual IdentifyOutcome identify_pair(const std::vector<G1>& pk_list,
                                          BytesView pay1, BytesView pay2,
                                          BytesView info1,
                                          BytesView info2) const = 0;
};

struct CompactOps final : SchemeOps {
    const CompactParams* params;
    const VerificationKey* vk;
    CompactOps(const CompactParams& p, const VerificationKey& v)
        : params(&p), vk(&v) {}
    std::string name() const override { return "compact"; }
    bool verify(BytesView payment, BytesView info) const override;
    std::vector<Bytes> serial_keys(BytesView payment) const override;
    IdentifyOutcome identify_pair(const std::vector<G1>& pk_list,
                                  BytesView pay1, BytesView pay2,
                                  BytesView info1,
                                  BytesView info2) const override;
};

struct DivisibleOps final : SchemeOps {
    const DivisibleParams* params;
    const DivisibleAuthorityParams* authority;
    const VerificationKey* vk;
    DivisibleOps(const DivisibleParams& p, const DivisibleAuthorityParams& a,
                 const VerificationKey& v)
        : params(&p), authority(&a), vk(&v) {}
    std::string name() const override { return "divisible"; }
    bool verify(BytesView payment, BytesView info) const override;
    std::vector<Bytes> serial_keys(BytesView payment) const override;
    IdentifyOutcome identify_pair(const std::vector<G1>& pk_list,
                                  BytesView pay1, BytesView pay2,
                                  BytesView info1,
                                  BytesView info2) const override;
};

// Provider-side deposit: re-verifies the payment and refuses a provider's
// duplicate deposit of the same payment object. Returns the board index.
std::optional<std::uint64_t> deposit(BulletinBoard& bb, const SchemeOps& ops,
                                     const std::string& provider_id,
                                     BytesView payment, BytesView info);

struct DepositVerdict {
    enum Kind : std::uint8_t {
        no_deposit,
        guilty_providers,
        cleared,
        guilty_user,
        undetected,
    };
    Kind kind = no_deposit;
    std::vector<std::string> providers;  // for guilty_providers
    G1 user_pk;                          // for guilty_user
    std::uint32_t skipped = 0;           // malformed entries ignored
};

DepositVerdict deposit_verify(const BulletinBoard& bb, const SchemeOps& ops,
                              const std::vector<G1>& registered_pks,
                              BytesView payment_info);

}  // namespace tecash
