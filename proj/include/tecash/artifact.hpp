#pragma once

// Binary encodings for every object the CLI moves between subcommands,
// plus the versioned JSON envelope { kind, scheme, version, payload_b64 }
// each artifact file is wrapped in.

#include "tecash/compact.hpp"
#include "tecash/divisible.hpp"

#include <string>

namespace tecash {

// Envelope I/O. read_artifact enforces the expected kind and, when
// expect_scheme is non-empty, the scheme tag; returns false on any
// mismatch or parse failure.
void write_artifact(const std::string& path, const std::string& kind,
                    const std::string& scheme, BytesView payload);
bool read_artifact(const std::string& path, const std::string& expect_kind,
                   const std::string& expect_scheme, Bytes& payload,
                   std::string* scheme_out = nullptr);

Bytes encode_compact_params(const CompactParams& pp);
bool decode_compact_params(BytesView in, CompactParams& out);

Bytes encode_divisible_bundle(const DivisibleParams& pp,
                              const DivisibleAuthorityParams& auth);
bool decode_divisible_bundle(BytesView in, DivisibleParams& pp,
                             DivisibleAuthorityParams& auth);

Bytes encode_vk(const VerificationKey& vk);
bool decode_vk(BytesView in, VerificationKey& out);

Bytes encode_authority_share(const AuthorityKeyShare& sk,
                             const AuthorityPublicShare& pk);
bool decode_authority_share(BytesView in, AuthorityKeyShare& sk,
                            AuthorityPublicShare& pk);

Bytes encode_user_key(const UserKeyPair& user);
bool decode_user_key(BytesView in, UserKeyPair& out);

Bytes encode_wallet(const Wallet& w);
bool decode_wallet(BytesView in, Wallet& out);

Bytes encode_request(const WithdrawalRequest& req);
bool decode_request(BytesView in, WithdrawalRequest& out);

Bytes encode_request_info(const RequestInfo& info);
bool decode_request_info(BytesView in, RequestInfo& out);

// An authority's response: the blind share plus its public share so the
// user can unblind and check without a separate registry lookup.
Bytes encode_blind_share(const BlindShare& share,
                         const AuthorityPublicShare& pub);
bool decode_blind_share(BytesView in, BlindShare& share,
                        AuthorityPublicShare& pub);

// Payment bytes together with their payment_info.
Bytes encode_payment_bundle(BytesView payment, BytesView info);
bool decode_payment_bundle(BytesView in, Bytes& payment, Bytes& info);

Bytes encode_registry(const std::vector<G1>& pks);
bool decode_registry(BytesView in, std::vector<G1>& out);

}  // namespace tecash
