#pragma once

// Generic Fiat-Shamir proofs of knowledge for discrete-log relations.
// A statement is a list of equations "target = prod base_k ^ w_{i_k}"
// where each equation lives in G1, G2 or GT and the witnesses w_i are
// shared across equations. One joint challenge binds every equation, the
// statement encoding itself, a context tag and an arbitrary message.

#include "tecash/group.hpp"

#include <string>
#include <variant>
#include <vector>

namespace tecash {

using NizkElt = std::variant<G1, G2, Gt>;

struct NizkTerm {
    NizkElt base;
    std::uint32_t witness = 0;
};

struct NizkEq {
    NizkElt target;
    std::vector<NizkTerm> terms;
};

struct NizkStatement {
    std::string context;  // domain-separation tag
    std::uint32_t witness_count = 0;
    std::vector<NizkEq> eqs;
    Bytes message;  // extra bytes signed by the proof
};

struct NizkProof {
    Scalar challenge;
    std::vector<Scalar> responses;

    Bytes to_bytes() const;
    static bool from_bytes(BytesView in, NizkProof& out);
};

// Throws if the witness vector does not satisfy the statement or if the
// statement is malformed (mixed groups in one equation, bad indices).
NizkProof nizk_prove(const NizkStatement& st, const std::vector<Scalar>& wit,
                     Rng& rng);

bool nizk_verify(const NizkStatement& st, const NizkProof& proof);

}  // namespace tecash
