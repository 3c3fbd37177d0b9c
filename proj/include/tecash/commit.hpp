#pragma once

// Pedersen commitments over G1.

#include "tecash/group.hpp"

#include <vector>

namespace tecash {

struct PedersenParams {
    G1 g;                   // blinding base
    std::vector<G1> bases;  // message bases, fixed at setup
};

// g^opening * prod bases_i^{msgs_i}; throws on length mismatch.
G1 pedersen_commit(const PedersenParams& params, const std::vector<Scalar>& msgs,
                   const Scalar& opening);

bool pedersen_verify(const PedersenParams& params, const G1& com,
                     const std::vector<Scalar>& msgs, const Scalar& opening);

}  // namespace tecash
