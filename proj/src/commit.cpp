#include "tecash/commit.hpp"

#include <stdexcept>

namespace tecash {

G1 pedersen_commit(const PedersenParams& params, const std::vector<Scalar>& msgs,
                   const Scalar& opening) {
    if (msgs.size() != params.bases.size())
        throw std::invalid_argument("message/base count mismatch");
    G1 acc = params.g * opening;
    for (std::size_t i = 0; i < msgs.size(); i++)
        acc = acc + params.bases[i] * msgs[i];
    return acc;
}

bool pedersen_verify(const PedersenParams& params, const G1& com,
                     const std::vector<Scalar>& msgs, const Scalar& opening) {
    return pedersen_commit(params, msgs, opening) == com;
}

}  // namespace tecash
