#pragma once

// Scalar-field helpers, domain-separated hashing to scalars, and the
// deterministic RNG used throughout.

#include "tecash/bytes.hpp"
#include "tecash/curve.hpp"
#include "tecash/fields.hpp"

namespace tecash {

using Scalar = Fr;

Bytes scalar_to_bytes(const Scalar& s);                // 32 bytes, little-endian
bool scalar_from_bytes(BytesView in, Scalar& out);     // strict, rejects >= r

// SHA-512 of the framed transcript, reduced mod r.
Scalar hash_to_scalar(const std::string& tag, BytesView msg);

struct Rng {
    virtual ~Rng() = default;
    virtual void fill(std::uint8_t* out, std::size_t len) = 0;
};

// SHA-256 counter DRBG; deterministic given the seed.
class DrbgRng : public Rng {
  public:
    explicit DrbgRng(BytesView seed);
    explicit DrbgRng(std::uint64_t seed);
    void fill(std::uint8_t* out, std::size_t len) override;

  private:
    Bytes key_;
    std::uint64_t counter_ = 0;
};

Scalar random_scalar(Rng& rng);          // uniform via 64-byte reduction
Scalar random_nonzero_scalar(Rng& rng);

}  // namespace tecash
