#include "tecash/group.hpp"

namespace tecash {

Bytes scalar_to_bytes(const Scalar& s) {
    std::uint8_t be[32];
    s.to_bytes(be);
    Bytes out(32);
    for (int i = 0; i < 32; i++) out[i] = be[31 - i];
    return out;
}

bool scalar_from_bytes(BytesView in, Scalar& out) {
    if (in.size() != 32) return false;
    std::uint8_t be[32];
    for (int i = 0; i < 32; i++) be[i] = in[31 - i];
    return Scalar::from_bytes(be, out);
}

Scalar hash_to_scalar(const std::string& tag, BytesView msg) {
    fields_init();
    Bytes transcript;
    append_chunk(transcript, to_bytes(tag));
    append_chunk(transcript, msg);
    Bytes d = sha512(transcript);
    return Scalar::from_bytes_wide(d.data(), d.size());
}

DrbgRng::DrbgRng(BytesView seed) : key_(sha256(seed)) {}

DrbgRng::DrbgRng(std::uint64_t seed) {
    Bytes s;
    append_u64_be(s, seed);
    key_ = sha256(s);
}

void DrbgRng::fill(std::uint8_t* out, std::size_t len) {
    while (len > 0) {
        Bytes block = key_;
        append_u64_be(block, counter_++);
        Bytes d = sha256(block);
        std::size_t take = len < d.size() ? len : d.size();
        std::memcpy(out, d.data(), take);
        out += take;
        len -= take;
    }
}

Scalar random_scalar(Rng& rng) {
    fields_init();
    std::uint8_t buf[64];
    rng.fill(buf, sizeof buf);
    return Scalar::from_bytes_wide(buf, sizeof buf);
}

Scalar random_nonzero_scalar(Rng& rng) {
    for (;;) {
        Scalar s = random_scalar(rng);
        if (!s.is_zero()) return s;
    }
}

}  // namespace tecash
