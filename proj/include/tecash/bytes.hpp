#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tecash {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

inline void append(Bytes& out, BytesView data) {
    out.insert(out.end(), data.begin(), data.end());
}

inline void append_u8(Bytes& out, std::uint8_t v) { out.push_back(v); }

inline void append_u32(Bytes& out, std::uint32_t v) {
    for (int i = 0; i < 4; i++) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void append_u64_be(Bytes& out, std::uint64_t v) {
    for (int i = 7; i >= 0; i--) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

// Length-prefixed chunk; every hash transcript uses this framing.
inline void append_chunk(Bytes& out, BytesView data) {
    append_u32(out, static_cast<std::uint32_t>(data.size()));
    append(out, data);
}

inline Bytes to_bytes(const std::string& s) {
    return Bytes(s.begin(), s.end());
}

std::string to_hex(BytesView data);
Bytes from_hex(const std::string& hex);

std::string base64_encode(BytesView data);
Bytes base64_decode(const std::string& text);  // throws on malformed input

Bytes sha256(BytesView data);
Bytes sha512(BytesView data);

// Cursor for canonical binary decoding; throws std::runtime_error on
// truncated input.
class ByteReader {
  public:
    explicit ByteReader(BytesView data) : data_(data) {}

    BytesView take(std::size_t n);
    std::uint8_t u8();
    std::uint32_t u32();
    Bytes chunk();  // u32 length prefix + body
    bool done() const { return pos_ == data_.size(); }
    std::size_t remaining() const { return data_.size() - pos_; }

  private:
    BytesView data_;
    std::size_t pos_ = 0;
};

}  // namespace tecash
