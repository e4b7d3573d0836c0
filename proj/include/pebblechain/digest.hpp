#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pebblechain/errors.hpp"

namespace pebblechain {

using Bytes = std::vector<std::uint8_t>;

// value of one hash-chain element; width fixed by the owning provider
struct Digest {
  Bytes bytes;

  bool operator==(const Digest &other) const { return bytes == other.bytes; }
  bool operator!=(const Digest &other) const { return bytes != other.bytes; }
  std::size_t width() const { return bytes.size(); }
};

// fixed-width digest of one evidence chunk, same width as the provider's Digest
struct CompressedEvidence {
  Bytes bytes;

  bool operator==(const CompressedEvidence &other) const { return bytes == other.bytes; }
  std::size_t width() const { return bytes.size(); }
};

std::string to_hex(const Bytes &data);
inline std::string to_hex(const Digest &d) { return to_hex(d.bytes); }

// strict decoder: lowercase hex only, even length; throws parse_error otherwise
Bytes from_hex(std::string_view text);

Bytes le64_bytes(std::uint64_t x);

}  // namespace pebblechain
