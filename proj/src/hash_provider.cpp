#include "pebblechain/hash_provider.hpp"

#include <algorithm>
#include <cstring>

#include <openssl/evp.h>

namespace pebblechain {

// hex helpers

static const char kHexDigits[] = "0123456789abcdef";

std::string to_hex(const Bytes &data) {
  std::string out;
  out.resize(data.size() * 2);
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[2 * i] = kHexDigits[data[i] >> 4];
    out[2 * i + 1] = kHexDigits[data[i] & 0x0f];
  }
  return out;
}

static int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;  // uppercase rejected: ledger bytes must be canonical
}

Bytes from_hex(std::string_view text) {
  if (text.size() % 2 != 0) throw parse_error("hex string has odd length");
  Bytes out(text.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_nibble(text[2 * i]);
    int lo = hex_nibble(text[2 * i + 1]);
    if (hi < 0 || lo < 0) throw parse_error("invalid hex character");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

Bytes le64_bytes(std::uint64_t x) {
  Bytes out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(x >> (8 * i));
  return out;
}

// combine modes

CombineMode combine_mode_from_name(std::string_view name) {
  if (name == "xor") return CombineMode::xor_bytes;
  if (name == "concat") return CombineMode::concat;
  throw contract_error("unknown combine mode: " + std::string(name));
}

std::string combine_mode_name(CombineMode mode) {
  return mode == CombineMode::xor_bytes ? "xor" : "concat";
}

Bytes combine(const Digest &v, const CompressedEvidence &c, CombineMode mode) {
  if (mode == CombineMode::xor_bytes) {
    if (v.width() != c.width())
      throw contract_error("xor combine requires equal widths");
    Bytes out = v.bytes;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= c.bytes[i];
    return out;
  }
  Bytes out = v.bytes;
  out.insert(out.end(), c.bytes.begin(), c.bytes.end());
  return out;
}

// provider methods

Digest HashProvider::evaluate(const Bytes &input) const {
  Digest d{fn_(input)};
  if (d.width() != id_.width) throw contract_error("provider produced wrong width");
  return d;
}

CompressedEvidence HashProvider::compress(const Bytes &evidence) const {
  Bytes input = le64_bytes(evidence.size());
  input.insert(input.end(), evidence.begin(), evidence.end());
  return CompressedEvidence{evaluate(input).bytes};
}

// mix64-test
// Interpret 8-byte little-endian blocks; x = mix(block0), then x = mix(x ^ block_i)
// for each following block; short and partial blocks are zero padded.

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDull;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ull;
  x ^= x >> 33;
  return x;
}

static std::uint64_t le64_block(const Bytes &data, std::size_t offset) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < 8 && offset + i < data.size(); ++i)
    x |= static_cast<std::uint64_t>(data[offset + i]) << (8 * i);
  return x;
}

static Bytes mix64_hash(const Bytes &input) {
  std::uint64_t x = mix64(le64_block(input, 0));
  for (std::size_t offset = 8; offset < input.size(); offset += 8)
    x = mix64(x ^ le64_block(input, offset));
  return le64_bytes(x);
}

// openssl-backed providers

static Bytes evp_hash(const EVP_MD *md, const Bytes &input) {
  Bytes out(EVP_MD_size(md));
  unsigned int written = 0;
  if (EVP_Digest(input.data(), input.size(), out.data(), &written, md, nullptr) != 1 ||
      written != out.size())
    throw error("digest computation failed");
  return out;
}

// registry

ProviderRegistry &ProviderRegistry::instance() {
  static ProviderRegistry registry;
  return registry;
}

ProviderRegistry::ProviderRegistry() {
  add("mix64-test", 8, mix64_hash);
  add("sha1", 20, [](const Bytes &in) { return evp_hash(EVP_sha1(), in); });
  add("sha256", 32, [](const Bytes &in) { return evp_hash(EVP_sha256(), in); });
  add("sha3-256", 32, [](const Bytes &in) { return evp_hash(EVP_sha3_256(), in); });
}

void ProviderRegistry::add(const std::string &name, std::size_t width,
                           HashProvider::HashFn fn) {
  if (width < 8) throw contract_error("provider width must be at least 8 bytes");
  if (has(name)) throw contract_error("provider already registered: " + name);
  providers_.emplace_back(HashProviderId{name, width}, std::move(fn));
}

const HashProvider &ProviderRegistry::get(const std::string &name) const {
  for (const auto &p : providers_)
    if (p.name() == name) return p;
  throw unknown_provider_error("unknown provider: " + name);
}

bool ProviderRegistry::has(const std::string &name) const {
  for (const auto &p : providers_)
    if (p.name() == name) return true;
  return false;
}

std::vector<std::string> ProviderRegistry::names() const {
  std::vector<std::string> out;
  for (const auto &p : providers_) out.push_back(p.name());
  return out;
}

}  // namespace pebblechain
