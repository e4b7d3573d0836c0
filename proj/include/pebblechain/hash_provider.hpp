#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pebblechain/digest.hpp"

namespace pebblechain {

enum class CombineMode { xor_bytes, concat };

CombineMode combine_mode_from_name(std::string_view name);
std::string combine_mode_name(CombineMode mode);

struct HashProviderId {
  std::string name;
  std::size_t width = 0;  // digest width in bytes, >= 8
};

// one registered hash function; immutable after registration, usable from any thread
class HashProvider {
 public:
  using HashFn = std::function<Bytes(const Bytes &)>;

  HashProvider(HashProviderId id, HashFn fn) : id_(std::move(id)), fn_(std::move(fn)) {}

  const HashProviderId &id() const { return id_; }
  const std::string &name() const { return id_.name; }
  std::size_t width() const { return id_.width; }

  Digest evaluate(const Bytes &input) const;

  // fixed-width digest of arbitrary evidence: evaluate(le64(len) || evidence)
  CompressedEvidence compress(const Bytes &evidence) const;

 private:
  HashProviderId id_;
  HashFn fn_;
};

// process-wide registry; ships with mix64-test, sha1, sha256 and sha3-256
class ProviderRegistry {
 public:
  static ProviderRegistry &instance();

  void add(const std::string &name, std::size_t width, HashProvider::HashFn fn);
  const HashProvider &get(const std::string &name) const;  // throws unknown_provider_error
  bool has(const std::string &name) const;
  std::vector<std::string> names() const;

 private:
  ProviderRegistry();
  std::vector<HashProvider> providers_;
};

inline const HashProvider &provider(const std::string &name) {
  return ProviderRegistry::instance().get(name);
}

// xor: width-preserving bytewise xor (widths must match); concat: v bytes then c bytes
Bytes combine(const Digest &v, const CompressedEvidence &c, CombineMode mode);

// the deterministic 64-bit test mix, exposed for reference-value tests
std::uint64_t mix64(std::uint64_t x);

}  // namespace pebblechain
