#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pebblechain/hash_provider.hpp"

namespace pebblechain {

// Brute-force reference chain. Stores every element; test ground truth only.
//
// elements[0] is the seed (exposure position n, the last to be disclosed),
// elements[i] is the result of i forward applications, elements[n] is the
// public anchor one step past exposure position 1.
struct FullChain {
  const HashProvider *provider = nullptr;
  CombineMode mode = CombineMode::concat;
  std::size_t n = 0;
  std::vector<Digest> elements;              // size n + 1
  std::vector<CompressedEvidence> evidence;  // size n when bound, else empty
};

// n forward applications from the seed; evidence, when present, holds n raw
// chunks where chunk i-1 is bound into application i.
FullChain build_chain(const HashProvider &provider, const Digest &seed, std::size_t n,
                      const std::optional<std::vector<Bytes>> &evidence, CombineMode mode);

// exposure positions run 1..n; position n is the seed, position 1 the first
// element to be disclosed
const Digest &element_at(const FullChain &chain, std::size_t position);

const Digest &chain_anchor(const FullChain &chain);  // the element past position 1

// golden-file text: one line per exposure position, "<position>\t<hex>", 1..n
std::string dump_chain(const FullChain &chain);

}  // namespace pebblechain
