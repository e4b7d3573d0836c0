#pragma once

#include <cstdint>
#include <vector>

#include "pebblechain/traversal.hpp"

namespace pebblechain {

// Online phase: grow a chain of unknown final length while keeping exactly the
// pebble frontier the exposure phase needs.
//
// Pebble positions are kept in the coordinates of the eventual 2^exponent
// chain, so position + distance_from_seed = 2^exponent holds for every pebble
// at every observation point; the plain distance-from-front identity
// position = total_hash_elements - distance_from_seed holds exactly whenever
// total_hash_elements = 2^exponent.
struct GrowthState {
  const HashProvider *provider = nullptr;
  CombineMode mode = CombineMode::concat;
  Digest seed;
  Digest grow_value;                    // newest element
  std::uint64_t total_hash_elements = 0;
  std::size_t grow_pebble = 0;          // next pebble index to create
  std::uint64_t exponent = 0;
  std::vector<Pebble> pebbles;          // creation order
  bool finalized = false;

  // compressed evidence of steps 2..total; either empty (unbound chain) or
  // complete, enforced per step
  std::vector<CompressedEvidence> bound_evidence;

  std::uint64_t hash_evaluations = 0;   // chain evaluations (one per step)
  std::uint64_t compress_calls = 0;     // evidence compressions
  std::uint64_t max_live_pebbles = 0;
};

struct ExposureHandoff {
  TraversalState traversal;
  std::uint64_t index_offset = 0;  // 2^sigma - total_hash_elements
};

GrowthState growth_init(const HashProvider &provider, const Digest &seed, CombineMode mode);

// one chain extension: exactly one chain hash evaluation, then either the
// doubling branch (shift all pebbles, create the next one) or the move branch
// (refresh every pebble whose trigger total was reached)
Digest grow_step(GrowthState &state, const Bytes *evidence = nullptr);

// scheduling constants for origin index j; position = destination = 2^j
Pebble initialize_pebble(std::size_t j, const Digest &value);

// place the seed pebble, pin destinations, and hand the frontier to the
// exposure phase; evidence_replay must hold the compressed evidence of steps
// 2..total in order when the chain was grown bound
ExposureHandoff finalize(GrowthState &state,
                         std::vector<CompressedEvidence> evidence_replay = {});

// fixed index i mapped into the emitted window: i - (2^sigma - total); sigma is
// the post-finalize pebble count (= exponent)
std::int64_t index_map(const GrowthState &state, std::int64_t i);

}  // namespace pebblechain
