#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pebblechain/chain_oracle.hpp"
#include "pebblechain/pebble.hpp"

namespace pebblechain {

// Amortized preimage traversal over a chain of n = 2^k positions.
//
// A state finalized from online growth of t < 2^k elements runs in the same
// coordinates with index_offset = 2^k - t: pebble positions and
// current_position live on the virtual 2^k chain, emitted positions are
// reported as current_position - index_offset (1..t).
struct TraversalState {
  const HashProvider *provider = nullptr;
  CombineMode mode = CombineMode::concat;
  std::uint64_t n = 0;               // traversal bound, power of two
  std::uint64_t index_offset = 0;    // n - real element count
  std::uint64_t current_position = 0;
  Digest current_value;
  std::vector<Pebble> pebbles;       // sorted by position, disposed last

  // replay list for evidence-bound chains: entry g-2 was bound when the g-th
  // element from the seed was generated
  std::vector<CompressedEvidence> evidence;

  std::uint64_t hash_evaluations = 0;  // instrumentation
  std::uint64_t max_live_pebbles = 0;

  std::uint64_t total_elements() const { return n - index_offset; }
  std::uint64_t emitted() const { return current_position - index_offset; }
  bool exhausted() const { return current_position == n; }
  std::size_t live_pebbles() const;
};

struct Emission {
  std::uint64_t position = 0;  // real exposure position, 1-based
  Digest value;
  bool disposed_pebble = false;
  std::size_t disposed_index = 0;
};

// k pebbles at positions 2^1..2^k holding those chain elements; requires n = 2^k
TraversalState jakobsson_setup(const FullChain &chain);

// one element exposure: advance, move transit pebbles two back with two hash
// applications, emit from the first pebble, relocate it on even positions
Emission traversal_step(TraversalState &state);

// element at a (virtual) position, hashed forward from the nearest live pebble
// at or behind it; counts its applications into the state instrumentation
Digest find_value(TraversalState &state, std::uint64_t target_position);

// closed-form laws used by the instrumented test suite
std::uint64_t law_destination(std::uint64_t j, std::uint64_t k);     // 2^j + k*2^(j+1)
std::uint64_t law_position_bound(std::uint64_t j, std::uint64_t k);  // 2^j + 3k*2^j
std::uint64_t law_back_moves(std::uint64_t j, std::uint64_t n);      // 2^(k-j-1), n = 2^(k+1)
std::uint64_t law_reindex(std::uint64_t l, std::uint64_t k);         // l - 2^k

// tab-separated: step, emitted hex, live positions ascending, disposal note
std::string trace_row(const TraversalState &state, const Emission &emission);

void sort_pebbles(std::vector<Pebble> &pebbles);

}  // namespace pebblechain
