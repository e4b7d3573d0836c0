#pragma once

#include <cstdint>

#include "pebblechain/digest.hpp"

namespace pebblechain {

// One stored chain element plus its scheduling bookkeeping. Positions are
// exposure positions (1-based from the disclosure end); a disposed pebble is
// flagged instead of carrying literal infinities and sorts after live ones.
struct Pebble {
  std::size_t index = 0;  // origin j, never mutated after creation
  std::uint64_t position = 0;
  std::uint64_t destination = 0;
  std::uint64_t start_increment = 0;  // 3 * 2^j
  std::uint64_t dest_increment = 0;   // 2^(j+1)
  std::uint64_t move_increment = 0;   // 2^(j+1), growth phase
  std::uint64_t distance_from_seed = 0;  // hops from the seed to the held value
  Digest value;
  bool disposed = false;

  std::uint64_t back_moves = 0;  // instrumentation, not persisted
};

}  // namespace pebblechain
