#pragma once

#include <string>

#include "pebblechain/growth.hpp"

namespace pebblechain {

// Versioned text snapshots. Both formats round-trip byte-identically:
//
//   pebblechain-state v1 <provider> <mode> <total_hash_elements> <seed-hex>
//   <index> <position> <destination> <start_increment> <dest_increment>
//       <move_increment> <distance_from_seed> <value-hex>   (one line per pebble)
//   <grow_value-hex>
//
//   pebblechain-exposure v1 <provider> <mode> <total> <current_position>
//   <same pebble line layout, live pebbles only>
//   <current_value-hex>
//
// Evidence-bound chains append one "evidence <hex>" line per compressed entry.
// Instrumentation counters are deliberately not persisted.

std::string save_growth(const GrowthState &state);
GrowthState load_growth(const std::string &text);

std::string save_exposure(const TraversalState &state);
TraversalState load_exposure(const std::string &text);

// true when the file content is an exposure snapshot, false for growth;
// throws parse_error for anything else
bool is_exposure_snapshot(const std::string &text);

}  // namespace pebblechain
