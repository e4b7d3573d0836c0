#include "pebblechain/growth.hpp"

#include <algorithm>
#include <stdexcept>

namespace pebblechain {

static void engine_check(bool cond, const char *msg) {
  if (!cond) throw std::logic_error(msg);
}

static bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

static void check_frame_identity(const GrowthState &state) {
  const std::uint64_t frame = 1ull << state.exponent;
  for (const auto &p : state.pebbles) {
    engine_check(p.position + p.distance_from_seed == frame,
                 "pebble left the 2^exponent frame");
    if (state.total_hash_elements == frame)
      engine_check(p.position == state.total_hash_elements - p.distance_from_seed,
                   "distance-from-front identity broken at a power of two");
  }
}

GrowthState growth_init(const HashProvider &provider, const Digest &seed,
                        CombineMode mode) {
  if (seed.width() != provider.width()) throw contract_error("seed width mismatch");
  GrowthState state;
  state.provider = &provider;
  state.mode = mode;
  state.seed = seed;
  state.grow_value = seed;
  state.total_hash_elements = 1;
  state.grow_pebble = 1;
  state.exponent = 1;
  return state;
}

Pebble initialize_pebble(std::size_t j, const Digest &value) {
  if (j < 1) throw contract_error("pebble index must be at least 1");
  Pebble p;
  p.index = j;
  p.move_increment = 2ull << j;
  p.start_increment = 3ull << j;
  p.dest_increment = 2ull << j;
  p.position = 1ull << j;
  p.destination = p.position;
  p.value = value;
  return p;
}

Digest grow_step(GrowthState &state, const Bytes *evidence) {
  if (state.finalized) throw state_error("chain already handed to exposure");

  if (evidence) {
    if (state.bound_evidence.size() != state.total_hash_elements - 1)
      throw contract_error("chain mixes bound and unbound growth");
    CompressedEvidence ce = state.provider->compress(*evidence);
    ++state.compress_calls;
    state.grow_value = state.provider->evaluate(combine(state.grow_value, ce, state.mode));
    state.bound_evidence.push_back(std::move(ce));
  } else {
    if (!state.bound_evidence.empty())
      throw contract_error("chain is evidence-bound; every step needs evidence");
    state.grow_value = state.provider->evaluate(state.grow_value.bytes);
  }
  ++state.hash_evaluations;
  state.total_hash_elements += 1;
  const std::uint64_t total = state.total_hash_elements;

  if (total - 1 >= 2 && is_pow2(total - 1)) {
    // doubling: the frame grows to 2^(exponent+1), every pebble shifts by the
    // old frame size, and the next pebble is created on the new frontier
    state.exponent += 1;
    const std::uint64_t shift = 1ull << (state.exponent - 1);
    for (auto &p : state.pebbles) {
      p.position += shift;
      p.destination = p.position;
    }
    Pebble created = initialize_pebble(state.grow_pebble, state.grow_value);
    created.distance_from_seed = total - 1;
    engine_check(created.position + created.distance_from_seed == (1ull << state.exponent),
                 "created pebble off the frontier");
    state.pebbles.push_back(std::move(created));
    state.grow_pebble += 1;
  } else {
    for (auto &p : state.pebbles) {
      const std::uint64_t t = p.move_increment + p.distance_from_seed + 1;
      if (total == t) {
        p.value = state.grow_value;
        p.distance_from_seed = total - 1;
        p.position -= p.move_increment;
        p.destination = p.position;
      }
    }
  }

  check_frame_identity(state);
  state.max_live_pebbles =
      std::max<std::uint64_t>(state.max_live_pebbles, state.pebbles.size());
  return state.grow_value;
}

ExposureHandoff finalize(GrowthState &state,
                         std::vector<CompressedEvidence> evidence_replay) {
  if (state.finalized) throw state_error("finalize called twice");
  if (state.total_hash_elements < 2)
    throw state_error("a one-element chain has nothing to traverse");
  if (evidence_replay.empty()) {
    evidence_replay = state.bound_evidence;
  } else if (!state.bound_evidence.empty()) {
    engine_check(evidence_replay == state.bound_evidence,
                 "replay list disagrees with the evidence bound during growth");
  }
  if (!evidence_replay.empty() &&
      evidence_replay.size() != state.total_hash_elements - 1)
    throw contract_error("evidence replay must cover steps 2..total");

  engine_check(state.grow_pebble == state.exponent, "pebble count drifted from exponent");
  Pebble seed_pebble = initialize_pebble(state.grow_pebble, state.seed);
  seed_pebble.distance_from_seed = 0;
  engine_check(seed_pebble.position == (1ull << state.exponent),
               "seed pebble not at the frame root");
  state.pebbles.push_back(std::move(seed_pebble));
  sort_pebbles(state.pebbles);
  for (auto &p : state.pebbles) p.destination = p.position;
  state.finalized = true;
  state.max_live_pebbles =
      std::max<std::uint64_t>(state.max_live_pebbles, state.pebbles.size());

  ExposureHandoff handoff;
  handoff.index_offset = (1ull << state.exponent) - state.total_hash_elements;
  TraversalState &t = handoff.traversal;
  t.provider = state.provider;
  t.mode = state.mode;
  t.n = 1ull << state.exponent;
  t.index_offset = handoff.index_offset;
  t.current_position = handoff.index_offset;
  t.current_value = state.grow_value;
  t.pebbles = state.pebbles;
  t.evidence = std::move(evidence_replay);
  t.max_live_pebbles = t.pebbles.size();
  return handoff;
}

std::int64_t index_map(const GrowthState &state, std::int64_t i) {
  const std::int64_t window =
      (1ll << state.exponent) - static_cast<std::int64_t>(state.total_hash_elements);
  return i - window;
}

}  // namespace pebblechain
