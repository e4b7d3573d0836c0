#include "pebblechain/traversal.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace pebblechain {

static void engine_check(bool cond, const char *msg) {
  if (!cond) throw std::logic_error(msg);
}

static bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::size_t TraversalState::live_pebbles() const {
  std::size_t count = 0;
  for (const auto &p : pebbles)
    if (!p.disposed) ++count;
  return count;
}

void sort_pebbles(std::vector<Pebble> &pebbles) {
  std::stable_sort(pebbles.begin(), pebbles.end(), [](const Pebble &a, const Pebble &b) {
    if (a.disposed != b.disposed) return !a.disposed;  // disposed sort last
    if (a.position != b.position) return a.position < b.position;
    return a.destination > b.destination;  // transient ties: larger destination first
  });
}

// one hash application from (virtual) position source to source-1, rebinding
// the evidence that was attached when the target element was generated
static Digest apply_hash(TraversalState &state, const Digest &value,
                         std::uint64_t source_position) {
  ++state.hash_evaluations;
  if (state.evidence.empty()) return state.provider->evaluate(value.bytes);

  std::uint64_t real_source = source_position - state.index_offset;
  engine_check(real_source >= 2 && real_source <= state.total_elements(),
               "hash application outside the bound range");
  const CompressedEvidence &ce = state.evidence[state.total_elements() - real_source];
  return state.provider->evaluate(combine(value, ce, state.mode));
}

TraversalState jakobsson_setup(const FullChain &chain) {
  if (!is_pow2(chain.n) || chain.n < 2)
    throw contract_error("setup requires a chain of 2^k elements, k >= 1");

  std::uint64_t k = std::countr_zero(static_cast<std::uint64_t>(chain.n));
  TraversalState state;
  state.provider = chain.provider;
  state.mode = chain.mode;
  state.n = chain.n;
  state.index_offset = 0;
  state.current_position = 0;
  state.current_value = chain_anchor(chain);
  state.evidence = chain.evidence;

  for (std::uint64_t j = 1; j <= k; ++j) {
    Pebble p;
    p.index = j;
    p.start_increment = 3ull << j;
    p.dest_increment = 2ull << j;
    p.move_increment = 2ull << j;
    p.position = 1ull << j;
    p.destination = p.position;
    p.distance_from_seed = chain.n - p.position;
    p.value = element_at(chain, p.position);
    state.pebbles.push_back(std::move(p));
  }
  state.max_live_pebbles = state.pebbles.size();
  return state;
}

static Digest find_value_excluding(TraversalState &state, std::uint64_t target,
                                   std::size_t exclude_slot) {
  const Pebble *source = nullptr;
  for (std::size_t i = 0; i < state.pebbles.size(); ++i) {
    const Pebble &p = state.pebbles[i];
    if (i == exclude_slot || p.disposed || p.position < target) continue;
    if (!source || p.position < source->position) source = &p;
  }
  engine_check(source != nullptr, "no pebble at or behind the requested position");

  Digest value = source->value;
  for (std::uint64_t pos = source->position; pos > target; --pos)
    value = apply_hash(state, value, pos);
  return value;
}

Digest find_value(TraversalState &state, std::uint64_t target_position) {
  if (target_position <= state.index_offset || target_position > state.n)
    throw contract_error("position out of range");
  return find_value_excluding(state, target_position, state.pebbles.size());
}

Emission traversal_step(TraversalState &state) {
  if (state.exhausted()) throw exhausted_error("chain exhausted");
  state.current_position += 1;
  const std::uint64_t current = state.current_position;

  // transit: every pebble short of its destination advances two positions
  for (auto &p : state.pebbles) {
    if (p.disposed || p.position == p.destination) continue;
    p.value = apply_hash(state, p.value, p.position);
    p.value = apply_hash(state, p.value, p.position - 1);
    p.position -= 2;
    p.distance_from_seed = state.n - p.position;
    engine_check(p.position >= p.destination, "pebble moved past its destination");
  }

  engine_check(!state.pebbles.empty() && !state.pebbles.front().disposed,
               "no live pebble at the front");
  Pebble &first = state.pebbles.front();

  Emission emission;
  if (current % 2 == 1) {
    engine_check(first.position == current + 1, "front pebble misplaced on odd step");
    emission.value = apply_hash(state, first.value, first.position);
  } else {
    engine_check(first.position == current, "front pebble misplaced on even step");
    emission.value = first.value;
    first.position += first.start_increment;
    first.destination += first.dest_increment;
    first.back_moves += 1;
    if (first.destination > state.n) {
      first.disposed = true;
      emission.disposed_pebble = true;
      emission.disposed_index = first.index;
    } else {
      first.value = find_value_excluding(state, first.position, 0);
      first.distance_from_seed = state.n - first.position;
    }
    sort_pebbles(state.pebbles);
  }

  state.max_live_pebbles = std::max<std::uint64_t>(state.max_live_pebbles,
                                                   state.live_pebbles());
  state.current_value = emission.value;
  emission.position = current - state.index_offset;
  return emission;
}

std::uint64_t law_destination(std::uint64_t j, std::uint64_t k) {
  return (1ull << j) + k * (2ull << j);
}

std::uint64_t law_position_bound(std::uint64_t j, std::uint64_t k) {
  return (1ull << j) + 3 * k * (1ull << j);
}

std::uint64_t law_back_moves(std::uint64_t j, std::uint64_t n) {
  if (!is_pow2(n) || n < 4) throw contract_error("n must be 2^(k+1), k >= 1");
  std::uint64_t k = std::countr_zero(n) - 1;
  if (j < 1 || j >= k) throw contract_error("requires 1 <= j < k");
  return 1ull << (k - j - 1);
}

std::uint64_t law_reindex(std::uint64_t l, std::uint64_t k) {
  if (l < (1ull << k)) throw contract_error("position below the reindex base");
  return l - (1ull << k);
}

std::string trace_row(const TraversalState &state, const Emission &emission) {
  std::string row = std::to_string(emission.position);
  row += '\t';
  row += to_hex(emission.value);
  row += '\t';
  bool any = false;
  for (const auto &p : state.pebbles) {
    if (p.disposed) continue;
    if (any) row += ',';
    row += std::to_string(p.position - state.index_offset);
    any = true;
  }
  row += '\t';
  row += emission.disposed_pebble ? "dispose:" + std::to_string(emission.disposed_index)
                                  : std::string("-");
  return row;
}

}  // namespace pebblechain
