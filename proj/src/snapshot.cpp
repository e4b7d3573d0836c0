#include "pebblechain/snapshot.hpp"

#include <bit>

#include "pebblechain/textio.hpp"

namespace pebblechain {

static bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

static void append_pebble_line(std::string &out, const Pebble &p) {
  out += std::to_string(p.index);
  out += ' ';
  out += std::to_string(p.position);
  out += ' ';
  out += std::to_string(p.destination);
  out += ' ';
  out += std::to_string(p.start_increment);
  out += ' ';
  out += std::to_string(p.dest_increment);
  out += ' ';
  out += std::to_string(p.move_increment);
  out += ' ';
  out += std::to_string(p.distance_from_seed);
  out += ' ';
  out += to_hex(p.value);
  out += '\n';
}

static Pebble parse_pebble_line(std::string_view line, std::size_t width) {
  auto fields = split_fields(line, ' ');
  if (fields.size() != 8) throw parse_error("pebble line must have 8 fields");
  Pebble p;
  p.index = parse_u64(fields[0]);
  p.position = parse_u64(fields[1]);
  p.destination = parse_u64(fields[2]);
  p.start_increment = parse_u64(fields[3]);
  p.dest_increment = parse_u64(fields[4]);
  p.move_increment = parse_u64(fields[5]);
  p.distance_from_seed = parse_u64(fields[6]);
  p.value = Digest{from_hex(fields[7])};
  if (p.index < 1) throw parse_error("pebble index must be positive");
  if (p.value.width() != width) throw parse_error("pebble value width mismatch");
  if (p.start_increment != (3ull << p.index) || p.dest_increment != (2ull << p.index) ||
      p.move_increment != (2ull << p.index))
    throw parse_error("pebble increments inconsistent with its index");
  return p;
}

std::string save_growth(const GrowthState &state) {
  if (state.finalized) throw state_error("finalized state needs the exposure format");
  std::string out = "pebblechain-state v1 ";
  out += state.provider->name();
  out += ' ';
  out += combine_mode_name(state.mode);
  out += ' ';
  out += std::to_string(state.total_hash_elements);
  out += ' ';
  out += to_hex(state.seed);
  out += '\n';
  for (const auto &p : state.pebbles) append_pebble_line(out, p);
  out += to_hex(state.grow_value);
  out += '\n';
  for (const auto &ce : state.bound_evidence) {
    out += "evidence ";
    out += to_hex(ce.bytes);
    out += '\n';
  }
  return out;
}

GrowthState load_growth(const std::string &text) {
  auto lines = split_lines(text);
  if (lines.size() < 2) throw parse_error("truncated snapshot");
  auto header = split_fields(lines[0], ' ');
  if (header.size() != 6 || header[0] != "pebblechain-state" || header[1] != "v1")
    throw parse_error("not a growth snapshot");

  const HashProvider &prov = provider(std::string(header[2]));
  GrowthState state;
  state.provider = &prov;
  state.mode = combine_mode_from_name(header[3]);
  state.total_hash_elements = parse_u64(header[4]);
  state.seed = Digest{from_hex(header[5])};
  if (state.total_hash_elements < 1) throw parse_error("totals start at 1");
  if (state.seed.width() != prov.width()) throw parse_error("seed width mismatch");

  std::size_t li = 1;
  while (li < lines.size() && split_fields(lines[li], ' ').size() == 8) {
    Pebble p = parse_pebble_line(lines[li], prov.width());
    if (p.index != li) throw parse_error("pebble indices must ascend from 1");
    state.pebbles.push_back(std::move(p));
    ++li;
  }
  if (li >= lines.size()) throw parse_error("snapshot ends before the grow value");
  state.grow_value = Digest{from_hex(lines[li])};
  if (state.grow_value.width() != prov.width())
    throw parse_error("grow value width mismatch");
  ++li;
  for (; li < lines.size(); ++li) {
    auto fields = split_fields(lines[li], ' ');
    if (fields.size() != 2 || fields[0] != "evidence")
      throw parse_error("trailing lines must be evidence entries");
    Bytes ce = from_hex(fields[1]);
    if (ce.size() != prov.width()) throw parse_error("evidence width mismatch");
    state.bound_evidence.push_back(CompressedEvidence{std::move(ce)});
  }
  if (!state.bound_evidence.empty() &&
      state.bound_evidence.size() != state.total_hash_elements - 1)
    throw parse_error("evidence entries must cover steps 2..total");

  const std::uint64_t total = state.total_hash_elements;
  state.exponent =
      total == 1 ? 1 : 64 - std::countl_zero<std::uint64_t>(total - 1);
  state.grow_pebble = state.pebbles.size() + 1;

  if (state.pebbles.size() != static_cast<std::size_t>(state.exponent - 1))
    throw parse_error("pebble count inconsistent with total");
  for (const auto &p : state.pebbles) {
    if (p.position + p.distance_from_seed != (1ull << state.exponent))
      throw parse_error("pebble outside the growth frame");
    if (p.destination != p.position) throw parse_error("growth pebble not settled");
  }
  return state;
}

std::string save_exposure(const TraversalState &state) {
  std::string out = "pebblechain-exposure v1 ";
  out += state.provider->name();
  out += ' ';
  out += combine_mode_name(state.mode);
  out += ' ';
  out += std::to_string(state.total_elements());
  out += ' ';
  out += std::to_string(state.current_position);
  out += '\n';
  // odd steps leave the in-memory list transiently unsorted; the engine never
  // depends on order, so serialize the canonical one
  std::vector<Pebble> live;
  for (const auto &p : state.pebbles)
    if (!p.disposed) live.push_back(p);
  sort_pebbles(live);
  for (const auto &p : live) append_pebble_line(out, p);
  out += to_hex(state.current_value);
  out += '\n';
  for (const auto &ce : state.evidence) {
    out += "evidence ";
    out += to_hex(ce.bytes);
    out += '\n';
  }
  return out;
}

TraversalState load_exposure(const std::string &text) {
  auto lines = split_lines(text);
  if (lines.size() < 2) throw parse_error("truncated snapshot");
  auto header = split_fields(lines[0], ' ');
  if (header.size() != 6 || header[0] != "pebblechain-exposure" || header[1] != "v1")
    throw parse_error("not an exposure snapshot");

  const HashProvider &prov = provider(std::string(header[2]));
  TraversalState state;
  state.provider = &prov;
  state.mode = combine_mode_from_name(header[3]);
  const std::uint64_t total = parse_u64(header[4]);
  if (total < 2) throw parse_error("exposure needs at least two elements");
  state.n = std::bit_ceil(total);
  state.index_offset = state.n - total;
  state.current_position = parse_u64(header[5]);
  if (state.current_position < state.index_offset || state.current_position > state.n)
    throw parse_error("current position outside the emission window");

  std::uint64_t previous_position = 0;
  std::size_t li = 1;
  while (li < lines.size() && split_fields(lines[li], ' ').size() == 8) {
    Pebble p = parse_pebble_line(lines[li], prov.width());
    if (p.destination > p.position || p.position > state.n)
      throw parse_error("pebble outside the traversal range");
    if (p.distance_from_seed != state.n - p.position)
      throw parse_error("pebble distance inconsistent with its position");
    if (p.position < previous_position) throw parse_error("pebbles must be sorted");
    previous_position = p.position;
    state.pebbles.push_back(std::move(p));
    ++li;
  }
  if (!state.exhausted() && state.pebbles.empty())
    throw parse_error("unfinished exposure has no pebbles");
  if (li >= lines.size()) throw parse_error("snapshot ends before the current value");
  state.current_value = Digest{from_hex(lines[li])};
  if (state.current_value.width() != prov.width())
    throw parse_error("current value width mismatch");
  ++li;
  for (; li < lines.size(); ++li) {
    auto fields = split_fields(lines[li], ' ');
    if (fields.size() != 2 || fields[0] != "evidence")
      throw parse_error("trailing lines must be evidence entries");
    Bytes ce = from_hex(fields[1]);
    if (ce.size() != prov.width()) throw parse_error("evidence width mismatch");
    state.evidence.push_back(CompressedEvidence{std::move(ce)});
  }
  // grown chains replay total-1 entries; oracle-built states carry one more
  // for the anchor application, which traversal never consumes
  if (!state.evidence.empty() && state.evidence.size() != total - 1 &&
      state.evidence.size() != total)
    throw parse_error("evidence entries must cover steps 2..total");
  state.max_live_pebbles = state.pebbles.size();
  return state;
}

bool is_exposure_snapshot(const std::string &text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw parse_error("empty snapshot");
  auto header = split_fields(lines[0], ' ');
  if (!header.empty() && header[0] == "pebblechain-state") return false;
  if (!header.empty() && header[0] == "pebblechain-exposure") return true;
  throw parse_error("unrecognized snapshot header");
}

}  // namespace pebblechain
