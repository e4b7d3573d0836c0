#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pebblechain/chain_oracle.hpp"
#include "pebblechain/custody.hpp"
#include "pebblechain/snapshot.hpp"
#include "pebblechain/textio.hpp"

namespace fs = std::filesystem;
using namespace pebblechain;

namespace {

// exit codes are a stable contract: 0 ok, 2 usage or state, 3 exhausted,
// 4 tamper, 5 incomplete

// advisory lock beside the mutated file; released on scope exit
struct FileLock {
  int fd = -1;
  explicit FileLock(const std::string &path) {
    fd = ::open((path + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd >= 0) ::flock(fd, LOCK_EX);
  }
  ~FileLock() {
    if (fd >= 0) {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  }
  FileLock(const FileLock &) = delete;
  FileLock &operator=(const FileLock &) = delete;
};

std::string resolve_state_dir(const std::string &flag_value) {
  const char *env = std::getenv("PEBBLECHAIN_STATE_DIR");
  if (env && *env) return env;
  return flag_value;
}

Bytes file_bytes(const std::string &path) {
  const std::string s = read_file(path);
  return Bytes(s.begin(), s.end());
}

// each argument is one chunk; a directory contributes its regular files as
// chunks in lexicographic name order
std::vector<Bytes> evidence_from_files(const std::vector<std::string> &paths) {
  std::vector<Bytes> chunks;
  for (const auto &path : paths) {
    if (fs::is_directory(path)) {
      std::vector<std::string> names;
      for (const auto &entry : fs::directory_iterator(path))
        if (entry.is_regular_file()) names.push_back(entry.path().string());
      std::sort(names.begin(), names.end());
      for (const auto &name : names) chunks.push_back(file_bytes(name));
    } else {
      chunks.push_back(file_bytes(path));
    }
  }
  return chunks;
}

// stdin framing: 4-byte little-endian length before each chunk, until EOF
std::vector<Bytes> evidence_from_stdin() {
  std::vector<Bytes> chunks;
  for (;;) {
    unsigned char header[4];
    std::cin.read(reinterpret_cast<char *>(header), 4);
    if (std::cin.gcount() == 0) break;
    if (std::cin.gcount() != 4) throw parse_error("truncated length prefix on stdin");
    const std::uint32_t len = static_cast<std::uint32_t>(header[0]) |
                              static_cast<std::uint32_t>(header[1]) << 8 |
                              static_cast<std::uint32_t>(header[2]) << 16 |
                              static_cast<std::uint32_t>(header[3]) << 24;
    Bytes chunk(len);
    if (len) {
      std::cin.read(reinterpret_cast<char *>(chunk.data()), len);
      if (static_cast<std::uint32_t>(std::cin.gcount()) != len)
        throw parse_error("truncated evidence chunk on stdin");
    }
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

std::vector<std::string> split_csv(const std::string &text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

struct SessionPaths {
  std::string meta, ledger, disclosures;
  std::string chain(const std::string &provider) const {
    return base + "." + provider + ".chain";
  }
  std::string exposure(const std::string &provider) const {
    return base + "." + provider + ".exposure";
  }
  std::string base;
};

SessionPaths session_paths(const std::string &dir, const std::string &sid) {
  SessionPaths p;
  p.base = (fs::path(dir) / sid).string();
  p.meta = p.base + ".session";
  p.ledger = p.base + ".ledger";
  p.disclosures = p.base + ".disclosures";
  return p;
}

void save_meta(const SessionPaths &paths, const CustodySession &session) {
  std::string out = "pebblechain-session v1 " + session.session_id + " " +
                    combine_mode_name(session.mode) + " " +
                    std::to_string(session.tick_interval) + " ";
  for (std::size_t i = 0; i < session.providers.size(); ++i) {
    if (i) out += ',';
    out += session.providers[i]->name();
  }
  out += '\n';
  write_file_atomic(paths.meta, out);
}

CustodySession load_session(const SessionPaths &paths) {
  const std::string meta_text = read_file(paths.meta);
  const auto lines = split_lines(meta_text);
  if (lines.size() != 1) throw parse_error("bad session file");
  const auto fields = split_fields(lines[0], ' ');
  if (fields.size() != 6 || fields[0] != "pebblechain-session" || fields[1] != "v1")
    throw parse_error("bad session file");

  CustodySession session;
  session.session_id = std::string(fields[2]);
  session.mode = combine_mode_from_name(fields[3]);
  session.tick_interval = parse_u64(fields[4]);
  for (const auto &name : split_csv(std::string(fields[5])))
    session.providers.push_back(&provider(name));

  session.ledger = load_ledger(read_file(paths.ledger));
  if (session.ledger.session_id != session.session_id)
    throw state_error("ledger belongs to another session");
  session.any_record = !session.ledger.records.empty();
  session.last_tick = session.any_record ? session.ledger.records.back().tick : 0;

  if (session.ledger.closed) {
    session.phase = CustodySession::Phase::finalized;
    for (const auto *p : session.providers)
      session.exposures.push_back(load_exposure(read_file(paths.exposure(p->name()))));
  } else {
    session.phase = CustodySession::Phase::growing;
    for (const auto *p : session.providers)
      session.chains.push_back(load_growth(read_file(paths.chain(p->name()))));
  }
  return session;
}

void save_session(const SessionPaths &paths, const CustodySession &session) {
  write_file_atomic(paths.ledger, save_ledger(session.ledger));
  if (session.phase == CustodySession::Phase::growing) {
    for (const auto &chain : session.chains)
      write_file_atomic(paths.chain(chain.provider->name()), save_growth(chain));
  } else {
    for (const auto &exposure : session.exposures)
      write_file_atomic(paths.exposure(exposure.provider->name()),
                        save_exposure(exposure));
    for (const auto *p : session.providers) {
      const std::string stale = paths.chain(p->name());
      if (fs::exists(stale)) fs::remove(stale);
    }
  }
}

int run(int argc, char **argv) {
  CLI::App app{"fractal hash chain growth, traversal and custody tool"};
  app.require_subcommand(1);
  int rc = 0;

  // grow
  auto *grow = app.add_subcommand("grow", "extend a chain, creating it from a seed");
  std::string grow_provider = "mix64-test", grow_mode = "concat", grow_seed,
              grow_state, grow_out;
  std::uint64_t grow_steps = 0;
  std::vector<std::string> grow_evidence;
  bool grow_stdin = false;
  grow->add_option("--provider", grow_provider, "hash provider name");
  grow->add_option("--mode", grow_mode, "evidence combine mode: concat or xor");
  grow->add_option("--seed", grow_seed, "seed digest, provider-width hex");
  grow->add_option("--state", grow_state, "continue from an existing snapshot");
  grow->add_option("--steps", grow_steps, "number of growth steps")->required();
  grow->add_option("--evidence-file", grow_evidence,
                   "file per chunk; directories expand lexicographically");
  grow->add_flag("--evidence-stdin", grow_stdin, "length-prefixed chunks on stdin");
  grow->add_option("--out", grow_out, "snapshot to write")->required();
  grow->callback([&] {
    if (grow_seed.empty() == grow_state.empty())
      throw contract_error("exactly one of --seed and --state required");
    FileLock lock(grow_out);
    GrowthState state;
    if (!grow_state.empty()) {
      const std::string text = read_file(grow_state);
      if (is_exposure_snapshot(text)) throw state_error("snapshot is already finalized");
      state = load_growth(text);
    } else {
      const HashProvider &prov = provider(grow_provider);
      state = growth_init(prov, Digest{from_hex(grow_seed)},
                          combine_mode_from_name(grow_mode));
    }
    std::vector<Bytes> chunks = evidence_from_files(grow_evidence);
    if (grow_stdin)
      for (auto &c : evidence_from_stdin()) chunks.push_back(std::move(c));
    if (!chunks.empty() && chunks.size() != grow_steps)
      throw contract_error("need exactly one evidence chunk per step");
    for (std::uint64_t i = 0; i < grow_steps; ++i)
      grow_step(state, chunks.empty() ? nullptr : &chunks[i]);
    write_file_atomic(grow_out, save_growth(state));
    std::cout << "total " << state.total_hash_elements << " pebbles "
              << state.pebbles.size() << "\n";
  });

  // finalize
  auto *finalize_cmd = app.add_subcommand("finalize", "convert a snapshot to exposure form");
  std::string finalize_state;
  finalize_cmd->add_option("--state", finalize_state, "snapshot to finalize")->required();
  finalize_cmd->callback([&] {
    FileLock lock(finalize_state);
    const std::string text = read_file(finalize_state);
    if (is_exposure_snapshot(text)) throw state_error("snapshot is already finalized");
    GrowthState state = load_growth(text);
    ExposureHandoff handoff = finalize(state);
    write_file_atomic(finalize_state, save_exposure(handoff.traversal));
    std::cout << "exposure total " << handoff.traversal.total_elements() << " pebbles "
              << handoff.traversal.pebbles.size() << "\n";
  });

  // emit
  auto *emit = app.add_subcommand("emit", "disclose the next elements of an exposure");
  std::string emit_state;
  std::uint64_t emit_count = 1;
  emit->add_option("--state", emit_state, "exposure snapshot")->required();
  emit->add_option("--count", emit_count, "elements to disclose");
  emit->callback([&] {
    FileLock lock(emit_state);
    const std::string text = read_file(emit_state);
    if (!is_exposure_snapshot(text)) throw state_error("snapshot needs finalize first");
    if (emit_count == 0) return;
    TraversalState state = load_exposure(text);
    if (state.exhausted()) throw exhausted_error("chain exhausted");
    std::uint64_t emitted = 0;
    while (emitted < emit_count && !state.exhausted()) {
      const Emission e = traversal_step(state);
      std::cout << e.position << "\t" << to_hex(e.value) << "\n";
      ++emitted;
    }
    write_file_atomic(emit_state, save_exposure(state));
    if (emitted < emit_count) throw exhausted_error("chain exhausted");
  });

  // trace
  auto *trace = app.add_subcommand("trace", "print pebble schedules as text rows");
  std::uint64_t trace_n = 0;
  std::string trace_mode, trace_provider = "mix64-test";
  trace->add_option("--n", trace_n, "chain length")->required();
  trace->add_option("--mode", trace_mode, "setup, run or grow")
      ->required()
      ->check(CLI::IsMember({"setup", "run", "grow"}));
  trace->add_option("--provider", trace_provider, "hash provider name");
  trace->callback([&] {
    const HashProvider &prov = provider(trace_provider);
    const Digest seed{prov.compress(Bytes{'t', 'r', 'a', 'c', 'e'}).bytes};
    if (trace_mode == "setup" || trace_mode == "run") {
      FullChain chain = build_chain(prov, seed, trace_n, std::nullopt,
                                    CombineMode::concat);
      TraversalState state = jakobsson_setup(chain);
      if (trace_mode == "setup") {
        if (trace_n <= 64) {
          std::string slots(trace_n, '.');
          for (const auto &p : state.pebbles) slots[p.position - 1] = '*';
          std::cout << slots << "\n";
        }
        std::cout << "pebbles ";
        for (std::size_t i = 0; i < state.pebbles.size(); ++i)
          std::cout << (i ? "," : "") << state.pebbles[i].position;
        std::cout << "\n";
        return;
      }
      while (!state.exhausted()) {
        const Emission e = traversal_step(state);
        std::cout << trace_row(state, e) << "\n";
      }
      return;
    }
    if (trace_n < 2) throw contract_error("grow trace needs at least two elements");
    GrowthState state = growth_init(prov, seed, CombineMode::concat);
    while (state.total_hash_elements < trace_n) {
      std::vector<std::pair<std::size_t, std::uint64_t>> before;
      for (const auto &p : state.pebbles) before.emplace_back(p.index, p.position);
      grow_step(state);
      std::string event = "-";
      if (state.pebbles.size() != before.size()) {
        event = "created:" + std::to_string(state.pebbles.back().index);
      } else {
        std::string moved;
        for (std::size_t i = 0; i < before.size(); ++i)
          if (state.pebbles[i].position != before[i].second)
            moved += (moved.empty() ? "" : ",") + std::to_string(state.pebbles[i].index);
        if (!moved.empty()) event = "moved:" + moved;
      }
      std::cout << state.total_hash_elements << "\t" << to_hex(state.grow_value)
                << "\t";
      for (std::size_t i = 0; i < state.pebbles.size(); ++i)
        std::cout << (i ? "," : "") << state.pebbles[i].position;
      std::cout << "\t" << event << "\n";
    }
    ExposureHandoff handoff = finalize(state);
    std::cout << "final total " << trace_n << " offset " << handoff.index_offset
              << " pebbles ";
    for (std::size_t i = 0; i < handoff.traversal.pebbles.size(); ++i)
      std::cout << (i ? "," : "") << handoff.traversal.pebbles[i].position;
    std::cout << "\n";
  });

  // open
  auto *open_cmd = app.add_subcommand("open", "open a custody session");
  std::string open_providers, open_sid, open_seed_material, open_mode = "concat",
              open_dir = ".";
  std::uint64_t open_interval = 1;
  bool open_allow_few = false;
  open_cmd->add_option("--providers", open_providers, "comma-separated provider names")
      ->required();
  open_cmd->add_option("--session-id", open_sid, "session identifier")->required();
  open_cmd->add_option("--seed-material", open_seed_material, "hex seed material");
  open_cmd->add_option("--tick-interval", open_interval, "declared tick spacing");
  open_cmd->add_option("--mode", open_mode, "evidence combine mode");
  open_cmd->add_flag("--allow-few-providers", open_allow_few,
                     "accept fewer than three providers");
  open_cmd->add_option("--state-dir", open_dir, "session state directory");
  open_cmd->callback([&] {
    const std::string dir = resolve_state_dir(open_dir);
    fs::create_directories(dir);
    const SessionPaths paths = session_paths(dir, open_sid);
    if (fs::exists(paths.meta)) throw state_error("session already exists");
    CustodySession session = session_open(
        split_csv(open_providers), from_hex(open_seed_material), open_interval,
        open_sid, combine_mode_from_name(open_mode), open_allow_few);
    if (session.policy_warning)
      std::cerr << "warning: fewer than three providers weakens the custody guarantee\n";
    FileLock lock(paths.ledger);
    save_meta(paths, session);
    save_session(paths, session);
    std::cout << "opened " << open_sid << " providers " << open_providers
              << " total " << session.total_hash_elements() << "\n";
  });

  // record
  auto *record = app.add_subcommand("record", "append evidence records to a session");
  std::string record_sid, record_dir = ".";
  std::uint64_t record_tick = 0;
  bool record_tick_given = false, record_stdin = false;
  std::vector<std::string> record_files;
  record->add_option("--session-id", record_sid, "session identifier")->required();
  record->add_option("--state-dir", record_dir, "session state directory");
  record->add_option("--tick", record_tick, "tick of the first record")
      ->each([&](const std::string &) { record_tick_given = true; });
  record->add_option("--evidence-file", record_files,
                     "file per chunk; directories expand lexicographically");
  record->add_flag("--stdin", record_stdin, "length-prefixed chunks on stdin");
  record->callback([&] {
    const SessionPaths paths = session_paths(resolve_state_dir(record_dir), record_sid);
    FileLock lock(paths.ledger);
    CustodySession session = load_session(paths);
    std::vector<Bytes> chunks = evidence_from_files(record_files);
    if (record_stdin)
      for (auto &c : evidence_from_stdin()) chunks.push_back(std::move(c));
    if (chunks.empty()) throw contract_error("no evidence chunks given");
    std::uint64_t tick = record_tick_given ? record_tick
                                           : session.last_tick + session.tick_interval;
    for (const auto &chunk : chunks) {
      record_evidence(session, tick, chunk);
      std::cout << "recorded " << session.ledger.records.size() << " tick " << tick
                << " total " << session.total_hash_elements() << "\n";
      tick += session.tick_interval;
    }
    save_session(paths, session);
  });

  // close
  auto *close_cmd = app.add_subcommand("close", "close a session and prepare disclosure");
  std::string close_sid, close_dir = ".";
  std::uint64_t close_tick = 0;
  bool close_tick_given = false;
  close_cmd->add_option("--session-id", close_sid, "session identifier")->required();
  close_cmd->add_option("--state-dir", close_dir, "session state directory");
  close_cmd->add_option("--tick", close_tick, "tick of the close record")
      ->each([&](const std::string &) { close_tick_given = true; });
  close_cmd->callback([&] {
    const SessionPaths paths = session_paths(resolve_state_dir(close_dir), close_sid);
    FileLock lock(paths.ledger);
    CustodySession session = load_session(paths);
    const std::uint64_t tick =
        close_tick_given ? close_tick : session.last_tick + session.tick_interval;
    session_close(session, tick);
    save_session(paths, session);
    std::cout << "closed " << close_sid << " total " << session.total_hash_elements()
              << " pebbles " << session.exposures.front().pebbles.size() << "\n";
  });

  // disclose
  auto *disclose = app.add_subcommand("disclose", "reveal the next chain elements");
  std::string disclose_sid, disclose_dir = ".", disclose_provider;
  std::uint64_t disclose_count = 1;
  bool disclose_all = false;
  disclose->add_option("--session-id", disclose_sid, "session identifier")->required();
  disclose->add_option("--state-dir", disclose_dir, "session state directory");
  disclose->add_option("--provider", disclose_provider, "only this provider's chain");
  disclose->add_option("--count", disclose_count, "elements per chain");
  disclose->add_flag("--all", disclose_all, "disclose everything that remains");
  disclose->callback([&] {
    const SessionPaths paths = session_paths(resolve_state_dir(disclose_dir),
                                             disclose_sid);
    FileLock lock(paths.ledger);
    CustodySession session = load_session(paths);
    std::vector<std::string> names;
    if (disclose_provider.empty())
      for (const auto *p : session.providers) names.push_back(p->name());
    else
      names.push_back(disclose_provider);

    DisclosureSet set;
    if (fs::exists(paths.disclosures))
      set = load_disclosures(read_file(paths.disclosures));
    else
      set = DisclosureSet{session.session_id, session.total_hash_elements(), {}};

    bool exhausted = false;
    const std::uint64_t rounds = disclose_all ? session.total_hash_elements()
                                              : disclose_count;
    for (std::uint64_t round = 0; round < rounds && !exhausted; ++round) {
      for (const auto &name : names) {
        try {
          const Disclosure d = disclose_next(session, name);
          std::cout << d.provider << "\t" << d.position << "\t" << to_hex(d.value)
                    << "\n";
          set.rows.push_back(d);
        } catch (const exhausted_error &) {
          exhausted = true;
          break;
        }
      }
    }
    write_file_atomic(paths.disclosures, save_disclosures(set));
    save_session(paths, session);
    if (exhausted && !disclose_all) throw exhausted_error("chain exhausted");
  });

  // verify
  auto *verify = app.add_subcommand("verify", "check disclosures against a ledger");
  std::string verify_sid, verify_dir = ".", verify_ledger, verify_disclosures_path,
              verify_mode = "concat";
  verify->add_option("--session-id", verify_sid, "session in the state directory");
  verify->add_option("--state-dir", verify_dir, "session state directory");
  verify->add_option("--ledger", verify_ledger, "explicit ledger file");
  verify->add_option("--disclosures", verify_disclosures_path, "explicit disclosure file");
  verify->add_option("--mode", verify_mode, "evidence combine mode");
  verify->callback([&] {
    std::string ledger_path = verify_ledger, disclosures_path = verify_disclosures_path;
    if (!verify_sid.empty()) {
      const SessionPaths paths = session_paths(resolve_state_dir(verify_dir), verify_sid);
      if (ledger_path.empty()) ledger_path = paths.ledger;
      if (disclosures_path.empty()) disclosures_path = paths.disclosures;
    }
    if (ledger_path.empty() || disclosures_path.empty())
      throw contract_error("need --session-id or both --ledger and --disclosures");
    const VerificationTranscript t = verify_files(
        read_file(ledger_path), read_file(disclosures_path),
        combine_mode_from_name(verify_mode));
    std::cout << render_transcript(t);
    if (t.verdict == Verdict::tamper) rc = 4;
    if (t.verdict == Verdict::incomplete) rc = 5;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const exhausted_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
