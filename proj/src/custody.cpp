#include "pebblechain/custody.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pebblechain/textio.hpp"

namespace pebblechain {

static bool valid_session_id(std::string_view sid) {
  if (sid.empty()) return false;
  for (char c : sid) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

static void append_decimal(Bytes &out, std::uint64_t x) {
  const std::string s = std::to_string(x);
  out.insert(out.end(), s.begin(), s.end());
}

static void append_text(Bytes &out, std::string_view s) {
  out.insert(out.end(), s.begin(), s.end());
}

std::uint64_t CustodySession::total_hash_elements() const {
  if (phase == Phase::growing)
    return chains.empty() ? 0 : chains.front().total_hash_elements;
  return exposures.empty() ? 0 : exposures.front().total_elements();
}

Bytes bound_record_bytes(std::uint64_t tick, const Bytes &evidence) {
  Bytes out = le64_bytes(tick);
  out.insert(out.end(), evidence.begin(), evidence.end());
  return out;
}

Bytes close_marker_bytes(const std::string &session_id, std::uint64_t tick) {
  Bytes out;
  append_text(out, "CLOSE");
  append_text(out, session_id);
  append_decimal(out, tick);
  return out;
}

CustodySession session_open(const std::vector<std::string> &provider_names,
                            const Bytes &seed_material, std::uint64_t tick_interval,
                            const std::string &session_id, CombineMode mode,
                            bool allow_fewer_providers) {
  if (!valid_session_id(session_id))
    throw contract_error("session id must be non-empty [A-Za-z0-9._-]");
  if (tick_interval == 0) throw contract_error("tick interval must be positive");
  if (provider_names.empty()) throw contract_error("at least one provider required");
  if (provider_names.size() < 3 && !allow_fewer_providers)
    throw policy_error("custody policy requires three independent hash providers");
  std::set<std::string> unique(provider_names.begin(), provider_names.end());
  if (unique.size() != provider_names.size())
    throw contract_error("provider names must be distinct");

  CustodySession session;
  session.session_id = session_id;
  session.mode = mode;
  session.tick_interval = tick_interval;
  session.policy_warning = provider_names.size() < 3;
  session.ledger.session_id = session_id;
  for (const auto &name : provider_names) {
    const HashProvider &p = provider(name);
    session.providers.push_back(&p);
    Bytes material = seed_material;
    append_text(material, name);
    append_text(material, session_id);
    Digest seed{p.compress(material).bytes};
    session.chains.push_back(growth_init(p, seed, mode));
  }
  return session;
}

static std::vector<std::pair<std::string, Digest>> append_record(
    CustodySession &session, std::uint64_t tick, Bytes stored_evidence) {
  if (session.any_record && tick <= session.last_tick)
    throw contract_error("ticks must be strictly increasing");
  const Bytes bound = bound_record_bytes(tick, stored_evidence);
  std::vector<std::pair<std::string, Digest>> digests;
  digests.reserve(session.chains.size());
  for (auto &chain : session.chains)
    digests.emplace_back(chain.provider->name(), grow_step(chain, &bound));
  session.ledger.records.push_back(
      CustodyRecord{tick, std::move(stored_evidence), digests});
  session.last_tick = tick;
  session.any_record = true;
  return digests;
}

std::vector<std::pair<std::string, Digest>> record_evidence(CustodySession &session,
                                                            std::uint64_t tick,
                                                            const Bytes &evidence) {
  if (session.phase != CustodySession::Phase::growing)
    throw state_error("session is closed");
  Bytes stored = std::move(session.pending_attestation);
  session.pending_attestation.clear();
  stored.insert(stored.end(), evidence.begin(), evidence.end());
  return append_record(session, tick, std::move(stored));
}

void attest_peers(CustodySession &session, std::uint64_t tick) {
  if (session.phase != CustodySession::Phase::growing)
    throw state_error("session is closed");
  Bytes payload;
  append_text(payload, "ATTEST");
  append_text(payload, session.session_id);
  append_decimal(payload, tick);
  session.ledger.attestations.push_back(Attestation{tick, payload});
  session.pending_attestation.insert(session.pending_attestation.end(),
                                     payload.begin(), payload.end());
}

void session_close(CustodySession &session, std::uint64_t tick) {
  if (session.phase != CustodySession::Phase::growing)
    throw state_error("session is closed");
  if (!session.pending_attestation.empty())
    throw state_error("attestation pending; record evidence before closing");
  append_record(session, tick, close_marker_bytes(session.session_id, tick));

  for (auto &chain : session.chains) {
    std::vector<CompressedEvidence> replay;
    replay.reserve(session.ledger.records.size());
    for (const auto &rec : session.ledger.records)
      replay.push_back(chain.provider->compress(bound_record_bytes(rec.tick, rec.evidence)));
    session.exposures.push_back(finalize(chain, std::move(replay)).traversal);
  }
  session.phase = CustodySession::Phase::finalized;
  session.ledger.closed = true;
}

Disclosure disclose_next(CustodySession &session, const std::string &provider_name) {
  if (session.phase != CustodySession::Phase::finalized)
    throw state_error("session not closed yet");
  for (auto &exposure : session.exposures) {
    if (exposure.provider->name() != provider_name) continue;
    if (exposure.exhausted()) throw exhausted_error("chain fully disclosed");
    const Emission e = traversal_step(exposure);
    Disclosure d{provider_name, e.position, e.value};
    session.disclosed.push_back(d);
    return d;
  }
  throw contract_error("provider not part of this session");
}

DisclosureSet disclosure_set(const CustodySession &session) {
  if (session.phase != CustodySession::Phase::finalized)
    throw state_error("session not closed yet");
  return DisclosureSet{session.session_id, session.total_hash_elements(),
                       session.disclosed};
}

// verification

VerificationTranscript verify_disclosures(const CustodyLedger &ledger,
                                          const DisclosureSet &disclosures,
                                          CombineMode mode) {
  VerificationTranscript t;
  t.session_id = disclosures.session_id;
  auto tamper = [&t](std::string note) {
    t.verdict = Verdict::tamper;
    t.note = std::move(note);
    return t;
  };

  if (ledger.session_id != disclosures.session_id)
    return tamper("session id mismatch between ledger and disclosures");
  if (disclosures.total < 2) return tamper("disclosed total below the closed-session minimum");

  const std::uint64_t total = disclosures.total;
  const std::uint64_t expected = total - 1;
  const std::uint64_t m = ledger.records.size();
  if (m < expected) {
    t.verdict = Verdict::incomplete;
    t.note = "ledger holds " + std::to_string(m) + " of " + std::to_string(expected) +
             " records implied by the disclosed total";
    return t;
  }
  if (m > expected)
    return tamper("ledger holds more records than the disclosed total implies");

  const CustodyRecord &last = ledger.records.back();
  if (last.evidence != close_marker_bytes(ledger.session_id, last.tick))
    return tamper("close marker mismatch at record " + std::to_string(m));
  for (std::uint64_t r = 1; r < m; ++r)
    if (ledger.records[r].tick <= ledger.records[r - 1].tick)
      return tamper("tick order violated at record " + std::to_string(r + 1));

  // digest columns must name the same providers in the same order everywhere
  const auto &columns = ledger.records.front().digests;
  if (columns.empty()) return tamper("record 1 carries no digest column");
  for (std::uint64_t r = 0; r < m; ++r) {
    const auto &d = ledger.records[r].digests;
    if (d.size() != columns.size())
      return tamper("digest column count differs at record " + std::to_string(r + 1));
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i].first != columns[i].first)
        return tamper("digest column order differs at record " + std::to_string(r + 1));
  }

  std::map<std::string, std::map<std::uint64_t, Digest>> by_provider;
  for (const auto &row : disclosures.rows) {
    bool known = false;
    for (const auto &c : columns) known = known || c.first == row.provider;
    if (!known) return tamper("disclosure names a provider without a ledger column");
    if (row.position < 1 || row.position > total)
      return tamper("disclosed position out of range");
    auto [it, inserted] = by_provider[row.provider].emplace(row.position, row.value);
    if (!inserted && !(it->second == row.value))
      return tamper("conflicting disclosures for one position");
  }

  // only the contiguous prefix from position 1 is usable
  std::map<std::string, std::uint64_t> depth;
  for (const auto &c : columns) {
    std::uint64_t d = 0;
    const auto &values = by_provider[c.first];
    while (values.count(d + 1)) ++d;
    depth[c.first] = d;
  }

  bool all_rows_pass = true;
  std::string first_failure;
  for (std::uint64_t r = 1; r <= m; ++r) {
    const CustodyRecord &rec = ledger.records[r - 1];
    const std::uint64_t p = total - r;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const std::string &name = rec.digests[i].first;
      if (p > depth[name]) continue;
      const HashProvider &prov = provider(name);
      TranscriptRow row;
      row.provider = name;
      row.record_index = r;
      row.tick = rec.tick;
      row.position = p;
      row.disclosed = by_provider[name].at(p);
      bool ok = row.disclosed.width() == prov.width() &&
                rec.digests[i].second == row.disclosed;
      if (p + 1 <= depth[name]) {
        // recompute one chain step from the next-deeper disclosed element
        const Digest &deeper = by_provider[name].at(p + 1);
        row.link_checked = true;
        const CompressedEvidence ce =
            prov.compress(bound_record_bytes(rec.tick, rec.evidence));
        row.recomputed = prov.evaluate(combine(deeper, ce, mode));
        ok = ok && row.recomputed == row.disclosed;
      }
      row.pass = ok;
      if (!ok && all_rows_pass) {
        all_rows_pass = false;
        first_failure = "first failing row: record " + std::to_string(r) + ", position " +
                        std::to_string(p) + ", provider " + name;
      }
      t.rows.push_back(std::move(row));
    }
  }

  std::uint64_t min_depth = total;
  for (const auto &[name, d] : depth) min_depth = std::min(min_depth, d);
  t.disclosure_depth = min_depth;

  if (!all_rows_pass) {
    t.verdict = Verdict::tamper;
    t.note = first_failure;
  } else if (min_depth == 0) {
    t.verdict = Verdict::incomplete;
    t.note = "at least one provider has no disclosures";
  } else {
    t.verdict = Verdict::pass;
    t.note = "all checked rows verified";
  }
  return t;
}

VerificationTranscript verify_files(const std::string &ledger_text,
                                    const std::string &disclosure_text,
                                    CombineMode mode) {
  try {
    const CustodyLedger ledger = load_ledger(ledger_text);
    const DisclosureSet set = load_disclosures(disclosure_text);
    return verify_disclosures(ledger, set, mode);
  } catch (const error &e) {
    VerificationTranscript t;
    t.verdict = Verdict::tamper;
    t.note = std::string("structural defect: ") + e.what();
    return t;
  }
}

// serialization

std::string save_ledger(const CustodyLedger &ledger) {
  std::string out = "pebblechain-ledger v1 " + ledger.session_id + "\n";
  for (const auto &rec : ledger.records) {
    out += std::to_string(rec.tick);
    out += '\t';
    out += to_hex(rec.evidence);
    out += '\t';
    for (std::size_t i = 0; i < rec.digests.size(); ++i) {
      if (i) out += ',';
      out += rec.digests[i].first;
      out += ':';
      out += to_hex(rec.digests[i].second);
    }
    out += '\n';
  }
  return out;
}

CustodyLedger load_ledger(const std::string &text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw parse_error("empty ledger");
  const auto header = split_fields(lines[0], ' ');
  if (header.size() != 3 || header[0] != "pebblechain-ledger" || header[1] != "v1")
    throw parse_error("bad ledger header");
  if (!valid_session_id(header[2])) throw parse_error("bad session id");

  CustodyLedger ledger;
  ledger.session_id = std::string(header[2]);
  std::vector<std::string> columns;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_fields(lines[li], '\t');
    if (fields.size() != 3) throw parse_error("ledger record needs three fields");
    CustodyRecord rec;
    rec.tick = parse_u64(fields[0]);
    rec.evidence = from_hex(fields[1]);
    const auto cols = split_fields(fields[2], ',');
    if (cols.empty() || cols[0].empty()) throw parse_error("empty digest column");
    std::vector<std::string> names;
    for (const auto &col : cols) {
      const auto sep = col.find(':');
      if (sep == std::string_view::npos || sep == 0 || sep + 1 == col.size())
        throw parse_error("digest column needs provider:hex");
      std::string name(col.substr(0, sep));
      const HashProvider &p = provider(name);
      Bytes digest = from_hex(col.substr(sep + 1));
      if (digest.size() != p.width()) throw parse_error("digest width mismatch");
      for (const auto &seen : names)
        if (seen == name) throw parse_error("duplicate provider in digest column");
      names.push_back(std::move(name));
      rec.digests.emplace_back(names.back(), Digest{std::move(digest)});
    }
    if (columns.empty())
      columns = names;
    else if (columns != names)
      throw parse_error("digest column order changes between records");
    ledger.records.push_back(std::move(rec));
  }
  if (!ledger.records.empty()) {
    const CustodyRecord &last = ledger.records.back();
    ledger.closed = last.evidence == close_marker_bytes(ledger.session_id, last.tick);
  }
  return ledger;
}

std::string save_disclosures(const DisclosureSet &set) {
  std::string out = "pebblechain-disclosures v1 " + set.session_id + " " +
                    std::to_string(set.total) + "\n";
  for (const auto &row : set.rows) {
    out += row.provider;
    out += '\t';
    out += std::to_string(row.position);
    out += '\t';
    out += to_hex(row.value);
    out += '\n';
  }
  return out;
}

DisclosureSet load_disclosures(const std::string &text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw parse_error("empty disclosure file");
  const auto header = split_fields(lines[0], ' ');
  if (header.size() != 4 || header[0] != "pebblechain-disclosures" || header[1] != "v1")
    throw parse_error("bad disclosure header");
  if (!valid_session_id(header[2])) throw parse_error("bad session id");

  DisclosureSet set;
  set.session_id = std::string(header[2]);
  set.total = parse_u64(header[3]);
  if (set.total < 2) throw parse_error("disclosed total below minimum");

  std::map<std::string, std::uint64_t> next_position;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_fields(lines[li], '\t');
    if (fields.size() != 3) throw parse_error("disclosure row needs three fields");
    Disclosure row;
    row.provider = std::string(fields[0]);
    const HashProvider &p = provider(row.provider);
    row.position = parse_u64(fields[1]);
    if (row.position < 1 || row.position > set.total)
      throw parse_error("disclosed position out of range");
    auto [it, inserted] = next_position.emplace(row.provider, 1);
    if (row.position != it->second)
      throw parse_error("disclosure positions must ascend without gaps");
    it->second += 1;
    Bytes value = from_hex(fields[2]);
    if (value.size() != p.width()) throw parse_error("disclosed value width mismatch");
    row.value = Digest{std::move(value)};
    set.rows.push_back(std::move(row));
  }
  return set;
}

std::string render_transcript(const VerificationTranscript &transcript) {
  std::string out = "session " + transcript.session_id + "\n";
  out += "depth " + std::to_string(transcript.disclosure_depth) + "\n";
  switch (transcript.verdict) {
    case Verdict::pass: out += "verdict pass\n"; break;
    case Verdict::tamper: out += "verdict tamper\n"; break;
    case Verdict::incomplete: out += "verdict incomplete\n"; break;
  }
  out += "note " + (transcript.note.empty() ? std::string("-") : transcript.note) + "\n";
  for (const auto &row : transcript.rows) {
    out += "row\t" + std::to_string(row.record_index) + "\t" + std::to_string(row.tick) +
           "\t" + std::to_string(row.position) + "\t" + row.provider + "\t" +
           to_hex(row.disclosed) + "\t" +
           (row.link_checked ? to_hex(row.recomputed) : std::string("-")) + "\t" +
           (row.pass ? "ok" : "fail") + "\n";
  }
  return out;
}

}  // namespace pebblechain
