#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pebblechain/growth.hpp"

namespace pebblechain {

// Chain-of-custody layer: timed evidence ingestion into provider-parallel
// chains, deferred disclosure, and the clerk-side verification procedure.
//
// Every record binds le64(tick) || evidence bytes into each chain, so a
// mutation of any persisted record byte (tick digits included) breaks either
// the recurrence link or the stored digest column.

struct CustodyRecord {
  std::uint64_t tick = 0;
  Bytes evidence;  // stored bytes; pending attestation payloads are prepended
  std::vector<std::pair<std::string, Digest>> digests;  // per provider, fixed order
};

struct Attestation {
  std::uint64_t tick = 0;
  Bytes payload;
};

struct CustodyLedger {
  std::string session_id;
  std::vector<CustodyRecord> records;
  bool closed = false;  // the final record carries the close marker
  std::vector<Attestation> attestations;  // stub events; bytes persist inside records
};

struct Disclosure {
  std::string provider;
  std::uint64_t position = 0;  // exposure position, 1-based
  Digest value;
};

// clerk-side view of a disclosure file; total is stamped by the device at
// close and gives the record-count expectation independent of the ledger
struct DisclosureSet {
  std::string session_id;
  std::uint64_t total = 0;
  std::vector<Disclosure> rows;
};

struct CustodySession {
  std::string session_id;
  std::vector<const HashProvider *> providers;
  CombineMode mode = CombineMode::concat;
  std::uint64_t tick_interval = 1;
  bool policy_warning = false;  // opened with fewer than three providers

  enum class Phase { growing, finalized };
  Phase phase = Phase::growing;

  std::vector<GrowthState> chains;        // growing phase, one per provider
  std::vector<TraversalState> exposures;  // after close, one per provider
  CustodyLedger ledger;
  std::vector<Disclosure> disclosed;      // accumulated disclosure order
  Bytes pending_attestation;

  std::uint64_t last_tick = 0;
  bool any_record = false;

  std::uint64_t total_hash_elements() const;
};

Bytes bound_record_bytes(std::uint64_t tick, const Bytes &evidence);
Bytes close_marker_bytes(const std::string &session_id, std::uint64_t tick);

CustodySession session_open(const std::vector<std::string> &provider_names,
                            const Bytes &seed_material, std::uint64_t tick_interval,
                            const std::string &session_id,
                            CombineMode mode = CombineMode::concat,
                            bool allow_fewer_providers = false);

// appends a ledger record and advances every chain by one bound element
std::vector<std::pair<std::string, Digest>> record_evidence(CustodySession &session,
                                                            std::uint64_t tick,
                                                            const Bytes &evidence);

// placeholder peer attestation: logged with its tick, payload bound into the
// next evidence record by concatenation
void attest_peers(CustodySession &session, std::uint64_t tick);

// records the close marker as the final evidence record and finalizes every
// chain for exposure
void session_close(CustodySession &session, std::uint64_t tick);

// one traversal step on that provider's chain; throws exhausted_error once
// everything is disclosed
Disclosure disclose_next(CustodySession &session, const std::string &provider_name);

DisclosureSet disclosure_set(const CustodySession &session);

// clerk-side verification

enum class Verdict { pass, tamper, incomplete };

struct TranscriptRow {
  std::string provider;
  std::uint64_t record_index = 0;  // 1-based, chronological
  std::uint64_t tick = 0;
  std::uint64_t position = 0;
  Digest disclosed;
  Digest recomputed;     // from the next-deeper disclosure, when available
  bool link_checked = false;
  bool pass = false;
};

struct VerificationTranscript {
  std::string session_id;
  Verdict verdict = Verdict::pass;
  std::uint64_t disclosure_depth = 0;  // smallest per-provider depth
  std::vector<TranscriptRow> rows;     // chronological, provider-major within a record
  std::string note;
};

// clerk procedure: records align to positions from the close record backwards;
// each disclosed position is checked against the stored digest column and,
// when the next-deeper element is disclosed, against one recurrence step
VerificationTranscript verify_disclosures(const CustodyLedger &ledger,
                                          const DisclosureSet &disclosures,
                                          CombineMode mode);

// same, from raw file contents; structural defects become a tamper verdict
// instead of an exception
VerificationTranscript verify_files(const std::string &ledger_text,
                                    const std::string &disclosure_text,
                                    CombineMode mode);

std::string save_ledger(const CustodyLedger &ledger);
CustodyLedger load_ledger(const std::string &text);

std::string save_disclosures(const DisclosureSet &set);
DisclosureSet load_disclosures(const std::string &text);

// one tab-separated line per row plus summary lines; both grep and machine friendly
std::string render_transcript(const VerificationTranscript &transcript);

}  // namespace pebblechain
