#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "pebblechain/chain_oracle.hpp"
#include "pebblechain/custody.hpp"
#include "pebblechain/snapshot.hpp"

namespace py = pybind11;
using namespace pebblechain;

namespace {

Bytes as_bytes(const py::bytes &data) {
  const std::string s = data;
  return Bytes(s.begin(), s.end());
}

py::bytes to_py(const Bytes &data) {
  return py::bytes(reinterpret_cast<const char *>(data.data()), data.size());
}

}  // namespace

PYBIND11_MODULE(pebblechain, m) {
  m.doc() = "online fractal hash chain growth, amortized traversal and custody";

  m.def("providers", [] { return ProviderRegistry::instance().names(); });
  m.def("provider_width",
        [](const std::string &name) { return provider(name).width(); });
  m.def("evaluate", [](const std::string &name, const py::bytes &data) {
    return to_py(provider(name).evaluate(as_bytes(data)).bytes);
  });
  m.def("compress", [](const std::string &name, const py::bytes &data) {
    return to_py(provider(name).compress(as_bytes(data)).bytes);
  });
  m.def("combine",
        [](const py::bytes &value, const py::bytes &evidence, const std::string &mode) {
          return to_py(combine(Digest{as_bytes(value)},
                               CompressedEvidence{as_bytes(evidence)},
                               combine_mode_from_name(mode)));
        },
        py::arg("value"), py::arg("evidence"), py::arg("mode") = "concat");
  m.def("mix64", &mix64);

  py::class_<GrowthState>(m, "GrowthState")
      .def_property_readonly("total",
                             [](const GrowthState &s) { return s.total_hash_elements; })
      .def_property_readonly("pebbles",
                             [](const GrowthState &s) { return s.pebbles.size(); })
      .def_property_readonly("value",
                             [](const GrowthState &s) { return to_py(s.grow_value.bytes); })
      .def_property_readonly("finalized",
                             [](const GrowthState &s) { return s.finalized; });

  py::class_<TraversalState>(m, "TraversalState")
      .def_property_readonly("total",
                             [](const TraversalState &s) { return s.total_elements(); })
      .def_property_readonly("emitted",
                             [](const TraversalState &s) { return s.emitted(); })
      .def_property_readonly("exhausted",
                             [](const TraversalState &s) { return s.exhausted(); })
      .def_property_readonly("pebbles",
                             [](const TraversalState &s) { return s.live_pebbles(); });

  m.def(
      "growth_init",
      [](const std::string &provider_name, const py::bytes &seed, const std::string &mode) {
        return growth_init(provider(provider_name), Digest{as_bytes(seed)},
                           combine_mode_from_name(mode));
      },
      py::arg("provider"), py::arg("seed"), py::arg("mode") = "concat");
  m.def(
      "grow_step",
      [](GrowthState &state, const std::optional<py::bytes> &evidence) {
        if (!evidence) return to_py(grow_step(state).bytes);
        const Bytes chunk = as_bytes(*evidence);
        return to_py(grow_step(state, &chunk).bytes);
      },
      py::arg("state"), py::arg("evidence") = py::none());
  m.def("finalize", [](GrowthState &state) { return finalize(state).traversal; });
  m.def("traversal_step", [](TraversalState &state) {
    const Emission e = traversal_step(state);
    return py::make_tuple(e.position, to_py(e.value.bytes));
  });
  m.def(
      "build_chain",
      [](const std::string &provider_name, const py::bytes &seed, std::size_t n,
         const std::optional<std::vector<py::bytes>> &evidence, const std::string &mode) {
        std::optional<std::vector<Bytes>> chunks;
        if (evidence) {
          chunks.emplace();
          for (const auto &e : *evidence) chunks->push_back(as_bytes(e));
        }
        const FullChain chain = build_chain(provider(provider_name), Digest{as_bytes(seed)},
                                            n, chunks, combine_mode_from_name(mode));
        std::vector<py::bytes> disclosure_order;
        for (std::size_t position = 1; position <= chain.n; ++position)
          disclosure_order.push_back(to_py(element_at(chain, position).bytes));
        return disclosure_order;
      },
      py::arg("provider"), py::arg("seed"), py::arg("n"),
      py::arg("evidence") = py::none(), py::arg("mode") = "concat");

  m.def("save_growth", &save_growth);
  m.def("load_growth", &load_growth);
  m.def("save_exposure", &save_exposure);
  m.def("load_exposure", &load_exposure);

  py::class_<CustodySession>(m, "CustodySession")
      .def_property_readonly("session_id",
                             [](const CustodySession &s) { return s.session_id; })
      .def_property_readonly("total",
                             [](const CustodySession &s) { return s.total_hash_elements(); })
      .def_property_readonly("closed", [](const CustodySession &s) {
        return s.phase == CustodySession::Phase::finalized;
      });

  m.def(
      "session_open",
      [](const std::vector<std::string> &providers, const py::bytes &seed_material,
         std::uint64_t tick_interval, const std::string &session_id,
         const std::string &mode, bool allow_few) {
        return session_open(providers, as_bytes(seed_material), tick_interval,
                            session_id, combine_mode_from_name(mode), allow_few);
      },
      py::arg("providers"), py::arg("seed_material"), py::arg("tick_interval"),
      py::arg("session_id"), py::arg("mode") = "concat",
      py::arg("allow_few_providers") = false);
  m.def("record_evidence",
        [](CustodySession &session, std::uint64_t tick, const py::bytes &evidence) {
          py::dict out;
          for (const auto &[name, digest] : record_evidence(session, tick, as_bytes(evidence)))
            out[py::str(name)] = to_py(digest.bytes);
          return out;
        });
  m.def("session_close", &session_close);
  m.def("disclose_next", [](CustodySession &session, const std::string &provider_name) {
    const Disclosure d = disclose_next(session, provider_name);
    return py::make_tuple(d.provider, d.position, to_py(d.value.bytes));
  });
  m.def("ledger_text",
        [](const CustodySession &session) { return save_ledger(session.ledger); });
  m.def("disclosures_text",
        [](const CustodySession &session) { return save_disclosures(disclosure_set(session)); });
  m.def(
      "verify",
      [](const std::string &ledger_text, const std::string &disclosure_text,
         const std::string &mode) {
        const VerificationTranscript t =
            verify_files(ledger_text, disclosure_text, combine_mode_from_name(mode));
        py::dict out;
        out["session_id"] = t.session_id;
        out["verdict"] = t.verdict == Verdict::pass        ? "pass"
                         : t.verdict == Verdict::tamper    ? "tamper"
                                                           : "incomplete";
        out["depth"] = t.disclosure_depth;
        out["note"] = t.note;
        py::list rows;
        for (const auto &row : t.rows) {
          py::dict r;
          r["provider"] = row.provider;
          r["record"] = row.record_index;
          r["tick"] = row.tick;
          r["position"] = row.position;
          r["pass"] = row.pass;
          rows.append(std::move(r));
        }
        out["rows"] = std::move(rows);
        return out;
      },
      py::arg("ledger_text"), py::arg("disclosure_text"), py::arg("mode") = "concat");
}
