#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dnascan/distributed.hpp"
#include "dnascan/generator.hpp"
#include "dnascan/oracle.hpp"
#include "dnascan/parallel.hpp"
#include "dnascan/rng.hpp"

namespace py = pybind11;
using namespace dnascan;

namespace {

PatternSet patterns_from_strings(const std::vector<std::string>& texts) {
  PatternSet out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(Pattern::random(nucleotides_from_string(t)));
  return out;
}

std::vector<std::int64_t> signed_pat_found(const SearchReport& report) {
  std::vector<std::int64_t> out;
  out.reserve(report.pat_found.size());
  for (std::uint64_t v : report.pat_found)
    out.push_back(v == kNotFound ? -1 : static_cast<std::int64_t>(v));
  return out;
}

Strategy make_strategy(const std::string& decomposition, unsigned workers, std::uint64_t chunk,
                       const std::string& accumulation, bool cancellation) {
  Strategy st;
  if (decomposition == "patterns")
    st.decomposition = Decomposition::OverPatterns;
  else if (decomposition == "positions")
    st.decomposition = Decomposition::OverPositions;
  else if (decomposition == "nested")
    st.decomposition = Decomposition::Nested;
  else
    throw std::invalid_argument("decomposition must be patterns, positions or nested");
  if (accumulation == "serialized")
    st.accumulation = Accumulation::SerializedUpdates;
  else if (accumulation == "merge")
    st.accumulation = Accumulation::PerWorkerMerge;
  else
    throw std::invalid_argument("accumulation must be serialized or merge");
  st.workers = workers;
  st.chunk = chunk;
  st.cancellation = cancellation;
  st.validate();
  return st;
}

DistMode make_mode(const std::string& mode) {
  if (mode == "distributed") return DistMode::Distributed;
  if (mode == "replicated") return DistMode::Replicated;
  throw std::invalid_argument("mode must be distributed or replicated");
}

SearchReport run_parallel(const Sequence& seq, const PatternSet& patterns, const Strategy& st) {
  py::gil_scoped_release release;
  return search_all_parallel(seq, patterns, st);
}

SearchReport run_dist(const Sequence& seq, const PatternSet& patterns, std::uint32_t ranks,
                      DistMode mode) {
  py::gil_scoped_release release;
  return run_distributed(seq, patterns, ranks, mode);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact multi-pattern DNA search engines with a deterministic generator";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next", &Rng::next)
      .def("skip", &Rng::skip, py::arg("n"))
      .def("uniform", &Rng::uniform, py::arg("bound"))
      .def("state", &Rng::state)
      .def("__eq__",
           [](const Rng& a, const Rng& b) { return a == b; });

  py::class_<ScenarioParams>(m, "ScenarioParams")
      .def(py::init<>())
      .def_readwrite("seq_length", &ScenarioParams::seq_length)
      .def_readwrite("prob_a", &ScenarioParams::prob_a)
      .def_readwrite("prob_c", &ScenarioParams::prob_c)
      .def_readwrite("prob_g", &ScenarioParams::prob_g)
      .def_readwrite("n_random_patterns", &ScenarioParams::n_random_patterns)
      .def_readwrite("rand_len_mean", &ScenarioParams::rand_len_mean)
      .def_readwrite("rand_len_dev", &ScenarioParams::rand_len_dev)
      .def_readwrite("n_sample_patterns", &ScenarioParams::n_sample_patterns)
      .def_readwrite("samp_len_mean", &ScenarioParams::samp_len_mean)
      .def_readwrite("samp_len_dev", &ScenarioParams::samp_len_dev)
      .def_readwrite("samp_loc_mean", &ScenarioParams::samp_loc_mean)
      .def_readwrite("samp_loc_dev", &ScenarioParams::samp_loc_dev)
      .def_readwrite("seed", &ScenarioParams::seed)
      .def("validate", &ScenarioParams::validate);

  py::class_<Pattern>(m, "Pattern")
      .def_property_readonly("text",
                             [](const Pattern& p) { return nucleotides_to_string(p.data); })
      .def_property_readonly("provenance",
                             [](const Pattern& p) {
                               return p.provenance == Pattern::Provenance::Sample
                                          ? std::string("sample")
                                          : std::string("random");
                             })
      .def_property_readonly("source_location",
                             [](const Pattern& p) -> py::object {
                               if (p.provenance != Pattern::Provenance::Sample) return py::none();
                               return py::int_(p.source_location);
                             })
      .def("__len__", &Pattern::size)
      .def("__repr__", [](const Pattern& p) {
        return "<Pattern '" + nucleotides_to_string(p.data) + "'>";
      });

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly(
          "sequence", [](const Scenario& s) { return nucleotides_to_string(s.sequence); })
      .def_readonly("patterns", &Scenario::patterns);

  py::class_<SearchReport>(m, "SearchReport")
      .def_property_readonly("matches",
                             [](const SearchReport& r) { return r.pat_matches; })
      .def_property_readonly("checksum",
                             [](const SearchReport& r) { return r.checksum_found; })
      .def_property_readonly("multi",
                             [](const SearchReport& r) { return r.multi_match_positions; })
      .def_property_readonly("pat_found", &signed_pat_found)
      .def_readonly("seq_matches", &SearchReport::seq_matches)
      .def("text", [](const SearchReport& r) { return report_text(r, true); })
      .def("__eq__",
           [](const SearchReport& a, const SearchReport& b) { return a == b; })
      .def("__repr__", [](const SearchReport& r) {
        return "<SearchReport matches=" + std::to_string(r.pat_matches) +
               " checksum=" + std::to_string(r.checksum_found) +
               " multi=" + std::to_string(r.multi_match_positions) + ">";
      });

  m.def(
      "build_scenario",
      [](const ScenarioParams& params, unsigned workers) {
        py::gil_scoped_release release;
        return build_scenario(params, workers);
      },
      py::arg("params"), py::arg("workers") = 1);

  m.def(
      "find_first",
      [](const std::string& sequence, const std::string& pattern) -> std::int64_t {
        const Sequence seq = nucleotides_from_string(sequence);
        const Pattern pat = Pattern::random(nucleotides_from_string(pattern));
        const std::uint64_t pos = find_first(seq, pat);
        return pos == kNotFound ? -1 : static_cast<std::int64_t>(pos);
      },
      py::arg("sequence"), py::arg("pattern"));

  m.def(
      "search_sequential",
      [](const std::string& sequence, const std::vector<std::string>& patterns) {
        const Sequence seq = nucleotides_from_string(sequence);
        const PatternSet pats = patterns_from_strings(patterns);
        py::gil_scoped_release release;
        return search_all_sequential(seq, pats);
      },
      py::arg("sequence"), py::arg("patterns"));
  m.def(
      "search_sequential",
      [](const Scenario& scenario) {
        py::gil_scoped_release release;
        return search_all_sequential(scenario.sequence, scenario.patterns);
      },
      py::arg("scenario"));

  m.def(
      "search_parallel",
      [](const std::string& sequence, const std::vector<std::string>& patterns,
         const std::string& decomposition, unsigned workers, std::uint64_t chunk,
         const std::string& accumulation, bool cancellation) {
        const Sequence seq = nucleotides_from_string(sequence);
        const PatternSet pats = patterns_from_strings(patterns);
        return run_parallel(seq, pats,
                            make_strategy(decomposition, workers, chunk, accumulation,
                                          cancellation));
      },
      py::arg("sequence"), py::arg("patterns"), py::arg("decomposition") = "patterns",
      py::arg("workers") = 1, py::arg("chunk") = 4096, py::arg("accumulation") = "serialized",
      py::arg("cancellation") = false);
  m.def(
      "search_parallel",
      [](const Scenario& scenario, const std::string& decomposition, unsigned workers,
         std::uint64_t chunk, const std::string& accumulation, bool cancellation) {
        return run_parallel(scenario.sequence, scenario.patterns,
                            make_strategy(decomposition, workers, chunk, accumulation,
                                          cancellation));
      },
      py::arg("scenario"), py::arg("decomposition") = "patterns", py::arg("workers") = 1,
      py::arg("chunk") = 4096, py::arg("accumulation") = "serialized",
      py::arg("cancellation") = false);

  m.def(
      "search_distributed",
      [](const std::string& sequence, const std::vector<std::string>& patterns,
         std::uint32_t ranks, const std::string& mode) {
        const Sequence seq = nucleotides_from_string(sequence);
        const PatternSet pats = patterns_from_strings(patterns);
        return run_dist(seq, pats, ranks, make_mode(mode));
      },
      py::arg("sequence"), py::arg("patterns"), py::arg("ranks") = 1,
      py::arg("mode") = "distributed");
  m.def(
      "search_distributed",
      [](const Scenario& scenario, std::uint32_t ranks, const std::string& mode) {
        return run_dist(scenario.sequence, scenario.patterns, ranks, make_mode(mode));
      },
      py::arg("scenario"), py::arg("ranks") = 1, py::arg("mode") = "distributed");

  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
}
