#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gcsa/alignment.hpp"
#include "gcsa/construction.hpp"
#include "gcsa/error.hpp"
#include "gcsa/index.hpp"
#include "gcsa/matcher.hpp"
#include "gcsa/simulation.hpp"

namespace py = pybind11;
using namespace gcsa;

namespace {

py::tuple range_tuple(const NodeRange& r) { return py::make_tuple(r.sp, r.ep); }

NodeRange to_range(const std::pair<std::uint64_t, std::uint64_t>& r) { return {r.first, r.second}; }

py::dict stats_dict(const IndexStats& s) {
  py::dict d;
  d["nodes"] = s.nodes;
  d["edges"] = s.edges;
  d["automaton_edges"] = s.automaton_edges;
  d["bwt_length"] = s.bwt_length;
  d["bwt_bound"] = 2 * s.edges - s.nodes + 2;
  d["samples"] = s.samples;
  d["sample_rate"] = s.sample_rate;
  d["sigma"] = s.sigma;
  py::dict components;
  for (const auto& c : s.components) components[py::str(c.name)] = c.bytes;
  d["components"] = components;
  d["total_bytes"] = s.total_bytes;
  return d;
}

py::dict match_dict(const MatchResult& r) {
  py::dict d;
  d["read"] = r.read;
  d["unmatchable"] = r.unmatchable;
  d["distance"] = r.distance ? py::object(py::int_(*r.distance)) : py::none();
  py::list hits;
  for (const auto& h : r.hits) {
    py::dict hit;
    hit["strand"] = std::string(1, strand_char(h.strand));
    hit["occurrences"] = h.occurrences;
    hit["ids"] = h.ids;
    hits.append(hit);
  }
  d["hits"] = hits;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gcsa, m) {
  m.doc() = "Generalized compressed suffix array over multiple alignments";

  auto error = py::register_exception<Error>(m, "GcsaError");
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<FormatError>(m, "FormatError", error.ptr());
  py::register_exception<InternalError>(m, "InternalError", error.ptr());

  py::class_<GcsaIndex>(m, "Index")
      .def_static(
          "from_alignment",
          [](const std::vector<std::string>& rows, std::size_t context_length, std::uint32_t sample_rate) {
            py::gil_scoped_release release;
            auto sa = build_prefix_sorted(build_automaton(AlignmentMatrix(rows), context_length));
            return GcsaIndex::from_automaton(sa, sample_rate);
          },
          py::arg("rows"), py::arg("context_length") = kDefaultContextLength,
          py::arg("sample_rate") = kDefaultSampleRate)
      .def_static("load", &GcsaIndex::load, py::arg("path"))
      .def_static("from_bytes", [](const py::bytes& b) { return GcsaIndex::deserialize(std::string(b)); })
      .def("save", &GcsaIndex::save, py::arg("path"))
      .def("to_bytes", [](const GcsaIndex& ix) { return py::bytes(ix.serialize()); })
      .def_property_readonly("node_count", &GcsaIndex::node_count)
      .def_property_readonly("bwt_length", &GcsaIndex::bwt_length)
      .def_property_readonly("sample_rate", &GcsaIndex::sample_rate)
      .def("bwt", &GcsaIndex::bwt_string)
      .def("find", [](const GcsaIndex& ix, const std::string& p) { return range_tuple(ix.find(p)); },
           py::arg("pattern"))
      .def("count",
           [](const GcsaIndex& ix, const std::string& p) {
             NodeRange r = ix.find(p);
             return r.empty() ? 0 : ix.last_node(r) - ix.first_node(r) + 1;
           },
           py::arg("pattern"))
      .def("locate", [](const GcsaIndex& ix, std::pair<std::uint64_t, std::uint64_t> r) {
             return ix.locate_all(to_range(r));
           })
      .def("locate_pattern", [](const GcsaIndex& ix, const std::string& p) {
             return ix.locate_all(ix.find(p));
           })
      .def("display",
           [](const GcsaIndex& ix, std::uint64_t rank, std::size_t k) {
             return ix.display(ix.node_range(rank), k);
           },
           py::arg("rank"), py::arg("k"))
      .def("stats", [](const GcsaIndex& ix) { return stats_dict(ix.stats()); })
      .def("approximate_find",
           [](const GcsaIndex& ix, const std::string& p, int k) {
             auto r = approximate_find(ix, encode_read(ix.alphabet(), p), k);
             py::list ranges;
             for (const auto& range : r.ranges) ranges.append(range_tuple(range));
             return py::make_tuple(r.distance ? py::object(py::int_(*r.distance)) : py::none(), ranges);
           },
           py::arg("pattern"), py::arg("k"))
      .def("match",
           [](const GcsaIndex& ix, const std::vector<std::pair<std::string, std::string>>& reads,
              std::uint32_t max_edit, bool rc) {
             std::vector<Read> batch;
             for (const auto& [name, seq] : reads) batch.push_back({name, seq});
             MatchOptions options;
             options.max_edit = max_edit;
             options.reverse_complement = rc;
             std::vector<MatchResult> results;
             {
               py::gil_scoped_release release;
               results = match_batch(ix, batch, options);
             }
             py::list out;
             for (const auto& r : results) out.append(match_dict(r));
             return out;
           },
           py::arg("reads"), py::arg("max_edit") = 0, py::arg("reverse_complement") = true)
      .def("__eq__", [](const GcsaIndex& a, const GcsaIndex& b) { return a == b; });

  m.def("reverse_complement", [](const std::string& s) { return reverse_complement(s); });

  m.def(
      "simulate",
      [](std::size_t n, double p, std::size_t sigma, std::size_t trials, std::uint64_t seed) {
        RandomModelParams params{n, p, sigma, seed, trials};
        GrowthReport report;
        {
          py::gil_scoped_release release;
          report = run_growth_experiment(params);
        }
        py::list records;
        for (const auto& r : report.records) {
          py::dict d;
          d["h"] = r.h;
          d["mean_nodes"] = r.mean_nodes;
          d["mean_edges"] = r.mean_edges;
          d["mean_colliding_pairs"] = r.mean_colliding_pairs;
          d["sorted_fraction"] = r.sorted_fraction;
          d["node_bound"] = r.node_bound;
          d["edge_bound"] = r.edge_bound;
          d["collision_bound"] = r.collision_bound;
          records.append(d);
        }
        return records;
      },
      py::arg("n") = 1000, py::arg("p") = 0.01, py::arg("sigma") = 4, py::arg("trials") = 30,
      py::arg("seed") = 1);
}
