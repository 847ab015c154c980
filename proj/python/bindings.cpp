#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spmine/fpgrowth.hpp"
#include "spmine/pipeline.hpp"
#include "spmine/report.hpp"
#include "spmine/traversal.hpp"

namespace py = pybind11;
using namespace spmine;

namespace {

std::vector<double> span_to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

EdgeSet to_edge_set(const std::vector<std::pair<VertexId, VertexId>>& edges) { return {edges.begin(), edges.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shortest-path transaction mining for social graphs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<BoundsError>(m, "BoundsError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  // Registered last so it is matched before the generic Error translator.
  static PyObject* stage_exc = py::exception<StageError>(m, "StageError", base.ptr()).inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const StageError& e) {
      py::object exc = py::handle(stage_exc)(e.what());
      exc.attr("stage") = e.stage();
      exc.attr("exit_code") = e.exit_code();
      PyErr_SetObject(stage_exc, exc.ptr());
    }
  });

  m.attr("UNREACHABLE") = kUnreachable;

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::tuple<VertexId, VertexId, double>>& edges, bool directed,
             bool weighted) {
            std::vector<InputEdge> in;
            in.reserve(edges.size());
            for (const auto& [u, v, w] : edges) in.push_back({u, v, w});
            return Graph::from_edges(n, in, directed, weighted);
          },
          py::arg("vertex_count"), py::arg("edges"), py::arg("directed") = false, py::arg("weighted") = false,
          "Edges are (u, v, weight) tuples; weight is ignored unless weighted.")
      .def_static(
          "parse",
          [](const std::string& text, bool directed, bool weighted) {
            return parse_edge_list(text, ParseOptions{directed, weighted});
          },
          py::arg("text"), py::arg("directed") = false, py::arg("weighted") = false)
      .def_static(
          "read",
          [](const std::filesystem::path& path, bool directed, bool weighted) {
            return read_edge_list(path, ParseOptions{directed, weighted});
          },
          py::arg("path"), py::arg("directed") = false, py::arg("weighted") = false)
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("directed", &Graph::directed)
      .def_property_readonly("weighted", &Graph::weighted)
      .def_property_readonly("fingerprint", &Graph::fingerprint)
      .def_property_readonly("fingerprint_hex", [](const Graph& g) { return fingerprint_hex(g.fingerprint()); })
      .def("degree", &Graph::degree)
      .def("neighbors",
           [](const Graph& g, VertexId v) {
             auto s = g.neighbors(v);
             return std::vector<VertexId>(s.begin(), s.end());
           })
      .def("neighbor_weights", [](const Graph& g, VertexId v) { return span_to_vec(g.neighbor_weights(v)); })
      .def("has_edge", &Graph::has_edge)
      .def("edge_weight", &Graph::edge_weight)
      .def("to_edge_list",
           [](const Graph& g) {
             std::ostringstream out;
             write_edge_list(out, g);
             return out.str();
           })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) + " " +
               (g.directed() ? "directed" : "undirected") + ">";
      });

  m.def("degree_histogram", [](const Graph& g) { return degree_histogram(g).entries; });
  m.def("clustering", [](const Graph& g) {
    const auto c = clustering(g);
    return py::make_tuple(c.local, c.average);
  }, "Returns (local coefficients, average). Undirected graphs only.");
  m.def(
      "export_dot",
      [](const Graph& g, const std::optional<std::vector<std::pair<VertexId, VertexId>>>& highlight,
         std::size_t max_vertices) {
        if (!highlight) return export_dot(g, nullptr, max_vertices);
        const auto set = to_edge_set(*highlight);
        return export_dot(g, &set, max_vertices);
      },
      py::arg("graph"), py::arg("highlight") = py::none(), py::arg("max_vertices") = 0);

  py::class_<SsspResult>(m, "SsspResult")
      .def_readonly("source", &SsspResult::source)
      .def_readonly("dist", &SsspResult::dist)
      .def_readonly("parent", &SsspResult::parent)
      .def("reachable", &SsspResult::reachable)
      .def("path_to", [](const SsspResult& r, VertexId t) { return reconstruct_path(r, t); });
  m.def("sssp", &sssp, py::arg("graph"), py::arg("source"));
  m.def("reconstruct_path", &reconstruct_path, py::arg("result"), py::arg("target"));
  m.def(
      "sample_sources", [](const Graph& g, std::size_t k, std::uint64_t seed) { return sample_sources(g, k, seed).sources; },
      py::arg("graph"), py::arg("k"), py::arg("seed"));
  m.def("all_sources", &all_sources);

  py::class_<TransactionDb>(m, "TransactionDb")
      .def_property_readonly("transactions",
                             [](const TransactionDb& db) {
                               std::vector<std::vector<VertexId>> out;
                               out.reserve(db.size());
                               for (const auto& t : db.transactions) out.push_back(t.vertices());
                               return out;
                             })
      .def_readonly("source_count", &TransactionDb::source_count)
      .def_readonly("unreachable_pairs", &TransactionDb::unreachable_pairs)
      .def_readonly("graph_fingerprint", &TransactionDb::graph_fingerprint)
      .def("total_length", &TransactionDb::total_length)
      .def("__len__", &TransactionDb::size)
      .def("__eq__", [](const TransactionDb& a, const TransactionDb& b) { return a == b; })
      .def("serialize", &serialize_db)
      .def_static(
          "parse", [](const std::string& text, std::optional<std::uint64_t> fp) { return parse_db(text, fp); },
          py::arg("text"), py::arg("expected_fingerprint") = py::none());
  m.def(
      "run_traversals",
      [](const Graph& g, const std::vector<VertexId>& sources, unsigned threads) {
        py::gil_scoped_release release;
        return run_traversals(g, sources, threads);
      },
      py::arg("graph"), py::arg("sources"), py::arg("threads") = 1);
  m.def("count_ngrams", [](const TransactionDb& db, std::size_t n, bool canonicalize) {
    py::dict out;
    for (const auto& [items, count] : count_ngrams(db, n, canonicalize).entries)
      out[py::tuple(py::cast(items))] = count;
    return out;
  }, py::arg("db"), py::arg("n"), py::arg("canonicalize") = true);
  m.def("vertex_frequency", &vertex_frequency);

  py::class_<FrequentPattern>(m, "FrequentPattern")
      .def_readonly("items", &FrequentPattern::items)
      .def_readonly("support", &FrequentPattern::support)
      .def("__eq__", [](const FrequentPattern& a, const FrequentPattern& b) { return a == b; })
      .def("__repr__", [](const FrequentPattern& p) {
        return "<FrequentPattern " + join_items(p.items) + " support=" + std::to_string(p.support) + ">";
      });
  m.def(
      "mine_patterns",
      [](const TransactionDb& db, std::uint64_t min_support, std::optional<std::size_t> max_size) {
        py::gil_scoped_release release;
        return mine(build_fptree(db, min_support), min_support, max_size);
      },
      py::arg("db"), py::arg("min_support"), py::arg("max_size") = py::none());
  m.def("brute_force_frequent", &brute_force_frequent, py::arg("db"), py::arg("min_support"),
        py::arg("max_size") = 0);

  m.def("spearman", [](const std::vector<double>& x, const std::vector<double>& y) { return spearman(x, y); });
  m.def("correlate_degree_frequency",
        [](const Graph& g, const TransactionDb& db) { return correlate_degree_frequency(g, vertex_frequency(db)); });
  m.def(
      "top_degree_share",
      [](const Graph& g, const TransactionDb& db, double percentile) {
        return top_degree_share(g, vertex_frequency(db), percentile);
      },
      py::arg("graph"), py::arg("db"), py::arg("percentile"));
  m.def("format_real", &format_real);

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& input, const std::filesystem::path& out, const std::string& mode, std::size_t k,
         std::uint64_t seed, const std::string& min_support, std::size_t max_size,
         const std::vector<std::size_t>& ngrams, bool directed, bool weighted, unsigned threads,
         std::size_t dot_cap) {
        RunConfig c;
        c.input = input;
        c.out = out;
        c.mode = parse_mode(mode);
        c.k = k;
        c.seed = seed;
        c.min_support = MinSupport::parse(min_support);
        c.max_pattern_size = max_size;
        c.ngram_sizes = ngrams;
        c.directed = directed;
        c.weighted = weighted;
        c.threads = threads;
        c.dot_cap = dot_cap;
        StatsReport r;
        {
          py::gil_scoped_release release;
          r = run_pipeline(c);
        }
        return py::module_::import("json").attr("loads")(summary_json(r));
      },
      py::arg("input"), py::arg("out"), py::arg("mode") = "sample", py::arg("k") = 100, py::arg("seed") = 42,
      py::arg("min_support") = "0.01", py::arg("max_size") = 3, py::arg("ngrams") = std::vector<std::size_t>{1, 2, 3},
      py::arg("directed") = false, py::arg("weighted") = false, py::arg("threads") = 1, py::arg("dot_cap") = 500,
      "Runs every stage, writes the report into `out` and returns the summary as a dict.");
}
