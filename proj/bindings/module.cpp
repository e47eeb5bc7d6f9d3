#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "vicinity/baselines.hpp"
#include "vicinity/errors.hpp"
#include "vicinity/graph.hpp"
#include "vicinity/oracle.hpp"
#include "vicinity/persistence.hpp"
#include "vicinity/query.hpp"

namespace py = pybind11;
using namespace vicinity;

namespace {

std::shared_ptr<Graph> graph_from_file(const std::string& path, bool weighted,
                                       bool pre_symmetrized) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    ParseOptions opt;
    opt.weighted = weighted;
    opt.treat_as_undirected = !pre_symmetrized;
    return std::make_shared<Graph>(parse_edge_list(in, opt).graph);
}

std::shared_ptr<Graph> graph_from_edges(NodeId n,
                                        const std::vector<std::tuple<NodeId, NodeId, double>>& edges,
                                        bool weighted) {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
    return std::make_shared<Graph>(Graph(n, std::move(es), weighted));
}

py::dict result_to_dict(const QueryResult& r) {
    py::dict d;
    d["distance"] = r.distance ? py::cast(*r.distance) : py::none();
    d["method"] = method_name(r.method);
    d["probes"] = r.probes;
    if (r.method == Method::Intersection) d["meeting_node"] = r.meeting_node;
    if (!r.path.empty()) d["path"] = r.path;
    d["unreachable"] = r.unreachable;
    return d;
}

py::dict search_to_dict(const SearchResult& r) {
    py::dict d;
    d["distance"] = r.distance ? py::cast(*r.distance) : py::none();
    d["settled_nodes"] = r.stats.settled_nodes;
    d["edge_scans"] = r.stats.edge_scans;
    d["seconds"] = r.stats.seconds;
    if (!r.path.empty()) d["path"] = r.path;
    return d;
}

}  // namespace

PYBIND11_MODULE(_vicinity, m) {
    m.doc() = "Exact shortest-path oracle via landmark vicinities";

    py::register_exception<ParseError>(m, "GraphParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "GraphValidationError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "IndexFormatError", PyExc_ValueError);
    py::register_exception<NodeRangeError>(m, "NodeRangeError", PyExc_IndexError);
    py::register_exception<IoError>(m, "GraphIoError", PyExc_OSError);

    py::class_<Graph, std::shared_ptr<Graph>>(m, "Graph")
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("weighted", &Graph::weighted)
        .def("degree", &Graph::degree, py::arg("u"))
        .def("neighbors",
             [](const Graph& g, NodeId u) {
                 if (u >= g.node_count()) throw NodeRangeError("node id out of range");
                 auto nb = g.neighbors(u);
                 return std::vector<NodeId>(nb.begin(), nb.end());
             },
             py::arg("u"))
        .def("fingerprint", &Graph::fingerprint);

    m.def("load_graph", &graph_from_file, py::arg("path"), py::arg("weighted") = false,
          py::arg("pre_symmetrized") = false);
    m.def("graph_from_edges", &graph_from_edges, py::arg("n"), py::arg("edges"),
          py::arg("weighted") = false);
    m.def("barabasi_albert",
          [](NodeId n, std::uint32_t k, std::uint64_t seed) {
              return std::make_shared<Graph>(gen_barabasi_albert(n, k, seed));
          },
          py::arg("n"), py::arg("edges_per_node"), py::arg("seed"));
    m.def("erdos_renyi",
          [](NodeId n, double p, std::uint64_t seed) {
              return std::make_shared<Graph>(gen_erdos_renyi(n, p, seed));
          },
          py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("largest_component", [](const std::shared_ptr<Graph>& g) {
        LccResult r = largest_connected_component(*g);
        return py::make_tuple(std::make_shared<Graph>(std::move(r.graph)), r.original_of_new);
    });

    py::class_<Oracle, std::shared_ptr<Oracle>>(m, "Oracle")
        .def_property_readonly("alpha", [](const Oracle& o) { return o.alpha; })
        .def_property_readonly("seed", [](const Oracle& o) { return o.seed; })
        .def_property_readonly("landmarks", [](const Oracle& o) { return o.landmarks.members; })
        .def_property_readonly("graph",
                               [](const Oracle& o) { return std::const_pointer_cast<Graph>(o.graph); })
        .def("stats_json", [](const Oracle& o) { return build_stats_json(o.stats); })
        .def("query", [](const Oracle& o, NodeId s, NodeId t) {
            return result_to_dict(query_distance(o, s, t));
        })
        .def("query_path", [](const Oracle& o, NodeId s, NodeId t) {
            return result_to_dict(query_path(o, s, t));
        })
        .def("query_with_fallback",
             [](const Oracle& o, NodeId s, NodeId t, bool want_path) {
                 return result_to_dict(query_with_fallback(o, s, t, FallbackKind::Auto, want_path));
             },
             py::arg("s"), py::arg("t"), py::arg("want_path") = true)
        .def("save", [](const Oracle& o, const std::string& path) {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw IoError("cannot open index file: " + path);
            return save_oracle(o, out);
        });

    m.def("build_oracle",
          [](std::shared_ptr<Graph> g, double alpha, std::uint64_t seed, unsigned workers) {
              BuildOptions opt;
              opt.alpha = alpha;
              opt.seed = seed;
              opt.workers = workers;
              return std::make_shared<Oracle>(build_oracle(std::move(g), opt));
          },
          py::arg("graph"), py::arg("alpha") = 4.0, py::arg("seed") = 1, py::arg("workers") = 0);
    m.def("load_oracle", [](const std::string& path, std::shared_ptr<Graph> g) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open index file: " + path);
        return std::make_shared<Oracle>(load_oracle(in, std::shared_ptr<const Graph>(std::move(g))));
    });

    m.def("bfs_distance",
          [](const std::shared_ptr<Graph>& g, NodeId s, NodeId t, bool want_path) {
              return search_to_dict(bfs_distance(*g, s, t, want_path));
          },
          py::arg("graph"), py::arg("s"), py::arg("t"), py::arg("want_path") = false);
    m.def("bidirectional_bfs",
          [](const std::shared_ptr<Graph>& g, NodeId s, NodeId t, bool want_path) {
              return search_to_dict(bidirectional_bfs(*g, s, t, want_path));
          },
          py::arg("graph"), py::arg("s"), py::arg("t"), py::arg("want_path") = false);
    m.def("dijkstra_distance",
          [](const std::shared_ptr<Graph>& g, NodeId s, NodeId t, bool want_path) {
              return search_to_dict(dijkstra_distance(*g, s, t, want_path));
          },
          py::arg("graph"), py::arg("s"), py::arg("t"), py::arg("want_path") = false);
}
