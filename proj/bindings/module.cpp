#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbounds/doubling.hpp"
#include "qbounds/graph.hpp"
#include "qbounds/models.hpp"
#include "qbounds/report.hpp"
#include "qbounds/sigma.hpp"
#include "qbounds/theta.hpp"

namespace py = pybind11;
using namespace qbounds;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case nlohmann::detail::value_t::null:
      return py::none();
    case nlohmann::detail::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::detail::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::detail::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::detail::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::detail::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::detail::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case nlohmann::detail::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

Distribution distribution_from_table(int n, const std::vector<std::vector<double>>& table) {
  Distribution d(n);
  const uint32_t contexts = d.contexts();
  if (table.size() != contexts)
    throw std::invalid_argument("table must have 2^n context rows");
  for (uint32_t x = 0; x < contexts; ++x) {
    if (table[x].size() != contexts)
      throw std::invalid_argument("each context row must have 2^n entries");
    for (uint32_t b = 0; b < contexts; ++b) d.at(x, b) = table[x][b];
  }
  return d;
}

ExclusivityGraph graph_from_args(const std::vector<std::string>& labels,
                                 const std::vector<std::pair<int, int>>& edges) {
  return ExclusivityGraph::from_edges(labels, edges);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exclusivity-graph workbench for n-body nonlocality bounds";

  m.def("sn_terms", [](int n) {
    py::list out;
    for (const auto& t : build_sn(n)) {
      py::list context;
      for (int i = 0; i < n; ++i) context.append(int((t.context >> i) & 1u));
      out.append(py::make_tuple(context, t.sign));
    }
    return out;
  }, py::arg("n"), "S_n as a list of (context, sign) pairs");

  m.def("sigma_support", [](int n) {
    std::vector<std::string> tokens;
    for (const auto& e : build_sigma(n).support()) tokens.push_back(e.token());
    return tokens;
  }, py::arg("n"), "event tokens of the Sigma_n support");

  m.def("evaluate", [](int n, const std::vector<std::vector<double>>& table) {
    const auto expr = build_sigma(n);
    const auto d = distribution_from_table(n, table);
    return py::make_tuple(evaluate_sigma(expr, d), evaluate_sn(expr, d));
  }, py::arg("n"), py::arg("p"),
     "(Sigma_n, S_n) of a dense conditional distribution p[context][outcomes]");

  m.def("exclusive", [](int n, bool doubled, const std::string& a, const std::string& b) {
    const Scenario sc = doubled ? doubled_scenario(n) : single_scenario(n);
    return exclusive(Event::parse(sc, a), Event::parse(sc, b));
  }, py::arg("n"), py::arg("doubled"), py::arg("a"), py::arg("b"));

  m.def("verify_family", [](int n, int jobs) {
    const auto expr = build_sigma(n);
    return json_to_py(verdict_json(verify_family(build_family(n), expr, jobs)));
  }, py::arg("n"), py::arg("jobs") = 0,
     "build and verify the doubled-experiment exclusive-set family");

  m.def("derive_bound", &derive_bound, py::arg("n"));

  m.def("sigma_graph", [](int n) {
    return json_to_py(graph_json(sigma_support_graph(n), false));
  }, py::arg("n"), "vertices and edges of the Sigma_n support graph");

  m.def("lovasz_theta",
        [](const std::vector<std::string>& labels,
           const std::vector<std::pair<int, int>>& edges, double tol) {
          return json_to_py(theta_json(lovasz_theta(graph_from_args(labels, edges), tol)));
        },
        py::arg("vertices"), py::arg("edges"), py::arg("tol") = 1e-8);

  m.def("independence_number",
        [](const std::vector<std::string>& labels,
           const std::vector<std::pair<int, int>>& edges) {
          const auto r = independence_number(graph_from_args(labels, edges));
          return py::make_tuple(r.value, r.witness);
        },
        py::arg("vertices"), py::arg("edges"));

  m.def("is_vertex_transitive",
        [](const std::vector<std::string>& labels,
           const std::vector<std::pair<int, int>>& edges) {
          return is_vertex_transitive(graph_from_args(labels, edges));
        },
        py::arg("vertices"), py::arg("edges"));

  m.def("local_bound", [](int n) {
    const auto r = local_bound(n);
    return py::make_tuple(r.sigma, r.s);
  }, py::arg("n"));

  m.def("hybrid_bound", [](int n) {
    const auto r = hybrid_bound(n);
    return py::make_tuple(r.sigma, r.s);
  }, py::arg("n"));

  m.def("ns_box", [](int n) {
    const auto d = ns_box(n);
    std::vector<std::vector<double>> table(d.contexts(),
                                           std::vector<double>(d.contexts()));
    for (uint32_t x = 0; x < d.contexts(); ++x)
      for (uint32_t b = 0; b < d.contexts(); ++b) table[x][b] = d.at(x, b);
    return table;
  }, py::arg("n"));

  m.def("check_nonsignaling",
        [](int n, const std::vector<std::vector<double>>& table, double tol) {
          return check_nonsignaling(distribution_from_table(n, table), tol);
        },
        py::arg("n"), py::arg("p"), py::arg("tol") = 1e-12);

  m.def("ghz_correlator", [](int n, const std::vector<double>& angles) {
    return ghz_correlator(n, angles);
  }, py::arg("n"), py::arg("angles"));

  m.def("optimize_sn_angles", [](int n) {
    const auto r = optimize_sn_angles(n);
    return py::make_tuple(r.s_value, r.angles);
  }, py::arg("n"));

  m.def("bounds_report", [](int n, const std::set<std::string>& skip) {
    return json_to_py(bounds_json(compute_bounds(n, skip)));
  }, py::arg("n"), py::arg("skip") = std::set<std::string>{});
}
