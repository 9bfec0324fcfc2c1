#include "qbounds/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qbounds {

double quantize(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

Json sigma_json(const SigmaExpression& expr) {
  Json terms = Json::array();
  for (const auto& t : expr.terms()) {
    Json context = Json::array();
    for (int i = 0; i < expr.n(); ++i) context.push_back(int((t.context >> i) & 1u));
    terms.push_back(Json{{"context", context}, {"sign", t.sign}});
  }
  Json support = Json::array();
  for (const auto& e : expr.support()) support.push_back(e.token());
  return Json{{"n", expr.n()}, {"terms", terms}, {"support", support}};
}

Json verdict_json(const FamilyVerdict& v) {
  Json checks{{"set_count", v.set_count_ok},
              {"set_sizes", v.set_sizes_ok},
              {"pairwise_exclusivity", v.pairwise_exclusive_ok},
              {"disjointness", v.disjoint_ok},
              {"coverage", v.coverage_ok},
              {"ancillary_mass", v.ancillary_ok}};
  Json counts{{"sets", v.sets},
              {"product_events", v.product_events},
              {"expected_events", v.expected_events},
              {"distinct_events", v.distinct_events},
              {"ancillary_multiplicity_diagonal", v.multiplicity_diagonal},
              {"ancillary_multiplicity_antidiagonal", v.multiplicity_antidiagonal},
              {"ancillary_mass", v.ancillary_mass}};
  Json out{{"n", v.n}, {"checks", checks}, {"counts", counts},
           {"all_passed", v.all_passed()}};
  if (!v.failure_detail.empty()) out["failed_check"] = v.failure_detail;
  if (v.derived_bound) out["derived_bound"] = quantize(*v.derived_bound);
  return out;
}

Json graph_json(const ExclusivityGraph& g, bool with_invariants) {
  Json vertices = Json::array();
  for (const auto& label : g.labels()) vertices.push_back(label);
  Json edges = Json::array();
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.edge(u, v)) edges.push_back(Json::array({u, v}));
  Json out{{"vertices", vertices}, {"edges", edges}};
  if (with_invariants) {
    out["alpha"] = independence_number(g).value;
    out["vertex_transitive"] = is_vertex_transitive(g);
  }
  return out;
}

Json theta_json(const ThetaResult& r) {
  return Json{{"value", quantize(r.value)},
              {"lower", quantize(r.lower)},
              {"upper", quantize(r.upper)},
              {"primal_feasibility", quantize(r.primal_feasibility)},
              {"duality_gap", quantize(r.duality_gap)},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"method", r.method}};
}

BoundsReport compute_bounds(int n, const std::set<std::string>& skip, double theta_tol) {
  BoundsReport r;
  r.n = n;
  r.hybrid_closed_form = 3.0 * std::ldexp(1.0, n - 2);
  r.quantum_closed_form = (2.0 + std::sqrt(2.0)) * std::ldexp(1.0, n - 2);
  r.quantum_s_closed_form = std::sqrt(2.0) * std::ldexp(1.0, n - 1);
  r.nonsignaling_closed_form = std::ldexp(1.0, n);

  const SigmaExpression expr = build_sigma(n);

  r.local = local_bound(n);
  if (double(r.local->sigma) != r.hybrid_closed_form) r.all_match = false;

  if (!skip.count("hybrid")) {
    r.hybrid = hybrid_bound(n);
    if (double(r.hybrid->sigma) != r.hybrid_closed_form) r.all_match = false;
  } else {
    r.complete = false;
  }

  if (!skip.count("quantum")) {
    r.quantum = optimize_sn_angles(n);
    r.quantum_sigma = r.quantum->s_value / 2.0 + std::ldexp(1.0, n - 1);
    if (std::abs(*r.quantum_sigma - r.quantum_closed_form) > 1e-4) r.all_match = false;
  } else {
    r.complete = false;
  }

  if (!skip.count("theta")) {
    if (n <= 3) {
      const ExclusivityGraph g = ExclusivityGraph::from_events(expr.support());
      r.theta = lovasz_theta(g, theta_tol);
      const double tol = (n == 2) ? 1e-5 : 1e-3;
      if (std::abs(r.theta->value - r.quantum_closed_form) > tol) r.all_match = false;
    } else {
      r.complete = false;  // support graph beyond the solver's remit
    }
  } else {
    r.complete = false;
  }

  if (!skip.count("ns")) {
    const Distribution box = ns_box(n);
    r.ns_sigma = evaluate_sigma(expr, box);
    r.ns_nonsignaling = check_nonsignaling(box);
    if (*r.ns_sigma != r.nonsignaling_closed_form || !r.ns_nonsignaling)
      r.all_match = false;
  } else {
    r.complete = false;
  }
  return r;
}

Json bounds_json(const BoundsReport& r) {
  Json out{{"n", r.n}};
  if (r.local) {
    Json strategy = Json::array();
    for (const auto& pair : r.local->strategy)
      strategy.push_back(Json::array({pair[0], pair[1]}));
    out["local"] = Json{{"sigma", r.local->sigma},
                        {"s", quantize(r.local->s)},
                        {"strategy", strategy}};
  }
  if (r.hybrid)
    out["hybrid"] = Json{{"sigma", r.hybrid->sigma},
                         {"s", quantize(r.hybrid->s)},
                         {"group_mask", r.hybrid->group_mask}};
  if (r.quantum) {
    Json angles = Json::array();
    for (const auto& pair : r.quantum->angles)
      angles.push_back(Json::array({quantize(pair[0]), quantize(pair[1])}));
    out["quantum"] = Json{{"s_found", quantize(r.quantum->s_value)},
                          {"sigma_via_identity", quantize(*r.quantum_sigma)},
                          {"angles", angles}};
  }
  if (r.theta) out["theta"] = theta_json(*r.theta);
  if (r.ns_sigma)
    out["nonsignaling"] = Json{{"sigma", quantize(*r.ns_sigma)},
                               {"nonsignaling", r.ns_nonsignaling}};
  out["closed_forms"] = Json{{"hybrid", quantize(r.hybrid_closed_form)},
                             {"quantum_sigma", quantize(r.quantum_closed_form)},
                             {"quantum_s", quantize(r.quantum_s_closed_form)},
                             {"nonsignaling", quantize(r.nonsignaling_closed_form)}};
  out["tolerances"] = Json{{"quantum_sigma", 1e-4},
                           {"theta", r.n == 2 ? 1e-5 : 1e-3},
                           {"hybrid", 0.0},
                           {"nonsignaling", 0.0}};
  out["complete"] = r.complete;
  out["all_match"] = r.all_match;
  return out;
}

std::string bounds_csv(const BoundsReport& r) {
  std::ostringstream os;
  os << "n,local_sigma,hybrid_sigma,quantum_s,quantum_sigma,theta,ns_sigma,"
        "hybrid_cf,quantum_cf,ns_cf,all_match\n";
  auto cell = [&](const std::optional<double>& v) {
    if (v)
      os << quantize(*v);
    else
      os << "";
  };
  os << r.n << ',';
  os << (r.local ? std::to_string(r.local->sigma) : "") << ',';
  os << (r.hybrid ? std::to_string(r.hybrid->sigma) : "") << ',';
  if (r.quantum) os << quantize(r.quantum->s_value);
  os << ',';
  cell(r.quantum_sigma);
  os << ',';
  if (r.theta) os << quantize(r.theta->value);
  os << ',';
  cell(r.ns_sigma);
  os << ',';
  os << quantize(r.hybrid_closed_form) << ',' << quantize(r.quantum_closed_form)
     << ',' << quantize(r.nonsignaling_closed_form) << ','
     << (r.all_match ? "true" : "false") << '\n';
  return os.str();
}

Json full_report_json(int n, const std::set<std::string>& skip, int jobs) {
  Json out{{"n", n}};
  bool complete = true, all_match = true;

  const BoundsReport bounds = compute_bounds(n, skip);
  out["bounds"] = bounds_json(bounds);
  complete = complete && bounds.complete;
  all_match = all_match && bounds.all_match;

  if (!skip.count("verify") && n <= 5) {
    const SigmaExpression expr = build_sigma(n);
    const SetFamily family = build_family(n);
    const FamilyVerdict verdict = verify_family(family, expr, jobs);
    out["family"] = verdict_json(verdict);
    all_match = all_match && verdict.all_passed();
    if (verdict.derived_bound &&
        std::abs(*verdict.derived_bound - bounds.quantum_closed_form) > 1e-9)
      all_match = false;
  } else {
    complete = false;
  }

  out["complete"] = complete;
  out["all_match"] = all_match;
  return out;
}

}  // namespace qbounds
