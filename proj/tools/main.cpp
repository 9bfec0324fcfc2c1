// qbounds: workbench for the bounds of genuine n-body nonlocality.
//
// Exit codes: 0 success, 1 verification failure or closed-form mismatch,
// 2 usage error, 3 resource-limit refusal.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "qbounds/doubling.hpp"
#include "qbounds/graph.hpp"
#include "qbounds/models.hpp"
#include "qbounds/report.hpp"
#include "qbounds/sigma.hpp"
#include "qbounds/theta.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::set<std::string> parse_skip(const std::string& list) {
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

int cmd_scenario(int n, const std::string& emit) {
  const auto expr = qbounds::build_sigma(n);
  write_output(qbounds::sigma_json(expr).dump(2), emit);
  return kExitOk;
}

int cmd_verify_doubling(int n, const std::string& emit, bool force, int jobs) {
  if (n >= 6 && !force) {
    const double events = std::ldexp(1.0, 4 * n - 1);
    std::cerr << "refusing n >= 6 without --force: about " << events
              << " product events (~" << events * 24.0 / (1 << 20)
              << " MiB of event storage)\n";
    return kExitResource;
  }
  const auto expr = qbounds::build_sigma(n);
  const auto family = qbounds::build_family(n);
  const auto verdict = qbounds::verify_family(family, expr, jobs);
  write_output(qbounds::verdict_json(verdict).dump(2), emit);

  if (!verdict.all_passed()) return kExitMismatch;
  const double closed = (2.0 + std::sqrt(2.0)) * std::ldexp(1.0, n - 2);
  if (!verdict.derived_bound || std::abs(*verdict.derived_bound - closed) > 1e-9)
    return kExitMismatch;
  return kExitOk;
}

int cmd_graph_build(int n, const std::string& format, const std::string& emit) {
  const auto g = qbounds::sigma_support_graph(n);
  if (format == "dot") {
    write_output(qbounds::to_dot(g), emit);
  } else {
    write_output(qbounds::graph_json(g, /*with_invariants=*/true).dump(2), emit);
  }
  return kExitOk;
}

int cmd_graph_theta(const std::string& input, double tol, const std::string& emit) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open graph file: " + input);
  nlohmann::json doc = nlohmann::json::parse(in);
  std::vector<std::string> labels;
  for (const auto& v : doc.at("vertices")) labels.push_back(v.get<std::string>());
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : doc.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  const auto g = qbounds::ExclusivityGraph::from_edges(std::move(labels), edges);
  const auto res = qbounds::lovasz_theta(g, tol);
  write_output(qbounds::theta_json(res).dump(2), emit);
  return res.converged ? kExitOk : kExitMismatch;
}

int cmd_bounds(int n, const std::string& skip, const std::string& format,
               const std::string& emit, double tol) {
  const auto report = qbounds::compute_bounds(n, parse_skip(skip), tol);
  if (format == "csv") {
    write_output(qbounds::bounds_csv(report), emit);
  } else {
    write_output(qbounds::bounds_json(report).dump(2), emit);
  }
  return report.all_match ? kExitOk : kExitMismatch;
}

int cmd_report(int n, const std::string& skip, const std::string& emit, int jobs) {
  const auto doc = qbounds::full_report_json(n, parse_skip(skip), jobs);
  write_output(doc.dump(2), emit);
  return doc.at("all_match").get<bool>() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification workbench for n-body nonlocality bounds"};
  app.require_subcommand(1);

  int n = 2;
  double tol = 1e-5;
  int jobs = 0;
  bool force = false;
  std::string emit, format = "json", skip, input;

  auto* scenario = app.add_subcommand("scenario", "emit the Sigma_n expression");
  scenario->add_option("--n", n, "party count")->required()->check(CLI::Range(2, 8));
  scenario->add_option("--emit", emit, "output path (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "structural verification");
  auto* doubling = verify->add_subcommand("doubling", "verify the exclusive-set family");
  doubling->add_option("--n", n, "party count")->required()->check(CLI::Range(2, 6));
  doubling->add_option("--emit", emit, "output path");
  doubling->add_option("--jobs", jobs, "worker threads (0 = auto)");
  doubling->add_flag("--force", force, "allow n >= 6 despite the memory cost");
  verify->require_subcommand(1);

  auto* graph = app.add_subcommand("graph", "exclusivity-graph operations");
  auto* build = graph->add_subcommand("build", "build the Sigma_n support graph");
  build->add_option("--n", n, "party count")->required()->check(CLI::Range(2, 4));
  build->add_option("--format", format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  build->add_option("--emit", emit, "output path");
  auto* theta = graph->add_subcommand("theta", "Lovasz number of a graph");
  theta->add_option("--input", input, "graph JSON with vertices and edges")->required();
  theta->add_option("--tol", tol, "duality-gap tolerance")->check(CLI::Range(1e-8, 1.0));
  theta->add_option("--emit", emit, "output path");
  graph->require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "hybrid/quantum/nonsignaling bounds");
  bounds->add_option("--n", n, "party count")->required()->check(CLI::Range(2, 8));
  bounds->add_option("--skip", skip, "comma list: quantum,hybrid,ns,theta");
  bounds->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  bounds->add_option("--emit", emit, "output path");
  bounds->add_option("--tol", tol, "theta tolerance")->check(CLI::Range(1e-8, 1.0));

  auto* report = app.add_subcommand("report", "consolidated closed-form comparison");
  report->add_option("--n", n, "party count")->required()->check(CLI::Range(2, 8));
  report->add_option("--skip", skip, "comma list: quantum,hybrid,ns,theta,verify");
  report->add_option("--emit", emit, "output path");
  report->add_option("--jobs", jobs, "worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (scenario->parsed()) return cmd_scenario(n, emit);
    if (doubling->parsed()) return cmd_verify_doubling(n, emit, force, jobs);
    if (build->parsed()) return cmd_graph_build(n, format, emit);
    if (theta->parsed()) return cmd_graph_theta(input, tol, emit);
    if (bounds->parsed()) return cmd_bounds(n, skip, format, emit, tol);
    if (report->parsed()) return cmd_report(n, skip, emit, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
