#pragma once

#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "qbounds/doubling.hpp"
#include "qbounds/models.hpp"
#include "qbounds/sigma.hpp"
#include "qbounds/theta.hpp"

namespace qbounds {

using Json = nlohmann::ordered_json;

/// Rounds to nine significant digits so emitted reports are byte-stable.
double quantize(double v);

Json sigma_json(const SigmaExpression& expr);
Json verdict_json(const FamilyVerdict& v);
Json graph_json(const ExclusivityGraph& g, bool with_invariants);
Json theta_json(const ThetaResult& r);

struct BoundsReport {
  int n = 0;
  std::optional<LocalBound> local;
  std::optional<HybridBound> hybrid;
  std::optional<AnglesResult> quantum;       // best S_n found
  std::optional<double> quantum_sigma;       // via Sigma = S/2 + 2^{n-1}
  std::optional<ThetaResult> theta;          // on the Sigma_n support graph
  std::optional<double> ns_sigma;
  bool ns_nonsignaling = false;

  // closed forms the computed values are compared against
  double hybrid_closed_form = 0.0;       // 3 * 2^{n-2}
  double quantum_closed_form = 0.0;      // (2 + sqrt 2) * 2^{n-2}
  double quantum_s_closed_form = 0.0;    // sqrt 2 * 2^{n-1}
  double nonsignaling_closed_form = 0.0; // 2^n

  bool complete = true;   // false when parts were skipped
  bool all_match = true;  // every computed value within its tolerance
};

/// skip may contain "quantum", "hybrid", "ns", "theta".
BoundsReport compute_bounds(int n, const std::set<std::string>& skip = {},
                            double theta_tol = 1e-5);

Json bounds_json(const BoundsReport& r);
std::string bounds_csv(const BoundsReport& r);

/// Consolidated document: bounds, theta, and family verification against the
/// closed forms.
Json full_report_json(int n, const std::set<std::string>& skip, int jobs);

}  // namespace qbounds
