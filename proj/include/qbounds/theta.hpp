#pragma once

#include <string>

#include "qbounds/graph.hpp"

namespace qbounds {

struct ThetaResult {
  double value = 0.0;   // midpoint of the certified bracket
  double lower = 0.0;   // objective of a rounded feasible primal matrix
  double upper = 0.0;   // dual objective after a PSD-restoring shift
  double primal_feasibility = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string method;
};

/// Lovasz number of G: the optimum of max <J,X> over PSD X with unit trace
/// and X_uv = 0 on every edge. Dense primal-dual interior point up to 128
/// vertices, alternating projections beyond.
ThetaResult lovasz_theta(const ExclusivityGraph& g, double tol = 1e-8);

ThetaResult lovasz_theta_ipm(const ExclusivityGraph& g, double tol = 1e-8);

/// Independent cross-check: bisection on the objective level with
/// alternating projections between the PSD cone and the affine constraint
/// slice. Accuracy is limited by the iteration budget; intended for loose
/// tolerances and instances too large for the interior-point path.
ThetaResult lovasz_theta_projection(const ExclusivityGraph& g, double tol = 1e-4);

struct ProductIdentityReport {
  double theta = 0.0;
  double theta_complement = 0.0;
  double ratio = 0.0;  // theta * theta_complement / |V|
  bool within_tolerance = false;
};

/// Checks theta(G) * theta(complement G) = |V| for a vertex-transitive G.
ProductIdentityReport product_identity_check(const ExclusivityGraph& g, double tol = 1e-3);

}  // namespace qbounds
