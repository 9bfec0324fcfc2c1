#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qbounds/sigma.hpp"

namespace qbounds {

struct LocalBound {
  long long sigma = 0;  // maximal Sigma_n over products of local strategies
  double s = 0.0;       // the matching S_n value, 2*Sigma - 2^n
  std::vector<std::array<int, 2>> strategy;  // per party: outputs for settings 0,1
};

/// Exhaustive maximum over the 4^n products of per-party deterministic
/// strategies.
LocalBound local_bound(int n);

struct HybridBound {
  long long sigma = 0;
  double s = 0.0;
  uint32_t group_mask = 0;              // the enumerated (smaller) group
  std::vector<uint8_t> group_strategy;  // parity of the group's output per joint setting
};

/// Maximum of Sigma_n over models that allow arbitrary correlations inside
/// each block of a bipartition: the smaller block's parity strategies are
/// enumerated and the larger block best-responds per joint setting.
HybridBound hybrid_bound(int n);

/// The parity box: p(b|x) = 2^{1-n} on the Sigma_n parity class of each
/// context, zero elsewhere. Nonsignaling with Sigma_n value 2^n.
Distribution ns_box(int n);

/// True iff every marginal over every proper party subset is independent of
/// the remaining parties' settings.
bool check_nonsignaling(const Distribution& p, double tol = 1e-12);

/// <tensor_i (cos t_i X + sin t_i Y)> on the n-party GHZ state, by dense
/// statevector contraction.
double ghz_correlator(int n, std::span<const double> angles);

struct AnglesResult {
  std::vector<std::array<double, 2>> angles;  // per party: angle for settings 0,1
  double s_value = 0.0;
};

/// Maximises S_n over equatorial measurement angles on the GHZ state:
/// seeded multi-start plus exact coordinate-ascent sweeps.
AnglesResult optimize_sn_angles(int n);

/// S_n for a given equatorial angle assignment.
double sn_of_angles(int n, const std::vector<std::array<double, 2>>& angles);

}  // namespace qbounds
