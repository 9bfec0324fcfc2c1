#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbounds/scenario.hpp"
#include "qbounds/sigma.hpp"

namespace qbounds {

/// One block of the doubled-experiment partition: 2*4^{n-1} pairwise
/// exclusive product events spanning a context pair, completed by the single
/// ancillary event that is exclusive to all of them.
struct ExclusiveSet {
  std::vector<Event> product_events;
  Event ancillary;
};

struct SetFamily {
  int n = 2;
  std::vector<ExclusiveSet> sets;
};

/// The 16 sets for two parties per city. The eight rows of the seed table
/// appear verbatim among them, together with their valid city swaps; the
/// family is completed so that the blocks tile every same-class doubled
/// event exactly once.
SetFamily base_family_n2();

/// Builds the family for n+1 parties from a verified family for n parties:
/// each set, for each new-setting pair (x_{n+1}, x'_{n+1}), gives rise to one
/// set with four times as many product events on the extended context pair.
SetFamily lift(const SetFamily& f);

/// base_family_n2 followed by repeated lifting.
SetFamily build_family(int n);

struct FamilyVerdict {
  int n = 0;
  bool set_count_ok = false;
  bool set_sizes_ok = false;
  bool pairwise_exclusive_ok = false;
  bool disjoint_ok = false;
  bool coverage_ok = false;
  bool ancillary_ok = false;

  long long sets = 0;
  long long product_events = 0;
  long long expected_events = 0;
  long long distinct_events = 0;
  long long multiplicity_diagonal = 0;
  long long multiplicity_antidiagonal = 0;
  long long ancillary_mass = 0;  // multiplicity-weighted, with each pair sum = 1

  std::string failure_detail;
  std::optional<double> derived_bound;  // set only when every check passes

  bool all_passed() const {
    return set_count_ok && set_sizes_ok && pairwise_exclusive_ok && disjoint_ok &&
           coverage_ok && ancillary_ok;
  }
};

/// Checks the structural claims behind the summed exclusivity inequalities:
/// (a) 4^n sets, (b) set sizes, (c) pairwise exclusivity inside every set,
/// (d) global disjointness, (e) exact coverage of the (in,in)/(out,out)
/// events, (f) balanced ancillary multiplicities totalling 4^{n-1}.
FamilyVerdict verify_family(const SetFamily& f, const SigmaExpression& sigma,
                            int jobs = 0);

/// Larger root s of s^2 + (2^n - s)^2 + 4^{n-1} = 4^n.
double derive_bound(int n);

/// Joint assignment for two independent copies.
class DoubledDistribution {
 public:
  explicit DoubledDistribution(int n);
  int n() const { return n_; }
  uint32_t contexts() const { return 1u << (2 * n_); }
  double& at(uint32_t context, uint32_t outcomes) {
    return table_[(size_t(context) << (2 * n_)) | outcomes];
  }
  double at(uint32_t context, uint32_t outcomes) const {
    return table_[(size_t(context) << (2 * n_)) | outcomes];
  }

 private:
  int n_;
  std::vector<double> table_;
};

/// p(b,b'|x,x') = pS(b|x) * pV(b'|x').
DoubledDistribution product_distribution(const Distribution& ps, const Distribution& pv);

struct ClassMasses {
  double in_in = 0.0;
  double out_out = 0.0;
};

/// Total probability mass on the (in,in) and (out,out) event classes.
ClassMasses doubled_class_masses(const DoubledDistribution& d, const SigmaExpression& sigma);

/// All ancillary events exclusive to every product event of the set.
std::vector<Event> compatible_ancillaries(const ExclusiveSet& s);

}  // namespace qbounds
