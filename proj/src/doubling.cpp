#include "qbounds/doubling.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "qbounds/parallel.hpp"

namespace qbounds {

namespace {

// Doubled contexts are packed with Stockholm settings in bits [0,n) and
// Vienna settings in bits [n,2n).
uint32_t flip_first_parties(uint32_t context, int n) {
  return context ^ (1u | (1u << n));
}

// Sign-class parity of a doubled context: 1 iff exactly one city's context
// carries sign -1.
int tau_of(const SigmaExpression& sigma, uint32_t context, int n) {
  const uint32_t half = (1u << n) - 1u;
  return int(sigma.context_negative(context & half)) ^
         int(sigma.context_negative((context >> n) & half));
}

// Spreads 2(n-1) tail bits into party positions 2..n of both cities.
uint32_t splice_tail(uint32_t tail, int n) {
  const uint32_t low = tail & ((1u << (n - 1)) - 1u);
  const uint32_t high = tail >> (n - 1);
  return (low << 1) | (high << (n + 1));
}

// The set identified by (representative context, first-party outcome XOR).
// Events on a context are the family events whose b_1 xor b'_1 equals the
// set's XOR value there; the ancillary outcome for each matching A_ij is the
// complement of that value.
ExclusiveSet make_set(const SigmaExpression& sigma, uint32_t c1, int s1) {
  const int n = sigma.n();
  const Scenario sc = doubled_scenario(n);
  const uint32_t c2 = flip_first_parties(c1, n);
  const int t1 = tau_of(sigma, c1, n);
  const int t2 = tau_of(sigma, c2, n);
  const int s2 = s1 ^ t1 ^ t2 ^ 1;

  ExclusiveSet out{.product_events = {},
                   .ancillary = Event::ancillary(
                       sc, {{MeasurementId::derived(0, 0), 0},
                            {MeasurementId::derived(1, 1), 0}})};
  out.product_events.reserve(size_t(2) << (2 * n - 2));

  auto emit_block = [&](uint32_t ctx, int s, int tau) {
    const int tail_parity = tau ^ s;
    const uint32_t tails = 1u << (2 * n - 2);
    for (uint32_t tail = 0; tail < tails; ++tail) {
      if ((std::popcount(tail) & 1) != tail_parity) continue;
      const uint32_t spliced = splice_tail(tail, n);
      // first-party outcomes (b_1, b'_1) with XOR s
      out.product_events.push_back(
          Event::product(sc, ctx, spliced | (uint32_t(s) << n)));
      out.product_events.push_back(
          Event::product(sc, ctx, spliced | 1u | (uint32_t(s ^ 1) << n)));
    }
  };
  emit_block(c1, s1, t1);
  emit_block(c2, s2, t2);
  std::sort(out.product_events.begin(), out.product_events.end());

  const int i1 = 0, j1 = int((c1 >> n) & 1u);  // c1 is the x_1 = 0 representative
  out.ancillary = Event::ancillary(
      sc, {{MeasurementId::derived(i1, j1), s1 ^ 1},
           {MeasurementId::derived(i1 ^ 1, j1 ^ 1), s2 ^ 1}});
  return out;
}

SetFamily direct_family(int n) {
  const SigmaExpression sigma = build_sigma(n);
  SetFamily family{n, {}};
  family.sets.reserve(size_t(1) << (2 * n));
  for (uint32_t c1 = 0; c1 < (1u << (2 * n)); ++c1) {
    if (c1 & 1u) continue;  // representative has x_1 = 0
    for (int s1 = 0; s1 < 2; ++s1) family.sets.push_back(make_set(sigma, c1, s1));
  }
  return family;
}

uint64_t packed_product(const Event& e) {
  return (uint64_t(e.settings_bits()) << 32) | e.outcomes_bits();
}

}  // namespace

SetFamily base_family_n2() { return direct_family(2); }

SetFamily lift(const SetFamily& f) {
  const SigmaExpression sigma_n = build_sigma(f.n);
  const FamilyVerdict verdict = verify_family(f, sigma_n);
  if (!verdict.all_passed())
    throw std::invalid_argument("lift: input family fails verification: " +
                                verdict.failure_detail);

  const int n = f.n, m = n + 1;
  const SigmaExpression sigma_m = build_sigma(m);
  const uint32_t half = (1u << n) - 1u;
  SetFamily out{m, {}};
  out.sets.reserve(f.sets.size() * 4);
  for (const auto& parent : f.sets) {
    // Recover the parent's representative context and XOR value.
    uint32_t c1 = 0;
    int s1 = 0;
    for (const auto& e : parent.product_events) {
      if ((e.settings_bits() & 1u) != 0) continue;
      c1 = e.settings_bits();
      s1 = int((e.outcomes_bits() ^ (e.outcomes_bits() >> n)) & 1u);
      break;
    }
    const uint32_t xs = c1 & half, xv = (c1 >> n) & half;
    for (uint32_t y = 0; y < 2; ++y) {
      for (uint32_t yp = 0; yp < 2; ++yp) {
        const uint32_t child_c1 = (xs | (y << n)) | ((xv | (yp << n)) << (m));
        out.sets.push_back(make_set(sigma_m, child_c1, s1));
      }
    }
  }
  std::sort(out.sets.begin(), out.sets.end(),
            [](const ExclusiveSet& a, const ExclusiveSet& b) {
              return a.product_events.front() < b.product_events.front();
            });
  return out;
}

SetFamily build_family(int n) {
  if (n < 2) throw std::invalid_argument("build_family requires n >= 2");
  SetFamily f = base_family_n2();
  while (f.n < n) f = lift(f);
  return f;
}

FamilyVerdict verify_family(const SetFamily& f, const SigmaExpression& sigma, int jobs) {
  if (sigma.n() != f.n) throw std::invalid_argument("sigma expression has wrong n");
  const int n = f.n;
  const uint32_t mask = (1u << (2 * n)) - 1u;
  FamilyVerdict v;
  v.n = n;
  v.sets = static_cast<long long>(f.sets.size());
  v.expected_events = (1ll << (2 * n)) * (1ll << (2 * n)) / 2;

  v.set_count_ok = (v.sets == (1ll << (2 * n)));
  if (!v.set_count_ok) v.failure_detail = "set_count";

  // (b) sizes
  const long long per_set = 2ll << (2 * n - 2);
  v.set_sizes_ok = true;
  for (const auto& s : f.sets) {
    v.product_events += static_cast<long long>(s.product_events.size());
    if (static_cast<long long>(s.product_events.size()) != per_set ||
        !s.ancillary.is_ancillary())
      v.set_sizes_ok = false;
  }
  if (!v.set_sizes_ok && v.failure_detail.empty()) v.failure_detail = "set_sizes";

  // (c) pairwise exclusivity inside every set, parallel over sets
  std::atomic<bool> exclusive_ok{true};
  parallel_chunks(f.sets.size(), jobs, [&](size_t lo, size_t hi, int) {
    std::vector<uint32_t> ss, oo;
    for (size_t k = lo; k < hi && exclusive_ok.load(std::memory_order_relaxed); ++k) {
      const auto& set = f.sets[k];
      const size_t cnt = set.product_events.size();
      ss.resize(cnt);
      oo.resize(cnt);
      for (size_t i = 0; i < cnt; ++i) {
        ss[i] = set.product_events[i].settings_bits();
        oo[i] = set.product_events[i].outcomes_bits();
      }
      bool ok = true;
      for (size_t i = 0; i < cnt && ok; ++i)
        for (size_t j = i + 1; j < cnt; ++j)
          if (!product_exclusive_bits(ss[i], oo[i], ss[j], oo[j], mask)) {
            ok = false;
            break;
          }
      if (ok && set.ancillary.is_ancillary()) {
        const bool diag = set.ancillary.pair_is_diagonal();
        const auto asg = set.ancillary.assignments();
        const int lo_out = asg.begin()->second;
        const int hi_out = std::next(asg.begin())->second;
        for (size_t i = 0; i < cnt && ok; ++i)
          if (!ancillary_excludes_bits(ss[i], oo[i], n, diag, lo_out, hi_out))
            ok = false;
      }
      if (!ok) exclusive_ok.store(false, std::memory_order_relaxed);
    }
  });
  v.pairwise_exclusive_ok = exclusive_ok.load();
  if (!v.pairwise_exclusive_ok && v.failure_detail.empty())
    v.failure_detail = "pairwise_exclusivity";

  // (d) + (e): disjointness and exact coverage of the two event classes
  std::unordered_set<uint64_t> seen;
  seen.reserve(static_cast<size_t>(v.expected_events) * 2);
  bool disjoint = true, classes = true;
  const uint32_t half = (1u << n) - 1u;
  for (const auto& s : f.sets) {
    for (const auto& e : s.product_events) {
      if (!e.is_product() || e.scenario() != doubled_scenario(n)) {
        classes = false;
        continue;
      }
      if (!seen.insert(packed_product(e)).second) disjoint = false;
      const uint32_t xs = e.settings_bits() & half;
      const uint32_t xv = (e.settings_bits() >> n) & half;
      const uint32_t bs = e.outcomes_bits() & half;
      const uint32_t bv = (e.outcomes_bits() >> n) & half;
      if (sigma.in_support(xs, bs) != sigma.in_support(xv, bv)) classes = false;
    }
  }
  v.distinct_events = static_cast<long long>(seen.size());
  v.disjoint_ok = disjoint;
  v.coverage_ok = classes && disjoint && (v.distinct_events == v.expected_events) &&
                  (v.product_events == v.expected_events);
  if (!v.disjoint_ok && v.failure_detail.empty()) v.failure_detail = "disjointness";
  if (!v.coverage_ok && v.failure_detail.empty()) v.failure_detail = "coverage";

  // (f) ancillary multiplicities: equal within each measurement pair, with
  // the two pair totals summing to 4^{n-1} once each normalization sum is 1.
  std::unordered_map<uint64_t, long long> anc_counts;
  for (const auto& s : f.sets)
    if (s.ancillary.is_ancillary()) ++anc_counts[s.ancillary.key()];
  long long mu_diag = -1, mu_anti = -1;
  bool anc_ok = true;
  for (int diag = 0; diag < 2 && anc_ok; ++diag) {
    long long mu = -1;
    for (int lo = 0; lo < 2; ++lo)
      for (int hi = 0; hi < 2; ++hi) {
        const Event e = Event::ancillary(
            doubled_scenario(n),
            diag ? std::vector<std::pair<MeasurementId, int>>{
                       {MeasurementId::derived(0, 0), lo},
                       {MeasurementId::derived(1, 1), hi}}
                 : std::vector<std::pair<MeasurementId, int>>{
                       {MeasurementId::derived(0, 1), lo},
                       {MeasurementId::derived(1, 0), hi}});
        const auto it = anc_counts.find(e.key());
        const long long c = (it == anc_counts.end()) ? 0 : it->second;
        if (mu < 0)
          mu = c;
        else if (mu != c)
          anc_ok = false;
      }
    (diag ? mu_diag : mu_anti) = mu;
  }
  v.multiplicity_diagonal = mu_diag;
  v.multiplicity_antidiagonal = mu_anti;
  v.ancillary_mass = (mu_diag > 0 && mu_anti > 0) ? mu_diag + mu_anti : 0;
  v.ancillary_ok = anc_ok && mu_diag > 0 && mu_anti > 0 &&
                   (v.ancillary_mass == (1ll << (2 * (n - 1))));
  if (!v.ancillary_ok && v.failure_detail.empty()) v.failure_detail = "ancillary_mass";

  if (v.all_passed()) v.derived_bound = derive_bound(n);
  return v;
}

double derive_bound(int n) {
  if (n < 2) throw std::invalid_argument("derive_bound requires n >= 2");
  // larger root of 2 s^2 - 2^{n+1} s + 4^{n-1} = 0
  const double b = std::ldexp(1.0, n + 1);
  const double c = std::ldexp(1.0, 2 * (n - 1));
  const double disc = b * b - 8.0 * c;
  return (b + std::sqrt(disc)) / 4.0;
}

DoubledDistribution::DoubledDistribution(int n) : n_(n) {
  if (n < 2 || n > 5)
    throw std::invalid_argument("doubled distribution requires 2 <= n <= 5");
  table_.assign(size_t(1) << (4 * n), 0.0);
}

DoubledDistribution product_distribution(const Distribution& ps, const Distribution& pv) {
  if (ps.n() != pv.n()) throw std::invalid_argument("copies must share n");
  ps.validate();
  pv.validate();
  const int n = ps.n();
  DoubledDistribution d(n);
  for (uint32_t xs = 0; xs < ps.contexts(); ++xs)
    for (uint32_t xv = 0; xv < pv.contexts(); ++xv)
      for (uint32_t bs = 0; bs < ps.contexts(); ++bs)
        for (uint32_t bv = 0; bv < pv.contexts(); ++bv)
          d.at(xs | (xv << n), bs | (bv << n)) = ps.at(xs, bs) * pv.at(xv, bv);
  return d;
}

ClassMasses doubled_class_masses(const DoubledDistribution& d, const SigmaExpression& sigma) {
  if (d.n() != sigma.n()) throw std::invalid_argument("sigma expression has wrong n");
  const int n = d.n();
  const uint32_t half = (1u << n) - 1u;
  ClassMasses m;
  for (uint32_t x = 0; x < d.contexts(); ++x)
    for (uint32_t b = 0; b < d.contexts(); ++b) {
      const bool in_s = sigma.in_support(x & half, b & half);
      const bool in_v = sigma.in_support((x >> n) & half, (b >> n) & half);
      if (in_s && in_v)
        m.in_in += d.at(x, b);
      else if (!in_s && !in_v)
        m.out_out += d.at(x, b);
    }
  return m;
}

std::vector<Event> compatible_ancillaries(const ExclusiveSet& s) {
  if (s.product_events.empty()) return {};
  const Scenario sc = s.product_events.front().scenario();
  std::vector<Event> found;
  for (int diag = 0; diag < 2; ++diag)
    for (int lo = 0; lo < 2; ++lo)
      for (int hi = 0; hi < 2; ++hi) {
        const Event cand = Event::ancillary(
            sc, diag ? std::vector<std::pair<MeasurementId, int>>{
                           {MeasurementId::derived(0, 0), lo},
                           {MeasurementId::derived(1, 1), hi}}
                     : std::vector<std::pair<MeasurementId, int>>{
                           {MeasurementId::derived(0, 1), lo},
                           {MeasurementId::derived(1, 0), hi}});
        bool ok = true;
        for (const auto& e : s.product_events)
          if (!exclusive(cand, e)) {
            ok = false;
            break;
          }
        if (ok) found.push_back(cand);
      }
  return found;
}

}  // namespace qbounds
