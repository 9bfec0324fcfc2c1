#include "qbounds/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qbounds {

namespace {

std::vector<uint8_t> sign_table(int n) {
  const auto terms = build_sn(n);
  std::vector<uint8_t> neg(size_t(1) << n, 0);
  for (const auto& t : terms) neg[t.context] = t.sign < 0 ? 1 : 0;
  return neg;
}

}  // namespace

LocalBound local_bound(int n) {
  if (n < 2 || n > 8) throw std::invalid_argument("local_bound requires 2 <= n <= 8");
  const auto neg = sign_table(n);
  const uint32_t contexts = 1u << n;
  LocalBound best;
  best.sigma = -1;
  for (uint64_t code = 0; code < (1ull << (2 * n)); ++code) {
    long long hits = 0;
    for (uint32_t x = 0; x < contexts; ++x) {
      int parity = 0;
      for (int i = 0; i < n; ++i)
        parity ^= int(code >> (2 * i + ((x >> i) & 1u))) & 1;
      hits += (parity == neg[x]);
    }
    if (hits > best.sigma) {
      best.sigma = hits;
      best.strategy.assign(n, {0, 0});
      for (int i = 0; i < n; ++i)
        best.strategy[i] = {int(code >> (2 * i)) & 1, int(code >> (2 * i + 1)) & 1};
    }
  }
  best.s = 2.0 * double(best.sigma) - std::ldexp(1.0, n);
  return best;
}

HybridBound hybrid_bound(int n) {
  if (n < 2 || n > 8) throw std::invalid_argument("hybrid_bound requires 2 <= n <= 8");
  const auto neg = sign_table(n);
  const uint32_t contexts = 1u << n;
  HybridBound best;
  best.sigma = -1;

  // Bipartitions enumerated once each: the group containing party 1 is the
  // complement, so masks without bit 0 cover every split.
  for (uint32_t group = 1; group < contexts; ++group) {
    if (group & 1u) continue;
    const uint32_t rest = (contexts - 1u) & ~group;
    const uint32_t small = (std::popcount(group) <= std::popcount(rest)) ? group : rest;
    const int k = std::popcount(small);
    if (k > 4) continue;  // complementary mask already enumerated

    // joint-setting index of the small group inside a full context
    std::vector<int> small_bits;
    for (int i = 0; i < n; ++i)
      if ((small >> i) & 1u) small_bits.push_back(i);
    auto small_index = [&](uint32_t x) {
      uint32_t idx = 0;
      for (int b = 0; b < k; ++b) idx |= ((x >> small_bits[b]) & 1u) << b;
      return idx;
    };

    const uint32_t small_settings = 1u << k;
    const uint64_t functions = 1ull << small_settings;  // parity strategies of the group
    for (uint64_t fn = 0; fn < functions; ++fn) {
      // Best response of the other group: for each of its joint settings,
      // pick the output parity winning more contexts. Valid because the
      // objective splits into independent per-setting sums.
      long long total = 0;
      const uint32_t rest_count = contexts >> k;
      for (uint32_t xr = 0; xr < rest_count; ++xr) {
        // assemble full contexts with the rest-group settings fixed
        int wins[2] = {0, 0};
        for (uint32_t xs = 0; xs < small_settings; ++xs) {
          uint32_t x = 0;
          int sb = 0, rb = 0;
          for (int i = 0; i < n; ++i) {
            if ((small >> i) & 1u)
              x |= ((xs >> sb++) & 1u) << i;
            else
              x |= ((xr >> rb++) & 1u) << i;
          }
          const int gp = int(fn >> small_index(x)) & 1;
          ++wins[gp ^ neg[x]];
        }
        total += std::max(wins[0], wins[1]);
      }
      if (total > best.sigma) {
        best.sigma = total;
        best.group_mask = small;
        best.group_strategy.assign(small_settings, 0);
        for (uint32_t xs = 0; xs < small_settings; ++xs)
          best.group_strategy[xs] = uint8_t((fn >> xs) & 1u);
      }
    }
  }
  best.s = 2.0 * double(best.sigma) - std::ldexp(1.0, n);
  return best;
}

Distribution ns_box(int n) {
  const auto neg = sign_table(n);
  Distribution d(n);
  const double v = std::ldexp(1.0, 1 - n);
  for (uint32_t x = 0; x < d.contexts(); ++x)
    for (uint32_t b = 0; b < d.contexts(); ++b)
      if ((std::popcount(b) & 1) == neg[x]) d.at(x, b) = v;
  d.validate();
  return d;
}

bool check_nonsignaling(const Distribution& p, double tol) {
  p.validate(std::max(tol, 1e-12));
  const int n = p.n();
  const uint32_t contexts = p.contexts();
  for (uint32_t subset = 1; subset + 1 < contexts; ++subset) {
    const int k = std::popcount(subset);
    std::vector<int> bits;
    for (int i = 0; i < n; ++i)
      if ((subset >> i) & 1u) bits.push_back(i);
    auto compress = [&](uint32_t full) {
      uint32_t idx = 0;
      for (int b = 0; b < k; ++b) idx |= ((full >> bits[b]) & 1u) << b;
      return idx;
    };
    // baseline marginal per subset-setting, compared across the rest
    std::vector<double> baseline((size_t(1) << k) << k, -1.0);
    std::vector<char> seen(size_t(1) << k, 0);
    for (uint32_t x = 0; x < contexts; ++x) {
      const uint32_t xs = compress(x);
      std::vector<double> marginal(size_t(1) << k, 0.0);
      for (uint32_t b = 0; b < contexts; ++b) marginal[compress(b)] += p.at(x, b);
      if (!seen[xs]) {
        seen[xs] = 1;
        for (uint32_t bs = 0; bs < (1u << k); ++bs)
          baseline[(size_t(xs) << k) | bs] = marginal[bs];
      } else {
        for (uint32_t bs = 0; bs < (1u << k); ++bs)
          if (std::abs(marginal[bs] - baseline[(size_t(xs) << k) | bs]) > tol)
            return false;
      }
    }
  }
  return true;
}

double ghz_correlator(int n, std::span<const double> angles) {
  if (n < 2 || n > 12) throw std::invalid_argument("ghz_correlator requires 2 <= n <= 12");
  if (static_cast<int>(angles.size()) != n)
    throw std::invalid_argument("one angle per party");
  using cd = std::complex<double>;
  const size_t dim = size_t(1) << n;
  std::vector<cd> ghz(dim, cd(0.0, 0.0));
  const double isqrt2 = 1.0 / std::sqrt(2.0);
  ghz[0] = ghz[dim - 1] = isqrt2;

  // apply the product of single-qubit operators [[0, e^{-it}], [e^{it}, 0]]
  std::vector<cd> phi = ghz;
  for (int q = 0; q < n; ++q) {
    const cd lower(std::cos(angles[q]), std::sin(angles[q]));
    const cd upper = std::conj(lower);
    const size_t bit = size_t(1) << q;
    for (size_t idx = 0; idx < dim; ++idx) {
      if (idx & bit) continue;
      const cd a0 = phi[idx], a1 = phi[idx | bit];
      phi[idx] = upper * a1;
      phi[idx | bit] = lower * a0;
    }
  }
  cd value(0.0, 0.0);
  for (size_t idx = 0; idx < dim; ++idx) value += std::conj(ghz[idx]) * phi[idx];
  return value.real();
}

double sn_of_angles(int n, const std::vector<std::array<double, 2>>& angles) {
  if (static_cast<int>(angles.size()) != n)
    throw std::invalid_argument("one angle pair per party");
  const auto neg = sign_table(n);
  double total = 0.0;
  for (uint32_t x = 0; x < (1u << n); ++x) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += angles[i][(x >> i) & 1u];
    total += (neg[x] ? -1.0 : 1.0) * std::cos(sum);
  }
  return total;
}

namespace {

// One full sweep of exact single-angle maximisations. The objective as a
// function of one angle is C cos t - D sin t, maximised at t = atan2(-D, C).
double coordinate_ascent(int n, const std::vector<uint8_t>& neg,
                         std::vector<std::array<double, 2>>& angles) {
  const uint32_t contexts = 1u << n;
  for (int sweep = 0; sweep < 500; ++sweep) {
    double shift = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int setting = 0; setting < 2; ++setting) {
        double c = 0.0, d = 0.0;
        for (uint32_t x = 0; x < contexts; ++x) {
          if (int((x >> i) & 1u) != setting) continue;
          double rest = 0.0;
          for (int j = 0; j < n; ++j)
            if (j != i) rest += angles[j][(x >> j) & 1u];
          const double s = neg[x] ? -1.0 : 1.0;
          c += s * std::cos(rest);
          d += s * std::sin(rest);
        }
        const double updated = std::atan2(-d, c);
        shift = std::max(shift, std::abs(updated - angles[i][setting]));
        angles[i][setting] = updated;
      }
    }
    if (shift < 1e-10) break;
  }
  return sn_of_angles(n, angles);
}

}  // namespace

AnglesResult optimize_sn_angles(int n) {
  if (n < 2 || n > 10) throw std::invalid_argument("optimize_sn_angles requires 2 <= n <= 10");
  const auto neg = sign_table(n);
  AnglesResult best;
  best.s_value = -1e300;

  auto consider = [&](std::vector<std::array<double, 2>> start) {
    const double value = coordinate_ascent(n, neg, start);
    if (value > best.s_value + 1e-12) {
      best.s_value = value;
      best.angles = std::move(start);
    }
  };

  const double step = std::numbers::pi / 8.0;
  // coarse grid over a per-party-identical angle pair
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      consider(std::vector<std::array<double, 2>>(n, {a * step, b * step}));
  // full grid for the two-party case
  if (n == 2) {
    for (int a0 = 0; a0 < 16; ++a0)
      for (int a1 = 0; a1 < 16; ++a1)
        for (int b0 = 0; b0 < 16; ++b0)
          for (int b1 = 0; b1 < 16; ++b1)
            consider({{a0 * step, a1 * step}, {b0 * step, b1 * step}});
  }
  // seeded random restarts
  std::mt19937_64 rng(0x51e7b0a7dull);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
  for (int restart = 0; restart < 96; ++restart) {
    std::vector<std::array<double, 2>> start(n);
    for (auto& pair : start) pair = {unif(rng), unif(rng)};
    consider(std::move(start));
  }

  for (auto& pair : best.angles)
    for (double& a : pair) {
      a = std::fmod(a, 2.0 * std::numbers::pi);
      if (a < 0) a += 2.0 * std::numbers::pi;
    }
  best.s_value = sn_of_angles(n, best.angles);
  return best;
}

}  // namespace qbounds
