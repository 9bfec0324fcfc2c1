#include "qbounds/sigma.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qbounds {

std::vector<CorrelatorTerm> build_sn(int n) {
  if (n < 2) throw std::invalid_argument("build_sn requires n >= 2");
  std::vector<CorrelatorTerm> terms = {
      {0b00u, +1}, {0b10u, +1}, {0b01u, +1}, {0b11u, -1}};
  for (int k = 3; k <= n; ++k) {
    const uint32_t prev_mask = (1u << (k - 1)) - 1u;
    std::vector<CorrelatorTerm> next;
    next.reserve(terms.size() * 2);
    for (const auto& t : terms)  // <S_{k-1} x_1>
      next.push_back({t.context | (1u << (k - 1)), t.sign});
    for (const auto& t : terms)  // <S-bar_{k-1} x_0>
      next.push_back({t.context ^ prev_mask, t.sign});
    terms = std::move(next);
  }
  std::sort(terms.begin(), terms.end(),
            [](const CorrelatorTerm& a, const CorrelatorTerm& b) {
              return a.context < b.context;
            });
  return terms;
}

Distribution::Distribution(int n) : n_(n) {
  if (n < 2 || n > 15) throw std::invalid_argument("distribution requires 2 <= n <= 15");
  table_.assign(size_t(1) << (2 * n), 0.0);
}

Distribution Distribution::uniform(int n) {
  Distribution d(n);
  const double v = std::ldexp(1.0, -n);
  std::fill(d.table_.begin(), d.table_.end(), v);
  return d;
}

void Distribution::validate(double tol) const {
  for (uint32_t x = 0; x < contexts(); ++x) {
    double sum = 0.0;
    for (uint32_t b = 0; b < contexts(); ++b) {
      const double v = at(x, b);
      if (v < -tol) throw std::invalid_argument("negative probability entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("context probabilities do not sum to 1");
  }
}

SigmaExpression build_sigma(int n) {
  SigmaExpression expr;
  expr.n_ = n;
  expr.terms_ = build_sn(n);
  expr.negative_.assign(size_t(1) << n, 0);
  for (const auto& t : expr.terms_)
    expr.negative_[t.context] = t.sign < 0 ? 1 : 0;
  const Scenario sc = single_scenario(n);
  expr.support_.reserve(size_t(1) << (2 * n - 1));
  for (uint32_t x = 0; x < (1u << n); ++x)
    for (uint32_t b = 0; b < (1u << n); ++b)
      if (expr.in_support(x, b)) expr.support_.push_back(Event::product(sc, x, b));
  return expr;
}

double evaluate_sigma(const SigmaExpression& expr, const Distribution& p) {
  if (p.n() != expr.n()) throw std::invalid_argument("distribution size mismatch");
  p.validate();
  double total = 0.0;
  for (uint32_t x = 0; x < p.contexts(); ++x)
    for (uint32_t b = 0; b < p.contexts(); ++b)
      if (expr.in_support(x, b)) total += p.at(x, b);
  return total;
}

double evaluate_sn(const std::vector<CorrelatorTerm>& terms, const Distribution& p) {
  p.validate();
  double total = 0.0;
  for (const auto& t : terms) {
    double corr = 0.0;
    for (uint32_t b = 0; b < p.contexts(); ++b)
      corr += (std::popcount(b) & 1) ? -p.at(t.context, b) : p.at(t.context, b);
    total += t.sign * corr;
  }
  return total;
}

double evaluate_sn(const SigmaExpression& expr, const Distribution& p) {
  if (p.n() != expr.n()) throw std::invalid_argument("distribution size mismatch");
  return evaluate_sn(expr.terms(), p);
}

}  // namespace qbounds
