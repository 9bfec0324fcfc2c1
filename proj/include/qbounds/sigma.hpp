#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "qbounds/scenario.hpp"

namespace qbounds {

/// One full-correlation term of S_n: a context (bit p-1 = party p's setting)
/// and a sign.
struct CorrelatorTerm {
  uint32_t context = 0;
  int sign = +1;
  friend bool operator==(const CorrelatorTerm&, const CorrelatorTerm&) = default;
};

/// Builds S_n by recursion from the CHSH base: the four n=2 terms carry sign
/// -1 only on context (1,1); each step appends a new last party, once with
/// setting 1 over the previous terms and once with setting 0 over the terms
/// with every setting bit flipped.
std::vector<CorrelatorTerm> build_sn(int n);

/// A dense conditional distribution p(b|x) over one city: 2^n contexts times
/// 2^n outcome strings.
class Distribution {
 public:
  explicit Distribution(int n);
  static Distribution uniform(int n);

  int n() const { return n_; }
  uint32_t contexts() const { return 1u << n_; }
  double& at(uint32_t context, uint32_t outcomes) {
    return table_[(size_t(context) << n_) | outcomes];
  }
  double at(uint32_t context, uint32_t outcomes) const {
    return table_[(size_t(context) << n_) | outcomes];
  }
  const std::vector<double>& table() const { return table_; }
  std::vector<double>& table() { return table_; }

  /// Throws unless every entry is nonnegative and every context sums to 1.
  void validate(double tol = 1e-12) const;

 private:
  int n_;
  std::vector<double> table_;
};

/// The sign structure of S_n together with the event support of Sigma_n:
/// per context, the 2^{n-1} outcome strings whose parity matches the
/// context's sign class.
class SigmaExpression {
 public:
  int n() const { return n_; }
  const std::vector<CorrelatorTerm>& terms() const { return terms_; }
  const std::vector<Event>& support() const { return support_; }

  /// True iff the context carries sign -1 (odd parity class).
  bool context_negative(uint32_t context) const { return negative_[context] != 0; }
  int sign(uint32_t context) const { return negative_[context] ? -1 : +1; }
  bool in_support(uint32_t context, uint32_t outcomes) const {
    return (std::popcount(outcomes) & 1) == negative_[context];
  }

 private:
  friend SigmaExpression build_sigma(int n);
  int n_ = 2;
  std::vector<CorrelatorTerm> terms_;
  std::vector<uint8_t> negative_;
  std::vector<Event> support_;
};

SigmaExpression build_sigma(int n);

/// Sigma evaluation: the total probability mass the distribution puts on the
/// support, summed context by context.
double evaluate_sigma(const SigmaExpression& expr, const Distribution& p);

/// S evaluation: the signed sum of full correlators 2*P_even(x) - 1.
double evaluate_sn(const std::vector<CorrelatorTerm>& terms, const Distribution& p);
double evaluate_sn(const SigmaExpression& expr, const Distribution& p);

}  // namespace qbounds
