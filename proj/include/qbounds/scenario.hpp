#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbounds {

enum class City : uint8_t { Stockholm = 0, Vienna = 1 };

/// An n-party scenario with two settings and two outcomes per party,
/// optionally doubled into two independent copies (Stockholm and Vienna).
struct Scenario {
  int n = 2;
  bool doubled = false;

  int parties() const { return doubled ? 2 * n : n; }
  uint32_t bit_mask() const { return (1u << parties()) - 1u; }

  friend bool operator==(const Scenario&, const Scenario&) = default;
  friend auto operator<=>(const Scenario&, const Scenario&) = default;
};

Scenario single_scenario(int n);
Scenario doubled_scenario(int n);

/// Either a native local measurement (city, party, setting) or a derived
/// joint measurement A_ij acting on the first parties of both cities.
class MeasurementId {
 public:
  enum class Kind : uint8_t { Native = 0, Derived = 1 };

  static MeasurementId native(City city, int party, int setting);
  static MeasurementId derived(int i, int j);
  // Derived measurements are defined on the first parties only; any other
  // party is rejected here.
  static MeasurementId derived_on_party(int party, int i, int j);

  Kind kind() const { return kind_; }
  bool is_native() const { return kind_ == Kind::Native; }
  bool is_derived() const { return kind_ == Kind::Derived; }

  City city() const;    // native only
  int party() const;    // native only, 1-based
  int setting() const;  // native only
  int row() const;      // derived only: the i of A_ij
  int col() const;      // derived only: the j of A_ij

  std::string label() const;  // "S2:0", "V1:1", "A01", ...

  friend auto operator<=>(const MeasurementId&, const MeasurementId&) = default;
  friend bool operator==(const MeasurementId&, const MeasurementId&) = default;

 private:
  MeasurementId(Kind k, uint8_t a, uint8_t b, uint8_t c)
      : kind_(k), a_(a), b_(b), c_(c) {}
  Kind kind_;
  uint8_t a_, b_, c_;  // native: city, party, setting; derived: i, j, 0
};

/// An outcome assignment over compatible measurements. Product events assign
/// one native outcome per (city, party); ancillary events assign exactly the
/// derived pair {A00, A11} or {A01, A10}. Events are canonical by
/// construction, so equality and hashing are structural.
class Event {
 public:
  enum class Kind : uint8_t { Product = 0, Ancillary = 1 };

  /// Product event from packed bits; bit p-1 is Stockholm party p, bit n+p-1
  /// is Vienna party p (doubled scenarios only use the upper half).
  static Event product(const Scenario& sc, uint32_t settings, uint32_t outcomes);
  static Event product(const Scenario& sc, const std::vector<int>& settings,
                       const std::vector<int>& outcomes);
  static Event ancillary(const Scenario& sc,
                         const std::vector<std::pair<MeasurementId, int>>& assignment);
  /// Parses the text-token form emitted by token().
  static Event parse(const Scenario& sc, std::string_view token);

  Kind kind() const { return kind_; }
  bool is_product() const { return kind_ == Kind::Product; }
  bool is_ancillary() const { return kind_ == Kind::Ancillary; }
  const Scenario& scenario() const { return sc_; }

  uint32_t settings_bits() const;  // product only
  uint32_t outcomes_bits() const;  // product only

  bool pair_is_diagonal() const;                      // ancillary: {A00,A11}?
  int outcome_of(const MeasurementId& m) const;       // throws if unassigned
  std::map<MeasurementId, int> assignments() const;   // canonical map view

  /// Text token: product events "b1,..|x1,..", city-ordered; ancillary
  /// events "c,d|Aij,Akl" with measurements in sorted order.
  std::string token() const;

  /// Structural identity key, unique within a scenario.
  uint64_t key() const;

  friend bool operator==(const Event& a, const Event& b) {
    return a.sc_ == b.sc_ && a.key() == b.key();
  }
  friend auto operator<=>(const Event& a, const Event& b) {
    if (auto c = a.sc_ <=> b.sc_; c != 0) return c;
    return a.key() <=> b.key();
  }

 private:
  Event(const Scenario& sc, Kind k) : sc_(sc), kind_(k) {}
  Scenario sc_;
  Kind kind_;
  uint32_t settings_ = 0, outcomes_ = 0;      // product
  uint8_t diag_ = 1, out_lo_ = 0, out_hi_ = 0;  // ancillary
};

/// Outcome of the derived measurement m = A_ij determined by a product event
/// in a doubled scenario: b_1 xor b'_1 when the event's first-party settings
/// are exactly (i, j), absent otherwise.
std::optional<int> determined_outcome(const Event& e, const MeasurementId& m);

/// The exclusivity predicate. True iff the two events assign different
/// outcomes to a common measurement, where a product event counts as
/// assigning the outcome it determines for its matching A_ij.
bool exclusive(const Event& a, const Event& b);

/// Exchanges the roles of the two cities.
Event city_swap(const Event& e);
/// Flips every outcome bit of a product event.
Event outcome_flip(const Event& e);

/// Packed kernel for product-product exclusivity; shared with the family
/// verifier so both paths use identical semantics.
inline bool product_exclusive_bits(uint32_t sa, uint32_t oa, uint32_t sb,
                                   uint32_t ob, uint32_t mask) {
  return ((~(sa ^ sb)) & (oa ^ ob) & mask) != 0;
}

/// Packed kernel for ancillary-vs-product exclusivity. `n` is the party
/// count per city; (diag, out_lo, out_hi) describe the ancillary event.
inline bool ancillary_excludes_bits(uint32_t s, uint32_t o, int n, bool diag,
                                    int out_lo, int out_hi) {
  const int i = static_cast<int>(s & 1u);
  const int j = static_cast<int>((s >> n) & 1u);
  if ((i == j) != diag) return false;  // event determines the other pair
  const int det = static_cast<int>((o ^ (o >> n)) & 1u);
  const int assigned = (i == 0) ? out_lo : out_hi;
  return det != assigned;
}

}  // namespace qbounds
