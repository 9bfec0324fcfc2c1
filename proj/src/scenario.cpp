#include "qbounds/scenario.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qbounds {

namespace {

void check_party_count(int n) {
  if (n < 2) throw std::invalid_argument("scenario requires n >= 2");
  if (n > 15) throw std::invalid_argument("scenario limited to n <= 15");
}

}  // namespace

Scenario single_scenario(int n) {
  check_party_count(n);
  return Scenario{n, false};
}

Scenario doubled_scenario(int n) {
  check_party_count(n);
  return Scenario{n, true};
}

MeasurementId MeasurementId::native(City city, int party, int setting) {
  if (party < 1 || party > 15) throw std::invalid_argument("party out of range");
  if (setting != 0 && setting != 1) throw std::invalid_argument("setting must be 0 or 1");
  return MeasurementId(Kind::Native, static_cast<uint8_t>(city),
                       static_cast<uint8_t>(party), static_cast<uint8_t>(setting));
}

MeasurementId MeasurementId::derived(int i, int j) {
  if ((i != 0 && i != 1) || (j != 0 && j != 1))
    throw std::invalid_argument("derived measurement indices must be 0 or 1");
  return MeasurementId(Kind::Derived, static_cast<uint8_t>(i), static_cast<uint8_t>(j), 0);
}

MeasurementId MeasurementId::derived_on_party(int party, int i, int j) {
  if (party != 1)
    throw std::invalid_argument("derived measurements exist only on the first parties");
  return derived(i, j);
}

City MeasurementId::city() const {
  if (!is_native()) throw std::logic_error("city() on derived measurement");
  return static_cast<City>(a_);
}

int MeasurementId::party() const {
  if (!is_native()) throw std::logic_error("party() on derived measurement");
  return b_;
}

int MeasurementId::setting() const {
  if (!is_native()) throw std::logic_error("setting() on derived measurement");
  return c_;
}

int MeasurementId::row() const {
  if (!is_derived()) throw std::logic_error("row() on native measurement");
  return a_;
}

int MeasurementId::col() const {
  if (!is_derived()) throw std::logic_error("col() on native measurement");
  return b_;
}

std::string MeasurementId::label() const {
  std::ostringstream os;
  if (is_native()) {
    os << (city() == City::Stockholm ? 'S' : 'V') << party() << ':' << setting();
  } else {
    os << 'A' << row() << col();
  }
  return os.str();
}

Event Event::product(const Scenario& sc, uint32_t settings, uint32_t outcomes) {
  check_party_count(sc.n);
  const uint32_t mask = sc.bit_mask();
  if ((settings & ~mask) != 0 || (outcomes & ~mask) != 0)
    throw std::invalid_argument("setting/outcome bits outside scenario");
  Event e(sc, Kind::Product);
  e.settings_ = settings;
  e.outcomes_ = outcomes;
  return e;
}

Event Event::product(const Scenario& sc, const std::vector<int>& settings,
                     const std::vector<int>& outcomes) {
  const size_t parties = static_cast<size_t>(sc.parties());
  if (settings.size() != parties || outcomes.size() != parties)
    throw std::invalid_argument("product event must assign every party once");
  uint32_t s = 0, o = 0;
  for (size_t i = 0; i < parties; ++i) {
    if ((settings[i] & ~1) || (outcomes[i] & ~1))
      throw std::invalid_argument("settings and outcomes are bits");
    s |= static_cast<uint32_t>(settings[i]) << i;
    o |= static_cast<uint32_t>(outcomes[i]) << i;
  }
  return product(sc, s, o);
}

Event Event::ancillary(const Scenario& sc,
                       const std::vector<std::pair<MeasurementId, int>>& assignment) {
  check_party_count(sc.n);
  if (!sc.doubled)
    throw std::invalid_argument("ancillary events exist only in doubled scenarios");
  if (assignment.size() != 2)
    throw std::invalid_argument("ancillary events carry exactly two derived outcomes");
  int out[2][2] = {{-1, -1}, {-1, -1}};
  for (const auto& [m, v] : assignment) {
    if (!m.is_derived())
      throw std::invalid_argument("ancillary events assign derived measurements only");
    if (v != 0 && v != 1) throw std::invalid_argument("outcomes are bits");
    if (out[m.row()][m.col()] != -1)
      throw std::invalid_argument("duplicate measurement in ancillary event");
    out[m.row()][m.col()] = v;
  }
  Event e(sc, Kind::Ancillary);
  if (out[0][0] >= 0 && out[1][1] >= 0) {
    e.diag_ = 1;
    e.out_lo_ = static_cast<uint8_t>(out[0][0]);
    e.out_hi_ = static_cast<uint8_t>(out[1][1]);
  } else if (out[0][1] >= 0 && out[1][0] >= 0) {
    e.diag_ = 0;
    e.out_lo_ = static_cast<uint8_t>(out[0][1]);
    e.out_hi_ = static_cast<uint8_t>(out[1][0]);
  } else {
    throw std::invalid_argument("ancillary pair must be {A00,A11} or {A01,A10}");
  }
  return e;
}

uint32_t Event::settings_bits() const {
  if (!is_product()) throw std::logic_error("settings_bits() on ancillary event");
  return settings_;
}

uint32_t Event::outcomes_bits() const {
  if (!is_product()) throw std::logic_error("outcomes_bits() on ancillary event");
  return outcomes_;
}

bool Event::pair_is_diagonal() const {
  if (!is_ancillary()) throw std::logic_error("pair_is_diagonal() on product event");
  return diag_ != 0;
}

int Event::outcome_of(const MeasurementId& m) const {
  const auto all = assignments();
  auto it = all.find(m);
  if (it == all.end()) throw std::out_of_range("measurement not assigned by event");
  return it->second;
}

std::map<MeasurementId, int> Event::assignments() const {
  std::map<MeasurementId, int> out;
  if (is_product()) {
    for (int p = 1; p <= sc_.n; ++p) {
      const int bit = p - 1;
      out.emplace(MeasurementId::native(City::Stockholm, p, (settings_ >> bit) & 1),
                  (outcomes_ >> bit) & 1);
      if (sc_.doubled) {
        const int vbit = sc_.n + p - 1;
        out.emplace(MeasurementId::native(City::Vienna, p, (settings_ >> vbit) & 1),
                    (outcomes_ >> vbit) & 1);
      }
    }
  } else {
    if (diag_) {
      out.emplace(MeasurementId::derived(0, 0), out_lo_);
      out.emplace(MeasurementId::derived(1, 1), out_hi_);
    } else {
      out.emplace(MeasurementId::derived(0, 1), out_lo_);
      out.emplace(MeasurementId::derived(1, 0), out_hi_);
    }
  }
  return out;
}

std::string Event::token() const {
  std::ostringstream os;
  if (is_product()) {
    const int parties = sc_.parties();
    for (int i = 0; i < parties; ++i) {
      if (i) os << ',';
      os << ((outcomes_ >> i) & 1);
    }
    os << '|';
    for (int i = 0; i < parties; ++i) {
      if (i) os << ',';
      os << ((settings_ >> i) & 1);
    }
  } else {
    os << int(out_lo_) << ',' << int(out_hi_) << '|';
    os << (diag_ ? "A00,A11" : "A01,A10");
  }
  return os.str();
}

Event Event::parse(const Scenario& sc, std::string_view token) {
  const auto bar = token.find('|');
  if (bar == std::string_view::npos)
    throw std::invalid_argument("event token must contain '|'");
  auto split = [](std::string_view s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (start <= s.size()) {
      auto comma = s.find(',', start);
      if (comma == std::string_view::npos) {
        parts.emplace_back(s.substr(start));
        break;
      }
      parts.emplace_back(s.substr(start, comma - start));
      start = comma + 1;
    }
    return parts;
  };
  const auto lhs = split(token.substr(0, bar));
  const auto rhs = split(token.substr(bar + 1));
  if (!rhs.empty() && !rhs.front().empty() && rhs.front().front() == 'A') {
    std::vector<std::pair<MeasurementId, int>> assignment;
    if (lhs.size() != 2 || rhs.size() != 2)
      throw std::invalid_argument("bad ancillary token");
    for (size_t k = 0; k < 2; ++k) {
      const std::string& ms = rhs[k];
      if (ms.size() != 3 || ms[0] != 'A')
        throw std::invalid_argument("bad derived measurement label");
      assignment.emplace_back(MeasurementId::derived(ms[1] - '0', ms[2] - '0'),
                              std::stoi(lhs[k]));
    }
    return ancillary(sc, assignment);
  }
  std::vector<int> outcomes, settings;
  for (const auto& v : lhs) outcomes.push_back(std::stoi(v));
  for (const auto& v : rhs) settings.push_back(std::stoi(v));
  return product(sc, settings, outcomes);
}

uint64_t Event::key() const {
  if (is_product())
    return (uint64_t(settings_) << 30) | uint64_t(outcomes_);
  return (1ull << 62) | (uint64_t(diag_) << 2) | (uint64_t(out_lo_) << 1) | out_hi_;
}

std::optional<int> determined_outcome(const Event& e, const MeasurementId& m) {
  if (!e.is_product())
    throw std::invalid_argument("determined_outcome requires a product event");
  if (!e.scenario().doubled)
    throw std::invalid_argument("determined_outcome requires a doubled scenario");
  if (!m.is_derived())
    throw std::invalid_argument("determined_outcome requires a derived measurement");
  const int n = e.scenario().n;
  const uint32_t s = e.settings_bits();
  if (int(s & 1u) != m.row() || int((s >> n) & 1u) != m.col()) return std::nullopt;
  const uint32_t o = e.outcomes_bits();
  return static_cast<int>((o ^ (o >> n)) & 1u);
}

bool exclusive(const Event& a, const Event& b) {
  if (a.scenario() != b.scenario())
    throw std::invalid_argument("events belong to different scenarios");
  const int n = a.scenario().n;
  if (a.is_product() && b.is_product()) {
    return product_exclusive_bits(a.settings_bits(), a.outcomes_bits(),
                                  b.settings_bits(), b.outcomes_bits(),
                                  a.scenario().bit_mask());
  }
  if (a.is_ancillary() && b.is_ancillary()) {
    if (a.pair_is_diagonal() != b.pair_is_diagonal()) return false;
    return a.key() != b.key();
  }
  const Event& anc = a.is_ancillary() ? a : b;
  const Event& prod = a.is_ancillary() ? b : a;
  const auto asg = anc.assignments();
  const int lo = asg.begin()->second;
  const int hi = std::next(asg.begin())->second;
  return ancillary_excludes_bits(prod.settings_bits(), prod.outcomes_bits(), n,
                                 anc.pair_is_diagonal(), lo, hi);
}

Event city_swap(const Event& e) {
  if (!e.scenario().doubled)
    throw std::invalid_argument("city_swap requires a doubled scenario");
  const int n = e.scenario().n;
  const uint32_t half = (1u << n) - 1u;
  if (e.is_product()) {
    const uint32_t s = e.settings_bits(), o = e.outcomes_bits();
    return Event::product(e.scenario(), ((s >> n) & half) | ((s & half) << n),
                          ((o >> n) & half) | ((o & half) << n));
  }
  // (g,h|A_ii',A_jj') -> (g,h|A_i'i,A_j'j); diag pairs map to themselves,
  // antidiagonal pairs swap their two slots under the map-based identity.
  const auto asg = e.assignments();
  std::vector<std::pair<MeasurementId, int>> swapped;
  for (const auto& [m, v] : asg)
    swapped.emplace_back(MeasurementId::derived(m.col(), m.row()), v);
  return Event::ancillary(e.scenario(), swapped);
}

Event outcome_flip(const Event& e) {
  if (!e.is_product())
    throw std::invalid_argument("outcome_flip applies to product events");
  return Event::product(e.scenario(), e.settings_bits(),
                        e.outcomes_bits() ^ e.scenario().bit_mask());
}

}  // namespace qbounds
