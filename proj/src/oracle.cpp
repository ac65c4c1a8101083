#include "cleandecomp/oracle.hpp"

#include <algorithm>

#include "cleandecomp/error.hpp"
#include "cleandecomp/unit.hpp"

namespace cleandecomp {

namespace {

using Kind = Ring::Kind;

std::uint64_t require_cardinality(const Ring& ring) {
  if (!ring.is_finite()) throw Error(ErrorCode::NotFinite, ring.name() + " is infinite");
  auto card = ring.cardinality();
  if (!card) throw Error(ErrorCode::TooLarge, ring.name() + " has more than 2^63 elements");
  return *card;
}

std::size_t slot_count(const Ring& ring) {
  return ring.kind() == Kind::Matrix ? ring.dimension() * ring.dimension() : ring.dimension();
}

// Corner ring gT of a table T (g a central idempotent of T). A corner
// element u is a unit iff u + (1_T - g) is a unit of T.
FiniteRingTable corner(const FiniteRingTable& t, const Element& g) {
  FiniteRingTable out{t.ring, g, {}, {}, {}, {}, {}};
  for (const Element& x : t.elements) {
    Element y = g * x;
    auto [it, inserted] = out.position.emplace(encode(y), out.elements.size());
    if (inserted) out.elements.push_back(std::move(y));
  }
  std::vector<bool> ambient_unit(t.size(), false);
  for (std::size_t u : t.units) ambient_unit[u] = true;
  const Element complement = t.identity - g;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Element& x = out.elements[i];
    if (ambient_unit[*t.find(x + complement)]) out.units.push_back(i);
    if (x * x == x) out.idempotents.push_back(i);
  }
  for (std::size_t i : out.idempotents) {
    const Element& e = out.elements[i];
    bool central = std::all_of(out.elements.begin(), out.elements.end(), [&](const Element& x) { return e * x == x * e; });
    if (central) out.central_idempotents.push_back(i);
  }
  return out;
}

}  // namespace

std::optional<std::size_t> FiniteRingTable::find(const Element& e) const {
  auto it = position.find(encode(e));
  if (it == position.end()) return std::nullopt;
  return it->second;
}

std::uint64_t encode(const Element& e) {
  const Ring& ring = e.ring();
  if (ring.kind() == Kind::IntegersMod) return e.integer().convert_to<std::uint64_t>();
  if (ring.kind() != Kind::Matrix && ring.kind() != Kind::GroupRingCyclic) {
    throw Error(ErrorCode::NotFinite, ring.name() + " is infinite");
  }
  const std::uint64_t radix = require_cardinality(ring.base());
  require_cardinality(ring);
  std::uint64_t code = 0;
  auto terms = e.terms();
  for (std::size_t k = terms.size(); k-- > 0;) code = code * radix + encode(terms[k]);
  return code;
}

Element decode(const Ring& ring, std::uint64_t code) {
  const std::uint64_t card = require_cardinality(ring);
  if (code >= card) throw Error(ErrorCode::BadInput, "code out of range for " + ring.name());
  if (ring.kind() == Kind::IntegersMod) return Element::from_int(ring, Integer(code));
  const std::uint64_t radix = require_cardinality(ring.base());
  Element::Terms terms;
  for (std::size_t k = 0; k < slot_count(ring); ++k) {
    terms.push_back(decode(ring.base(), code % radix));
    code /= radix;
  }
  return Element::from_terms(ring, std::move(terms));
}

FiniteRingTable enumerate(const Ring& ring) {
  const std::uint64_t card = require_cardinality(ring);
  if (card > kEnumerationCap) {
    throw Error(ErrorCode::TooLarge, ring.name() + " has " + std::to_string(card) + " elements");
  }
  FiniteRingTable t{&ring, Element::one(ring), {}, {}, {}, {}, {}};
  t.elements.reserve(card);
  t.position.reserve(card);
  for (std::uint64_t code = 0; code < card; ++code) {
    t.position.emplace(code, t.elements.size());
    t.elements.push_back(decode(ring, code));
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Element& x = t.elements[i];
    if (is_unit(x)) t.units.push_back(i);
    if (x * x == x) t.idempotents.push_back(i);
  }
  if (ring.is_commutative()) {
    t.central_idempotents = t.idempotents;
  } else {
    // Commuting with every element is additive, so the coordinate basis
    // (a single 1 in one innermost slot) is enough to test against.
    const Ring* innermost = &ring;
    while (innermost->kind() != Kind::IntegersMod) innermost = &innermost->base();
    const std::uint64_t modulus = require_cardinality(*innermost);
    std::vector<Element> basis;
    for (std::uint64_t step = 1; step < card; step *= modulus) basis.push_back(decode(ring, step));
    for (std::size_t i : t.idempotents) {
      const Element& e = t.elements[i];
      if (std::all_of(basis.begin(), basis.end(), [&](const Element& b) { return e * b == b * e; })) {
        t.central_idempotents.push_back(i);
      }
    }
  }
  return t;
}

std::vector<std::optional<CleanWitness>> clean_table(const FiniteRingTable& table, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadInput, "the number of units must be at least 1");
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  // level[k][p] = (position reached by k+1 units before the last one, last unit)
  struct Step {
    std::size_t previous = none;
    std::size_t unit = none;
  };
  std::vector<std::vector<Step>> levels(n, std::vector<Step>(table.size()));
  for (std::size_t u : table.units) levels[0][u] = {u, u};
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t p = 0; p < table.size(); ++p) {
      if (levels[k - 1][p].unit == none) continue;
      for (std::size_t u : table.units) {
        std::size_t q = *table.find(table.elements[p] + table.elements[u]);
        if (levels[k][q].unit == none) levels[k][q] = {p, u};
      }
    }
  }
  std::vector<std::optional<CleanWitness>> out(table.size());
  for (std::size_t a = 0; a < table.size(); ++a) {
    for (std::size_t e : table.idempotents) {
      std::size_t p = *table.find(table.elements[a] - table.elements[e]);
      if (levels[n - 1][p].unit == none) continue;
      CleanWitness w{table.elements[e], {}};
      for (std::size_t k = n; k-- > 0;) {
        const Step& s = levels[k][p];
        w.units.push_back(table.elements[s.unit]);
        p = s.previous;
      }
      std::reverse(w.units.begin(), w.units.end());
      out[a] = std::move(w);
      break;
    }
  }
  return out;
}

std::optional<CleanWitness> is_element_n_clean(const Element& a, std::size_t n, const FiniteRingTable& table) {
  auto pos = table.find(a);
  if (!pos || !(a.ring() == *table.ring)) throw Error(ErrorCode::BadInput, a.to_string() + " is not in the table");
  if (n == 0) throw Error(ErrorCode::BadInput, "the number of units must be at least 1");
  // Unit sums reachable with n units, with a parent pointer for the witness.
  std::vector<std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>>> levels(n);
  for (std::size_t u : table.units) levels[0].emplace(u, std::make_pair(u, u));
  for (std::size_t k = 1; k < n; ++k)
    for (const auto& [p, unused] : levels[k - 1])
      for (std::size_t u : table.units) levels[k].emplace(*table.find(table.elements[p] + table.elements[u]), std::make_pair(p, u));
  for (std::size_t e : table.idempotents) {
    std::size_t p = *table.find(a - table.elements[e]);
    if (!levels[n - 1].count(p)) continue;
    CleanWitness w{table.elements[e], {}};
    for (std::size_t k = n; k-- > 0;) {
      auto [previous, unit] = levels[k].at(p);
      w.units.push_back(table.elements[unit]);
      p = previous;
    }
    std::reverse(w.units.begin(), w.units.end());
    return w;
  }
  return std::nullopt;
}

bool ring_is_n_clean(const FiniteRingTable& table, std::size_t n) {
  auto rows = clean_table(table, n);
  return std::all_of(rows.begin(), rows.end(), [](const auto& w) { return w.has_value(); });
}

bool integer_n_clean_check(const Integer& a, std::size_t n) {
  // e + (sum of n signs) covers e - n, e - n + 2, ..., e + n.
  const Integer span(n);
  for (int e = 0; e <= 1; ++e) {
    Integer d = a - e;
    if (d >= -span && d <= span && ((d + span) % 2) == 0) return true;
  }
  return false;
}

PierceStalkReport pierce_stalks(const FiniteRingTable& table) {
  std::vector<std::size_t> proper;
  for (std::size_t i : table.central_idempotents)
    if (!(table.elements[i] == table.identity)) proper.push_back(i);
  // fR is contained in gR iff f = fg; keep the maximal proper ones.
  PierceStalkReport report;
  for (std::size_t i : proper) {
    const Element& f = table.elements[i];
    bool maximal = std::none_of(proper.begin(), proper.end(), [&](std::size_t j) {
      return j != i && f * table.elements[j] == f;
    });
    if (!maximal) continue;
    PierceIdeal ideal{f, {}};
    std::vector<std::size_t> members;
    for (const Element& x : table.elements) members.push_back(*table.find(f * x));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t m : members) ideal.elements.push_back(table.elements[m]);
    report.stalks.push_back(corner(table, table.identity - f));
    report.pierce_ideals.push_back(std::move(ideal));
  }
  return report;
}

}  // namespace cleandecomp
