#include "cleandecomp/group_ring.hpp"

#include <map>
#include <mutex>

#include "cleandecomp/error.hpp"
#include "cleandecomp/oracle.hpp"

namespace cleandecomp {

namespace {

using Kind = Ring::Kind;
using Poly = RationalPolynomial;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly x_power_minus_one(std::size_t m) {
  Poly p(m + 1, Rational(0));
  p[0] = -1;
  p[m] = 1;
  return p;
}

// s with s*a = 1 mod b, for coprime a and b.
Poly inverse_mod(const Poly& a, const Poly& b) {
  Poly r0 = b, r1 = divmod(a, b).second;
  Poly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw Error(ErrorCode::InternalPatternViolation, "polynomials are not coprime");
  for (Rational& c : s0) c /= r0[0];
  return divmod(s0, b).second;
}

std::vector<std::size_t> divisors_of(std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

Element group_element_from(const Ring& ring, const Poly& p) {
  Element::Terms terms;
  for (std::size_t i = 0; i < ring.dimension(); ++i)
    terms.push_back(Element::from_rational(ring.base(), i < p.size() ? p[i] : Rational(0)));
  return Element::from_terms(ring, std::move(terms));
}

Element sum_of_group(const Ring& ring) {
  return Element::from_terms(ring, Element::Terms(ring.dimension(), Element::one(ring.base())));
}

Element reduce_mod_p(const Element& c, const Ring& residue) {
  return Element::from_rational(residue, c.rational());
}

struct ResidueTable {
  FiniteRingTable table;
  std::vector<bool> unit;
};

const ResidueTable& residue_table(const Ring& ring) {
  static std::mutex lock;
  static std::map<const Ring*, ResidueTable> cache;
  std::lock_guard guard(lock);
  auto it = cache.find(&ring);
  if (it != cache.end()) return it->second;
  auto build = [&] {
    try {
      return enumerate(ring);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooLarge) throw;
      throw Error(ErrorCode::UnsupportedOrder, "residue ring " + ring.name() + " is too large to search");
    }
  };
  ResidueTable entry{build(), {}};
  entry.unit.assign(entry.table.size(), false);
  for (std::size_t u : entry.table.units) entry.unit[u] = true;
  return cache.emplace(&ring, std::move(entry)).first->second;
}

// Some idempotent e of the finite table with h - e a unit.
std::optional<Element> residue_clean_idempotent(const ResidueTable& t, const Element& h) {
  for (std::size_t e : t.table.idempotents)
    if (t.unit[*t.table.find(h - t.table.elements[e])]) return t.table.elements[e];
  return std::nullopt;
}

TwoGoodResult finish(const Element& a, const Element& u1) {
  const Element u2 = a - u1;
  if (!(u1 + u2 == a)) throw Error(ErrorCode::InternalPatternViolation, "2-good sum does not reproduce the input");
  return {try_invert(u1), try_invert(u2), false};
}

// Reduce through (RC_{p^k})C_m onto F_p C_m, split there, lift the first unit
// coefficientwise and take u2 = a - u1.
TwoGoodResult direct_lift(const Element& a, std::size_t p) {
  const Ring& base = a.ring().base();
  const RegroupIso iso = regroup_iso(a.ring().dimension(), p);
  const Ring& field = Ring::integers_mod(Integer(p));
  const Ring& residue = Ring::group_ring(field, iso.m);
  const ResidueTable& t = residue_table(residue);

  const Element regrouped = iso.forward(a);
  Element::Terms reduced;
  for (const Element& inner : regrouped.terms()) {
    Element augmentation = Element::zero(base);
    for (const Element& c : inner.terms()) augmentation += c;
    reduced.push_back(reduce_mod_p(augmentation, field));
  }
  const Element a_bar = Element::from_terms(residue, std::move(reduced));
  const Element half = try_invert(Element::from_int(residue, 2)).inverse;
  const Element h_bar = (a_bar + Element::one(residue)) * half;
  auto e_bar = residue_clean_idempotent(t, h_bar);
  if (!e_bar) throw Error(ErrorCode::InternalPatternViolation, h_bar.to_string() + " has no clean decomposition");
  const Element v1 = Element::from_int(residue, 2) * *e_bar - Element::one(residue);

  const Ring& inner_ring = regrouped.ring().base();
  Element::Terms lifted;
  for (const Element& c : v1.terms()) {
    Element::Terms inner(iso.prime_power, Element::zero(base));
    inner[0] = Element::from_int(base, c.integer());
    lifted.push_back(Element::from_terms(inner_ring, std::move(inner)));
  }
  return finish(a, iso.backward(Element::from_terms(regrouped.ring(), std::move(lifted))));
}

}  // namespace

RationalPolynomial cyclotomic_polynomial(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::BadInput, "cyclotomic index must be positive");
  Poly p = x_power_minus_one(d);
  for (std::size_t e : divisors_of(d)) {
    if (e == d) break;
    auto [q, r] = divmod(p, cyclotomic_polynomial(e));
    if (!r.empty()) throw Error(ErrorCode::InternalPatternViolation, "inexact cyclotomic division");
    p = std::move(q);
  }
  return p;
}

bool sigma_is_cyclic(std::uint64_t m) {
  if (m < 3 || m % 2 == 0) throw Error(ErrorCode::BadInput, "sigma needs an odd m >= 3, got " + std::to_string(m));
  std::uint64_t x = 1, orbit = 0;
  do {
    x = (2 * x) % m;
    ++orbit;
  } while (x != 1 && orbit < m);
  return x == 1 && orbit == m - 1;
}

std::vector<Element> enumerate_idempotents_f2(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::BadInput, "group order must be positive");
  if (m > 20) throw Error(ErrorCode::TooLarge, "F2 C_" + std::to_string(m) + " has more than 2^20 elements");
  const std::uint32_t mask = (std::uint32_t{1} << m) - 1;
  auto rotate = [&](std::uint32_t y, std::size_t i) { return i == 0 ? y : ((y << i) | (y >> (m - i))) & mask; };
  const Ring& ring = Ring::group_ring(Ring::integers_mod(Integer(2)), m);
  std::vector<Element> out;
  for (std::uint32_t x = 0; x <= mask; ++x) {
    std::uint32_t square = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (x >> i & 1) square ^= rotate(x, i);
    if (square != x) continue;
    Element::Terms terms;
    for (std::size_t i = 0; i < m; ++i) terms.push_back(Element::from_int(ring.base(), Integer(x >> i & 1)));
    out.push_back(Element::from_terms(ring, std::move(terms)));
  }
  return out;
}

ExplicitIdempotents explicit_idempotents(std::size_t m, const Ring& base) {
  if (m == 0) throw Error(ErrorCode::BadInput, "group order must be positive");
  const Element order = Element::from_int(base, Integer(m));
  if (!is_unit(order)) throw Error(ErrorCode::NotInvertible, std::to_string(m) + " is not a unit of " + base.name());
  const Ring& ring = Ring::group_ring(base, m);
  const Element inverse = Element::from_terms(ring, [&] {
    Element::Terms t(m, Element::zero(base));
    t[0] = try_invert(order).inverse;
    return t;
  }());
  const Element f3 = inverse * sum_of_group(ring);
  ExplicitIdempotents out{Element::zero(ring), Element::one(ring), f3, Element::one(ring) - f3};
  if (!is_idempotent(out.f3) || !is_idempotent(out.f4) || !(out.f3 + out.f4).is_one()) {
    throw Error(ErrorCode::InternalPatternViolation, "f3 or f4 is not idempotent");
  }
  return out;
}

std::vector<Element> IdempotentCatalog::members_in(const Ring& base) const {
  const Ring& ring = Ring::group_ring(base, order);
  std::vector<Element> out;
  for (const Element& e : all_idempotents) {
    Element::Terms terms;
    try {
      for (const Element& c : e.terms()) terms.push_back(Element::from_rational(base, c.rational()));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DenominatorNotUnit) throw;
      continue;
    }
    Element mapped = Element::from_terms(ring, std::move(terms));
    bool seen = false;
    for (const Element& x : out) seen = seen || x == mapped;
    if (!seen) out.push_back(std::move(mapped));
  }
  return out;
}

IdempotentCatalog rational_idempotents(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::BadInput, "group order must be positive");
  IdempotentCatalog catalog;
  catalog.order = m;
  catalog.divisors = divisors_of(m);
  if (catalog.divisors.size() > 20) {
    throw Error(ErrorCode::TooLarge, std::to_string(m) + " has more than 20 divisors");
  }
  const Ring& ring = Ring::group_ring(Ring::rationals(), m);
  const Poly modulus = x_power_minus_one(m);
  for (std::size_t d : catalog.divisors) {
    const Poly phi = cyclotomic_polynomial(d);
    const Poly rest = divmod(modulus, phi).first;
    // e = t * rest with t * rest = 1 mod phi; then e = 0 mod rest.
    const Poly t = inverse_mod(rest, phi);
    catalog.primitive.push_back(group_element_from(ring, divmod(mul(t, rest), modulus).second));
  }
  const std::size_t count = std::size_t{1} << catalog.primitive.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    Element e = Element::zero(ring);
    for (std::size_t i = 0; i < catalog.primitive.size(); ++i)
      if (mask >> i & 1) e += catalog.primitive[i];
    catalog.all_idempotents.push_back(std::move(e));
  }
  return catalog;
}

UnitWitness unit_invert_groupring(const Element& a) {
  if (a.ring().kind() != Kind::GroupRingCyclic) throw Error(ErrorCode::BadInput, a.ring().name() + " is not a group ring");
  return try_invert(a);
}

std::optional<GroupRingCleanWitness> clean_check_localized(const Element& a) {
  const Ring& ring = a.ring();
  if (ring.kind() != Kind::GroupRingCyclic ||
      (ring.base().kind() != Kind::LocalizedIntegers && ring.base().kind() != Kind::Rationals)) {
    throw Error(ErrorCode::BadInput, "expected a group ring over Q or Zloc, got " + ring.name());
  }
  for (const Element& e : rational_idempotents(ring.dimension()).members_in(ring.base())) {
    try {
      return GroupRingCleanWitness{e, try_invert(a - e)};
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotAUnit) throw;
    }
  }
  return std::nullopt;
}

RegroupIso regroup_iso(std::size_t n, std::size_t p) {
  if (n == 0 || !is_prime(p)) {
    throw Error(ErrorCode::BadFactorization, "cannot split C_" + std::to_string(n) + " at " + std::to_string(p));
  }
  RegroupIso iso{n, p, 0, 1, n};
  while (iso.m % p == 0) {
    iso.m /= p;
    iso.prime_power *= p;
    ++iso.k;
  }
  return iso;
}

Element RegroupIso::forward(const Element& a) const {
  const Ring& source = a.ring();
  if (source.kind() != Kind::GroupRingCyclic || source.dimension() != n) {
    throw Error(ErrorCode::BadInput, "expected an element of a group ring of order " + std::to_string(n));
  }
  const Ring& inner = Ring::group_ring(source.base(), prime_power);
  const Ring& target = Ring::group_ring(inner, m);
  std::vector<Element::Terms> slots(m, Element::Terms(prime_power, Element::zero(source.base())));
  for (std::size_t i = 0; i < n; ++i) {
    auto [l, j] = (*this)(i);
    slots[j][l] = a.terms()[i];
  }
  Element::Terms outer;
  for (auto& s : slots) outer.push_back(Element::from_terms(inner, std::move(s)));
  return Element::from_terms(target, std::move(outer));
}

Element RegroupIso::backward(const Element& b) const {
  const Ring& target = b.ring();
  if (target.kind() != Kind::GroupRingCyclic || target.dimension() != m ||
      target.base().kind() != Kind::GroupRingCyclic || target.base().dimension() != prime_power) {
    throw Error(ErrorCode::BadInput, target.name() + " is not the regrouped ring");
  }
  const Ring& base = target.base().base();
  Element::Terms terms;
  for (std::size_t i = 0; i < n; ++i) {
    auto [l, j] = (*this)(i);
    terms.push_back(b.terms()[j].terms()[l]);
  }
  return Element::from_terms(Ring::group_ring(base, n), std::move(terms));
}

TwoGoodResult two_good_group_ring(const Element& a) {
  const Ring& ring = a.ring();
  if (ring.kind() != Kind::GroupRingCyclic) throw Error(ErrorCode::BadInput, ring.name() + " is not a group ring");
  const Ring& base = ring.base();
  if (base.kind() != Kind::LocalizedIntegers || base.avoided_primes().size() != 1) {
    throw Error(ErrorCode::BadInput, "expected a group ring over Zloc at one prime, got " + ring.name());
  }
  const std::size_t p = base.avoided_primes()[0];
  if (p == 2) throw Error(ErrorCode::TwoNotInvertible, "2 is not a unit of " + base.name());
  const std::size_t n = ring.dimension();
  if (n % p == 0) return direct_lift(a, p);

  const Ring& residue = Ring::group_ring(Ring::integers_mod(Integer(p)), n);
  const ResidueTable& t = residue_table(residue);
  auto reduce = [&](const Element& x) {
    Element::Terms terms;
    for (const Element& c : x.terms()) terms.push_back(reduce_mod_p(c, residue.base()));
    return Element::from_terms(residue, std::move(terms));
  };
  const Element one = Element::one(ring);
  const Element two = Element::from_int(ring, 2);
  const Element h = (a + one) * Element::from_rational(ring, Rational(1, 2));
  const Element h_bar = reduce(h);
  for (const Element& e : rational_idempotents(n).members_in(base)) {
    if (!t.unit[*t.table.find(h_bar - reduce(e))]) continue;
    const Element u1 = two * e - one;
    const Element u2 = two * (h - e);
    if (!(u1 + u2 == a)) throw Error(ErrorCode::InternalPatternViolation, "2-good sum does not reproduce the input");
    return {make_unit_witness(u1, u1), try_invert(u2), true};
  }
  // Residue idempotents that are not images of rational ones (Phi_d splitting
  // mod p): lift the residue unit instead.
  return direct_lift(a, p);
}

CleanDecomposition clean_from_two_good(const Element& a, const TwoGoodResult& r) {
  return {a, Element::zero(a.ring()), {r.u1, r.u2}};
}

}  // namespace cleandecomp
