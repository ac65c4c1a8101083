#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cleandecomp/clean.hpp"
#include "cleandecomp/element.hpp"
#include "cleandecomp/integer.hpp"
#include "cleandecomp/unit.hpp"

namespace cleandecomp {

/// Dense rational polynomial, lowest degree first, no trailing zeros.
using RationalPolynomial = std::vector<Rational>;

/// Phi_d by exact division of X^d - 1 by the Phi_e for the proper divisors e.
RationalPolynomial cyclotomic_polynomial(std::size_t d);

/// Whether i -> 2i (mod m) is a single (m-1)-cycle on {1, ..., m-1}.
/// BadInput for even m or m < 3.
bool sigma_is_cyclic(std::uint64_t m);

/// Every idempotent of F2 C_m by brute force, ordered by coefficient bitmask.
/// BadInput for m = 0, TooLarge for m > 20.
std::vector<Element> enumerate_idempotents_f2(std::size_t m);

struct ExplicitIdempotents {
  Element f1;  // 0
  Element f2;  // 1
  Element f3;  // m^-1 (1 + g + ... + g^(m-1))
  Element f4;  // 1 - f3
};

/// Over GrpC:<base>:m. NotInvertible when m is not a unit of base.
ExplicitIdempotents explicit_idempotents(std::size_t m, const Ring& base);

struct IdempotentCatalog {
  std::size_t order = 1;
  std::vector<std::size_t> divisors;
  std::vector<Element> primitive;        // one per divisor, over GrpC:Q:m
  std::vector<Element> all_idempotents;  // subset sums, indexed by divisor bitmask

  /// Catalog entries whose coefficients lie in `base`, mapped into GrpC:<base>:m.
  std::vector<Element> members_in(const Ring& base) const;
};

/// Primitive idempotents of Q C_m from the cyclotomic factorization of X^m - 1.
/// BadInput for m = 0.
IdempotentCatalog rational_idempotents(std::size_t m);

/// Inverse of a group-ring element. BadInput if a is not a group-ring element,
/// NotAUnit if it has no inverse.
UnitWitness unit_invert_groupring(const Element& a);

struct GroupRingCleanWitness {
  Element idempotent;
  UnitWitness unit;
};

/// a = e + u over GrpC:Q:m or GrpC:Zloc:...:m, searching the rational catalog.
std::optional<GroupRingCleanWitness> clean_check_localized(const Element& a);

/// C_n = C_{p^k} x C_m with gcd(m, p) = 1, via i -> (i mod p^k, i mod m).
struct RegroupIso {
  std::size_t n, p, k, prime_power, m;

  std::pair<std::size_t, std::size_t> operator()(std::size_t i) const { return {i % prime_power, i % m}; }
  /// RC_n -> (RC_{p^k})C_m.
  Element forward(const Element& a) const;
  /// (RC_{p^k})C_m -> RC_n.
  Element backward(const Element& b) const;
};

/// BadFactorization unless p is prime and n >= 1 (k = 0 is allowed).
RegroupIso regroup_iso(std::size_t n, std::size_t p);

struct TwoGoodResult {
  UnitWitness u1;
  UnitWitness u2;
  /// Whether the idempotent came from the rational catalog (p not dividing n)
  /// or the residue unit was lifted directly.
  bool catalog_lift;
};

/// a = u1 + u2 over GrpC:Zloc:p:n. TwoNotInvertible when 2 is not a unit,
/// BadInput for any other ring, UnsupportedOrder when the residue ring is
/// too large to search.
TwoGoodResult two_good_group_ring(const Element& a);

/// Appends the zero idempotent: a = 0 + u1 + u2.
CleanDecomposition clean_from_two_good(const Element& a, const TwoGoodResult& r);

}  // namespace cleandecomp
