#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cleandecomp/integer.hpp"
#include "cleandecomp/ring.hpp"

namespace cleandecomp {

/// An exact value in one of the supported rings, always in canonical form:
///   Z, Zmod     -> Integer (residues in [0, n))
///   Q, Zloc     -> Rational (reduced, positive denominator; for Zloc the
///                  denominator avoids every localized prime)
///   Poly        -> coefficient list c0, c1, ... without trailing zeros
///   Mat         -> n*n entries, row-major
///   GrpC        -> n coefficients of 1, g, ..., g^(n-1)
/// Canonical form makes structural equality coincide with ring equality.
class Element {
 public:
  using Terms = std::vector<Element>;

  static Element zero(const Ring& ring);
  static Element one(const Ring& ring);
  /// Image of an integer under the unique ring map Z -> ring.
  static Element from_int(const Ring& ring, const Integer& value);
  /// Image of a fraction; throws DenominatorNotUnit when the denominator is
  /// not invertible in the ring.
  static Element from_rational(const Ring& ring, const Rational& value);
  /// Polynomial coefficients, matrix entries (row-major) or group-ring
  /// coefficients; each term must already belong to ring.base().
  static Element from_terms(const Ring& ring, Terms terms);
  /// Element grammar: integers, a/b fractions, polynomial and group-ring
  /// sums such as "1 - 2*x + x^3", matrices as nested arrays "[[1,0],[0,1]]".
  static Element parse(const Ring& ring, std::string_view text);

  const Ring& ring() const noexcept { return *ring_; }

  bool is_zero() const;
  bool is_one() const;

  /// Payload accessors; calling the wrong one throws UnsupportedRing.
  const Integer& integer() const;
  const Rational& rational() const;
  std::span<const Element> terms() const;

  std::string to_string() const;

  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b);

  Element& operator+=(const Element& b) { return *this = *this + b; }
  Element& operator-=(const Element& b) { return *this = *this - b; }

 private:
  using Payload = std::variant<Integer, Rational, Terms>;

  Element(const Ring* ring, Payload payload) : ring_(ring), value_(std::move(payload)) {}

  const Terms& terms_ref() const;

  const Ring* ring_;
  Payload value_;
};

std::ostream& operator<<(std::ostream& os, const Element& e);

/// Throws DescriptorMismatch unless both operands live in the same ring.
void require_same_ring(const Element& a, const Element& b);

/// a*a == a.
bool is_idempotent(const Element& a);

/// Membership in the Jacobson radical. Supported for Zloc (numerator divisible
/// by every localized prime), Zmod of a prime power, and matrix rings over
/// those (entrywise). Anything else throws UnsupportedRing.
bool jacobson_member(const Element& a);

}  // namespace cleandecomp
