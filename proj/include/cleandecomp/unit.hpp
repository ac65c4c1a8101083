#pragma once

#include <optional>
#include <vector>

#include "cleandecomp/element.hpp"
#include "cleandecomp/matrix.hpp"

namespace cleandecomp {

/// An invertible element together with its two-sided inverse and, for
/// matrix units, an optional factorization into elementary generators.
struct UnitWitness {
  Element value;
  Element inverse;
  std::optional<std::vector<Generator>> factorization;

  bool right_inverse_holds() const { return (value * inverse).is_one(); }
  bool left_inverse_holds() const { return (inverse * value).is_one(); }
  /// True when no factorization is attached, or when the ordered product of
  /// the generators equals value.
  bool factorization_holds() const;
};

/// Builds a witness after checking both inverse products; throws NotAUnit
/// if either product differs from 1.
UnitWitness make_unit_witness(Element value, Element inverse,
                              std::optional<std::vector<Generator>> factorization = std::nullopt);

/// Computes the two-sided inverse of a, or throws NotAUnit.
///
///   Z         -> +-1 only
///   Q         -> every nonzero element
///   Zmod:n    -> gcd with n is 1
///   Zloc      -> numerator avoids every localized prime
///   Poly      -> unit constant term plus nilpotent higher part
///   Mat       -> unit-pivot elimination (with generator factorization)
///   GrpC      -> circulant linear solve (over Q for Z/Zloc bases, then an
///                integrality / denominator check)
/// Finite rings fall back to solving the regular representation over each
/// prime-power component of the underlying Zmod, which is complete.
UnitWitness try_invert(const Element& a);

bool is_unit(const Element& a);

}  // namespace cleandecomp
