#pragma once

#include <string>
#include <vector>

#include "cleandecomp/matrix.hpp"
#include "cleandecomp/unit.hpp"

namespace cleandecomp {

/// target = idempotent + units[0] + ... + units[n-1]. Matrices are carried
/// as elements of the corresponding Mat ring.
struct CleanDecomposition {
  Element target;
  Element idempotent;
  std::vector<UnitWitness> units;
};

struct Check {
  std::string name;
  bool passed;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool all_passed() const;
};

/// Two-unit decomposition of a 2 x 2 matrix over any ring.
///
///   E = [[a11-1, 2-a11], [a11-1, 2-a11]]
///   P (A - E) Q = diag(1, c) = [[1,1],[1,0]] + [[0,-1],[-1,c]]
///
/// with P, Q transvections, so the units are P^-1 K Q^-1 for the two
/// summands K. Every unit carries a generator factorization.
CleanDecomposition decompose_2x2(const Matrix& a);

/// Two-unit decomposition of a 3 x 3 matrix over any ring. F has three equal
/// rows (b11-1, b22-1, 3-b11-b22); after the transvections T, V (rows) and
/// W (columns), M = V T (B - F) W has zeros at (1,2), (2,3), (3,1) and a one
/// at (2,2) (1-based), which splits as a sum of two units with +-1 pivots.
/// Throws InternalPatternViolation if that shape ever fails to appear.
CleanDecomposition decompose_3x3(const Matrix& b);

/// Any n >= 2: the leading 2 x 2 block (3 x 3 when n == 3) is decomposed
/// directly, the rest recursively, and the off-diagonal blocks are absorbed
/// into the first unit (upper block) and the second unit (lower block).
/// Throws SizeTooSmall for n < 2.
CleanDecomposition decompose_nxn(const Matrix& a);

/// Re-checks idempotency, both inverse products of every unit, any
/// generator factorizations and the exact sum. Never throws on bad data.
VerificationReport verify_decomposition(const CleanDecomposition& d);

/// e + u1 + ... + un = (1 - e) + u1 + ... + un + (2e - 1); (2e - 1)^2 = 1.
CleanDecomposition lengthen_decomposition(const CleanDecomposition& d);

/// Given h = (a + 1)/2 = e + u1 + ... + un, returns the units
/// 2e - 1, 2u1, ..., 2un, whose sum is a. Throws TwoNotInvertible when 2 is
/// not a unit and BadInput when the decomposition's target is not h.
std::vector<UnitWitness> good_units_from_clean(const Element& a, const CleanDecomposition& h_decomposition);

}  // namespace cleandecomp
