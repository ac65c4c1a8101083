#pragma once

#include "cleandecomp/matrix.hpp"
#include "cleandecomp/unit.hpp"

namespace cleandecomp {

/// Gauss-Jordan elimination that only ever divides by unit pivots.
///
/// At each column the pivot is chosen among the remaining rows with
/// preference +1, then -1, then the first other unit. Every step is a left
/// multiplication (swap, row scaling, transvection), so the procedure is
/// valid over noncommutative entry rings. The returned witness holds m as a
/// Mat:<ring>:<n> element, its verified two-sided inverse, and the
/// generator factorization m = G1 * ... * Gk.
///
/// Throws NoUnitPivot when some column has no unit entry left.
UnitWitness unit_pivot_invert(const Matrix& m);

/// Inverse of [[A, B], [0, D]] as [[A^-1, -A^-1 B D^-1], [0, D^-1]], or of
/// the lower form [[A, 0], [C, D]] as [[A^-1, 0], [-D^-1 C A^-1, D^-1]].
/// The block sizes are taken from a_inv and d_inv. Both products with u are
/// checked against the identity.
Matrix block_triangular_inverse(const Matrix& u, const Matrix& a_inv, const Matrix& d_inv);

}  // namespace cleandecomp
