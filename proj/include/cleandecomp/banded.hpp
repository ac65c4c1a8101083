#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cleandecomp/clean.hpp"
#include "cleandecomp/element.hpp"

namespace cleandecomp {

/// An infinite matrix (rows and columns indexed from 1) that is zero
/// outside the band |i - j| <= bandwidth. Entries are produced on demand
/// by a pure generator; nothing is stored.
class BandedOperator {
 public:
  using Generator = std::function<Element(std::size_t, std::size_t)>;

  BandedOperator(const Ring& base, std::size_t bandwidth, Generator entry);

  const Ring& base() const noexcept { return *base_; }
  std::size_t bandwidth() const noexcept { return bandwidth_; }

  /// Zero outside the band without consulting the generator.
  Element operator()(std::size_t i, std::size_t j) const;
  /// The generator itself, for band-contract spot checks.
  Element raw(std::size_t i, std::size_t j) const { return entry_(i, j); }

  /// Samples out-of-band positions within [1, window]^2 and reports whether
  /// the generator returned zero on all of them.
  bool band_contract_holds(std::size_t window) const;

  static BandedOperator zero(const Ring& base);
  static BandedOperator identity(const Ring& base);
  /// entry(i, j) = 1 iff i = j + 1.
  static BandedOperator shift(const Ring& base);
  /// Ones on the three central diagonals.
  static BandedOperator tridiagonal(const Ring& base);
  /// Pseudo-random band entries derived from (seed, i, j) alone.
  static BandedOperator random(const Ring& base, std::size_t bandwidth, std::uint64_t seed);
  /// Each band is (offset i - j, periodic pattern indexed by the column).
  static BandedOperator from_bands(const Ring& base, std::vector<std::pair<long, std::vector<Element>>> bands);

  friend BandedOperator operator+(const BandedOperator& a, const BandedOperator& b);

 private:
  const Ring* base_;
  std::size_t bandwidth_;
  Generator entry_;
};

/// r_0 = 1, r_{s+1} = r_s + b + 1; block s is [r_s, r_{s+1}).
class StrideSequence {
 public:
  explicit StrideSequence(std::size_t bandwidth) : step_(bandwidth + 1) {}
  std::size_t r(std::size_t s) const { return 1 + s * step_; }
  /// s with r_s <= i < r_{s+1}.
  std::size_t block_of(std::size_t i) const { return (i - 1) / step_; }
  bool in_even_block(std::size_t i) const { return block_of(i) % 2 == 0; }

 private:
  std::size_t step_;
};

struct AbdSplit {
  BandedOperator eta;    // row > column
  BandedOperator rho;    // row < column
  BandedOperator delta;  // diagonal
};

AbdSplit split_abd(const BandedOperator& phi);

enum class SplitKind { Eta, Rho };

/// Eta parts are split by the block parity of the column (source) index,
/// rho parts by the block parity of the row (target) index; the even-block
/// half comes first.
std::pair<BandedOperator, BandedOperator> alternate_split(const BandedOperator& part, SplitKind kind,
                                                          const StrideSequence& strides);

/// Per-index 2-clean data of the diagonal: delta(i,i) = u1 + u2 + e.
struct DiagonalEntry {
  Element u1, u1_inverse;
  Element u2, u2_inverse;
  Element e;
};

/// Memoized (thread-safe) evaluation of the diagonal decomposition.
class DiagonalDecomposition {
 public:
  explicit DiagonalDecomposition(BandedOperator delta);
  const DiagonalEntry& at(std::size_t i) const;
  const Ring& base() const { return delta_.base(); }

 private:
  struct Cache;
  BandedOperator delta_;
  std::shared_ptr<Cache> cache_;
};

/// True when delta_decompose can work directly over this base: local rings
/// with a scalar rule (Q, Zmod of a prime power, Zloc at one prime) or
/// matrix rings of size >= 2 over anything.
bool has_diagonal_rule(const Ring& base);

/// delta = delta1 + delta2 + deltaE entrywise, delta1/delta2 diagonal of
/// units (inverses available through the returned cache), deltaE diagonal
/// of idempotents. Scalar rule: a = 1 + (a - 1) if a - 1 is a unit, else
/// 0 + a, then lengthened to e' = 1 - e with units [u, 2e - 1]. Matrix
/// bases use the explicit matrix decompositions entrywise.
/// Throws NoScalarRule otherwise.
struct DeltaParts {
  BandedOperator delta1, delta2, delta_e;
  std::shared_ptr<const DiagonalDecomposition> diagonal;
};
DeltaParts delta_decompose(const BandedOperator& delta);

/// Pairs indices (2i-1, 2i) into one index over Mat:<base>:2; the new
/// bandwidth is ceil(b / 2).
BandedOperator block2(const BandedOperator& phi);

/// A unit of the form delta (1 + N) with N = delta^-1 * nilpotent_part
/// locally nilpotent.
struct DecomposedUnit {
  BandedOperator value;
  BandedOperator nilpotent_part;            // eta1 + rho2, or eta2 + rho1
  std::function<Element(std::size_t)> diagonal_inverse;
};

struct BandedDecomposition {
  BandedOperator phi;  // the operator actually decomposed (after block2)
  bool blocked;
  StrideSequence strides;
  DecomposedUnit u1;
  DecomposedUnit u2;
  BandedOperator e;
};

/// phi = (eta1 + rho2 + delta1) + (eta2 + rho1 + delta2) + deltaE.
/// Applies block2 first when the base has no diagonal rule.
BandedDecomposition theorem8_decompose(const BandedOperator& phi);

using SparseColumn = std::map<std::size_t, Element>;

/// Column j of U^-1 = (1 + N)^-1 delta^-1 as sum_t (-N)^t delta^-1 e_j.
/// `cap` bounds the number of nonzero applications of N; default
/// 10 (j + b + 2). Throws CapExceeded when the iterate is still nonzero.
SparseColumn neumann_inverse_column(const DecomposedUnit& u, std::size_t j, std::size_t cap);
SparseColumn neumann_inverse_column(const DecomposedUnit& u, std::size_t j);

/// U * v for a finitely supported column v.
SparseColumn apply_to_column(const BandedOperator& op, const SparseColumn& v);

/// Reconstruction on [1, W]^2, idempotency of E, inverse columns (both
/// sides) for j <= inverse_columns, nilpotence termination and the band
/// contract of every part.
VerificationReport window_verify(const BandedDecomposition& d, std::size_t window, std::size_t inverse_columns);
VerificationReport window_verify(const BandedDecomposition& d, std::size_t window);

}  // namespace cleandecomp
