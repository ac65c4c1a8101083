#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cleandecomp/element.hpp"

namespace cleandecomp {

inline constexpr std::uint64_t kEnumerationCap = 1000000;

/// Every element of a finite ring, or of a corner ring fR (f a central
/// idempotent, identity f) standing in for a quotient. Subsets are stored as
/// positions into `elements`.
struct FiniteRingTable {
  const Ring* ring;
  Element identity;
  std::vector<Element> elements;
  std::vector<std::size_t> units;
  std::vector<std::size_t> idempotents;
  std::vector<std::size_t> central_idempotents;
  /// Mixed-radix code (see encode) -> position in `elements`.
  std::unordered_map<std::uint64_t, std::size_t> position;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> find(const Element& e) const;
};

/// Position of e in the enumeration order of its ring: coordinates of the
/// innermost Zmod, most significant last.
std::uint64_t encode(const Element& e);
Element decode(const Ring& ring, std::uint64_t code);

/// Full table. Throws NotFinite for infinite descriptors and TooLarge above
/// the enumeration cap.
FiniteRingTable enumerate(const Ring& ring);

struct CleanWitness {
  Element idempotent;
  std::vector<Element> units;
};

/// Exhaustive: is a = e + u1 + ... + un for an idempotent e and units ui of
/// the table? A witness comes back when it is.
std::optional<CleanWitness> is_element_n_clean(const Element& a, std::size_t n, const FiniteRingTable& table);

/// The same question for every element at once (indexed like
/// table.elements); shares one table of n-fold unit sums.
std::vector<std::optional<CleanWitness>> clean_table(const FiniteRingTable& table, std::size_t n);

bool ring_is_n_clean(const FiniteRingTable& table, std::size_t n);

/// Over Z: units are +-1 and idempotents 0, 1, so the reachable set is
/// finite and the answer complete.
bool integer_n_clean_check(const Integer& a, std::size_t n);

struct PierceIdeal {
  Element generator;               // central idempotent f, the ideal is fR
  std::vector<Element> elements;
};

struct PierceStalkReport {
  std::vector<PierceIdeal> pierce_ideals;
  /// stalks[i] is R / pierce_ideals[i], realized as the corner (1 - f)R.
  std::vector<FiniteRingTable> stalks;
};

PierceStalkReport pierce_stalks(const FiniteRingTable& table);

}  // namespace cleandecomp
