#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cleandecomp/integer.hpp"

namespace cleandecomp {

/// Descriptor of one of the supported concrete rings.
///
/// Descriptors are interned: every structurally distinct ring exists exactly
/// once for the lifetime of the process, so two descriptors are equal iff
/// their addresses are equal. Instances are immutable and safe to share
/// between threads.
///
/// Textual form (also accepted by parse):
///   Z, Q, Zmod:6, Zloc:2,3, Poly:Q:x, Mat:Zmod:2:2, GrpC:Zloc:7:3
class Ring {
 public:
  enum class Kind {
    Integers,
    Rationals,
    IntegersMod,
    LocalizedIntegers,
    Polynomial,
    Matrix,
    GroupRingCyclic,
  };

  static const Ring& integers();
  static const Ring& rationals();
  static const Ring& integers_mod(const Integer& modulus);
  /// Rationals whose reduced denominator is divisible by none of the primes.
  static const Ring& localized(std::vector<std::uint64_t> avoided_primes);
  static const Ring& polynomial(const Ring& base, std::string variable);
  static const Ring& matrix(const Ring& base, std::size_t size);
  static const Ring& group_ring(const Ring& base, std::size_t order);

  static const Ring& parse(std::string_view text);

  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  /// Entry/coefficient ring of Polynomial, Matrix and GroupRingCyclic.
  const Ring& base() const;
  /// Matrix size or group order.
  std::size_t dimension() const noexcept { return dimension_; }
  const Integer& modulus() const noexcept { return modulus_; }
  std::span<const std::uint64_t> avoided_primes() const noexcept { return primes_; }
  const std::string& variable() const noexcept { return variable_; }

  bool is_scalar() const noexcept;
  bool is_commutative() const noexcept;
  /// True when the ring provably has no zero divisors.
  bool is_domain() const noexcept;
  /// True for Q and Zmod:p.
  bool is_field() const noexcept;
  /// Number of elements when finite and below 2^63.
  std::optional<std::uint64_t> cardinality() const;
  bool is_finite() const;

 private:
  friend class RingRegistry;
  Ring() = default;

  Kind kind_ = Kind::Integers;
  std::string name_;
  const Ring* base_ = nullptr;
  std::size_t dimension_ = 0;
  Integer modulus_;
  std::vector<std::uint64_t> primes_;
  std::string variable_;
};

inline bool operator==(const Ring& a, const Ring& b) noexcept { return &a == &b; }

}  // namespace cleandecomp
