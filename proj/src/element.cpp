#include "cleandecomp/element.hpp"

#include <cctype>
#include <ostream>

#include "cleandecomp/error.hpp"

namespace cleandecomp {

namespace {

using Kind = Ring::Kind;

std::size_t slot_count(const Ring& ring) {
  return ring.kind() == Kind::Matrix ? ring.dimension() * ring.dimension() : ring.dimension();
}

bool denominator_avoids(const Ring& ring, const Integer& den) {
  for (std::uint64_t p : ring.avoided_primes()) {
    if (den % p == 0) return false;
  }
  return true;
}

void trim(Element::Terms& coeffs) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

}  // namespace

void require_same_ring(const Element& a, const Element& b) {
  if (!(a.ring() == b.ring())) {
    throw Error(ErrorCode::DescriptorMismatch, a.ring().name() + " vs " + b.ring().name());
  }
}

Element Element::zero(const Ring& ring) { return from_int(ring, 0); }

Element Element::one(const Ring& ring) { return from_int(ring, 1); }

Element Element::from_int(const Ring& ring, const Integer& value) {
  switch (ring.kind()) {
    case Kind::Integers:
      return Element(&ring, value);
    case Kind::IntegersMod:
      return Element(&ring, mod_floor(value, ring.modulus()));
    case Kind::Rationals:
    case Kind::LocalizedIntegers:
      return Element(&ring, Rational(value));
    case Kind::Polynomial: {
      Terms coeffs;
      Element c = from_int(ring.base(), value);
      if (!c.is_zero()) coeffs.push_back(std::move(c));
      return Element(&ring, std::move(coeffs));
    }
    case Kind::Matrix: {
      const std::size_t n = ring.dimension();
      Element z = zero(ring.base());
      Terms entries(n * n, z);
      Element c = from_int(ring.base(), value);
      for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = c;
      return Element(&ring, std::move(entries));
    }
    case Kind::GroupRingCyclic: {
      Terms coeffs(ring.dimension(), zero(ring.base()));
      coeffs[0] = from_int(ring.base(), value);
      return Element(&ring, std::move(coeffs));
    }
  }
  throw Error(ErrorCode::UnsupportedRing, ring.name());
}

Element Element::from_rational(const Ring& ring, const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  switch (ring.kind()) {
    case Kind::Integers:
      if (den != 1) throw Error(ErrorCode::DenominatorNotUnit, value.str() + " is not an integer");
      return Element(&ring, num);
    case Kind::IntegersMod: {
      auto inv = mod_inverse(den, ring.modulus());
      if (!inv) throw Error(ErrorCode::DenominatorNotUnit, den.str() + " is not invertible in " + ring.name());
      return Element(&ring, mod_floor(num * *inv, ring.modulus()));
    }
    case Kind::Rationals:
      return Element(&ring, value);
    case Kind::LocalizedIntegers:
      if (!denominator_avoids(ring, den)) {
        throw Error(ErrorCode::DenominatorNotUnit, value.str() + " has an avoided prime in its denominator in " + ring.name());
      }
      return Element(&ring, value);
    case Kind::Polynomial:
    case Kind::Matrix:
    case Kind::GroupRingCyclic: {
      Element scalar = from_rational(ring.base(), value);
      Element unit = one(ring);
      Terms terms(unit.terms().begin(), unit.terms().end());
      for (auto& t : terms) {
        if (!t.is_zero()) t = t * scalar;
      }
      return from_terms(ring, std::move(terms));
    }
  }
  throw Error(ErrorCode::UnsupportedRing, ring.name());
}

Element Element::from_terms(const Ring& ring, Terms terms) {
  if (ring.is_scalar()) throw Error(ErrorCode::UnsupportedRing, ring.name() + " has no terms");
  for (const auto& t : terms) {
    if (!(t.ring() == ring.base())) {
      throw Error(ErrorCode::DescriptorMismatch, "term in " + t.ring().name() + ", expected " + ring.base().name());
    }
  }
  if (ring.kind() == Kind::Polynomial) {
    trim(terms);
  } else if (terms.size() != slot_count(ring)) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(slot_count(ring)) + " terms for " + ring.name());
  }
  return Element(&ring, std::move(terms));
}

bool Element::is_zero() const {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Terms>) {
          for (const auto& t : v) {
            if (!t.is_zero()) return false;
          }
          return true;
        } else {
          return v == 0;
        }
      },
      value_);
}

bool Element::is_one() const { return *this == one(*ring_); }

const Integer& Element::integer() const {
  if (const auto* v = std::get_if<Integer>(&value_)) return *v;
  throw Error(ErrorCode::UnsupportedRing, ring_->name() + " element is not an integer payload");
}

const Rational& Element::rational() const {
  if (const auto* v = std::get_if<Rational>(&value_)) return *v;
  throw Error(ErrorCode::UnsupportedRing, ring_->name() + " element is not a rational payload");
}

const Element::Terms& Element::terms_ref() const {
  if (const auto* v = std::get_if<Terms>(&value_)) return *v;
  throw Error(ErrorCode::UnsupportedRing, ring_->name() + " element has no terms");
}

std::span<const Element> Element::terms() const { return terms_ref(); }

Element Element::operator-() const {
  switch (ring_->kind()) {
    case Kind::Integers:
      return Element(ring_, Integer(-integer()));
    case Kind::IntegersMod:
      return Element(ring_, mod_floor(-integer(), ring_->modulus()));
    case Kind::Rationals:
    case Kind::LocalizedIntegers:
      return Element(ring_, Rational(-rational()));
    default: {
      Terms out;
      out.reserve(terms_ref().size());
      for (const auto& t : terms_ref()) out.push_back(-t);
      return Element(ring_, std::move(out));
    }
  }
}

Element operator+(const Element& a, const Element& b) {
  require_same_ring(a, b);
  const Ring& ring = a.ring();
  switch (ring.kind()) {
    case Kind::Integers:
      return Element(&ring, Integer(a.integer() + b.integer()));
    case Kind::IntegersMod: {
      Integer s = a.integer() + b.integer();
      if (s >= ring.modulus()) s -= ring.modulus();
      return Element(&ring, std::move(s));
    }
    case Kind::Rationals:
    case Kind::LocalizedIntegers:
      return Element(&ring, Rational(a.rational() + b.rational()));
    case Kind::Polynomial: {
      const auto& x = a.terms_ref();
      const auto& y = b.terms_ref();
      Element::Terms out;
      out.reserve(std::max(x.size(), y.size()));
      for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
        if (i < x.size() && i < y.size()) {
          out.push_back(x[i] + y[i]);
        } else {
          out.push_back(i < x.size() ? x[i] : y[i]);
        }
      }
      trim(out);
      return Element(&ring, std::move(out));
    }
    default: {
      const auto& x = a.terms_ref();
      const auto& y = b.terms_ref();
      Element::Terms out;
      out.reserve(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] + y[i]);
      return Element(&ring, std::move(out));
    }
  }
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element operator*(const Element& a, const Element& b) {
  require_same_ring(a, b);
  const Ring& ring = a.ring();
  switch (ring.kind()) {
    case Kind::Integers:
      return Element(&ring, Integer(a.integer() * b.integer()));
    case Kind::IntegersMod:
      return Element(&ring, Integer(a.integer() * b.integer() % ring.modulus()));
    case Kind::Rationals:
    case Kind::LocalizedIntegers:
      return Element(&ring, Rational(a.rational() * b.rational()));
    case Kind::Polynomial: {
      const auto& x = a.terms_ref();
      const auto& y = b.terms_ref();
      if (x.empty() || y.empty()) return Element(&ring, Element::Terms{});
      Element::Terms out(x.size() + y.size() - 1, Element::zero(ring.base()));
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
          if (y[j].is_zero()) continue;
          out[i + j] += x[i] * y[j];
        }
      }
      trim(out);
      return Element(&ring, std::move(out));
    }
    case Kind::Matrix: {
      const std::size_t n = ring.dimension();
      const auto& x = a.terms_ref();
      const auto& y = b.terms_ref();
      Element::Terms out(n * n, Element::zero(ring.base()));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          const Element& lhs = x[i * n + k];
          if (lhs.is_zero()) continue;
          for (std::size_t j = 0; j < n; ++j) {
            const Element& rhs = y[k * n + j];
            if (rhs.is_zero()) continue;
            out[i * n + j] += lhs * rhs;
          }
        }
      }
      return Element(&ring, std::move(out));
    }
    case Kind::GroupRingCyclic: {
      const std::size_t n = ring.dimension();
      const auto& x = a.terms_ref();
      const auto& y = b.terms_ref();
      Element::Terms out(n, Element::zero(ring.base()));
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (y[j].is_zero()) continue;
          out[(i + j) % n] += x[i] * y[j];
        }
      }
      return Element(&ring, std::move(out));
    }
  }
  throw Error(ErrorCode::UnsupportedRing, ring.name());
}

bool operator==(const Element& a, const Element& b) {
  if (!(a.ring() == b.ring())) return false;
  return a.value_ == b.value_;
}

std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.to_string(); }

bool is_idempotent(const Element& a) { return a * a == a; }

bool jacobson_member(const Element& a) {
  const Ring& ring = a.ring();
  switch (ring.kind()) {
    case Kind::LocalizedIntegers: {
      const Integer num = boost::multiprecision::numerator(a.rational());
      for (std::uint64_t p : ring.avoided_primes()) {
        if (num % p != 0) return false;
      }
      return true;
    }
    case Kind::IntegersMod: {
      auto factors = factorize(to_u64(ring.modulus()));
      if (factors.size() != 1) {
        throw Error(ErrorCode::UnsupportedRing, "Jacobson membership needs a prime-power modulus, got " + ring.name());
      }
      return a.integer() % factors.front().first == 0;
    }
    case Kind::Matrix:
      if (ring.base().kind() != Kind::LocalizedIntegers && ring.base().kind() != Kind::IntegersMod) break;
      for (const auto& entry : a.terms()) {
        if (!jacobson_member(entry)) return false;
      }
      return true;
    default:
      break;
  }
  throw Error(ErrorCode::UnsupportedRing, "Jacobson membership is not supported for " + ring.name());
}

}  // namespace cleandecomp
