#include "cleandecomp/random.hpp"

#include <cstdlib>
#include <string>

#include "cleandecomp/error.hpp"

namespace cleandecomp {

std::int64_t random_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

Element random_element(const Ring& ring, Rng& rng) {
  using Kind = Ring::Kind;
  switch (ring.kind()) {
    case Kind::Integers:
      return Element::from_int(ring, random_int(rng, -5, 5));
    case Kind::IntegersMod: {
      Integer r = Integer(rng()) % ring.modulus();
      return Element::from_int(ring, r);
    }
    case Kind::Rationals:
      return Element::from_rational(ring, Rational(random_int(rng, -5, 5), random_int(rng, 1, 6)));
    case Kind::LocalizedIntegers: {
      std::int64_t den = 1;
      for (int attempt = 0; attempt < 8; ++attempt) {
        std::int64_t candidate = random_int(rng, 1, 6);
        bool ok = true;
        for (std::uint64_t p : ring.avoided_primes()) ok = ok && candidate % static_cast<std::int64_t>(p) != 0;
        if (ok) {
          den = candidate;
          break;
        }
      }
      return Element::from_rational(ring, Rational(random_int(rng, -5, 5), den));
    }
    case Kind::Polynomial: {
      const auto degree = static_cast<std::size_t>(random_int(rng, 0, 2));
      Element::Terms coeffs;
      for (std::size_t i = 0; i <= degree; ++i) coeffs.push_back(random_element(ring.base(), rng));
      return Element::from_terms(ring, std::move(coeffs));
    }
    case Kind::Matrix:
    case Kind::GroupRingCyclic: {
      const std::size_t n = ring.kind() == Kind::Matrix ? ring.dimension() * ring.dimension() : ring.dimension();
      Element::Terms terms;
      for (std::size_t i = 0; i < n; ++i) terms.push_back(random_element(ring.base(), rng));
      return Element::from_terms(ring, std::move(terms));
    }
  }
  throw Error(ErrorCode::UnsupportedRing, ring.name());
}

std::uint64_t seed_from_environment() {
  const char* raw = std::getenv("CLEANDECOMP_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    std::size_t used = 0;
    unsigned long long value = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadInput, std::string("CLEANDECOMP_SEED is not an unsigned integer: ") + raw);
  }
}

}  // namespace cleandecomp
