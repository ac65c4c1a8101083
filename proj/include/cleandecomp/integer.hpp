#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace cleandecomp {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Least nonnegative residue of a modulo m (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);

/// Inverse of a modulo m via the extended Euclidean algorithm, or nothing
/// when gcd(a, m) != 1.
std::optional<Integer> mod_inverse(const Integer& a, const Integer& m);

/// Exact conversion; throws BadInput if the value does not fit.
std::uint64_t to_u64(const Integer& value);

}  // namespace cleandecomp
