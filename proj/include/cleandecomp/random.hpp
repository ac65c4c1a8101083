#pragma once

#include <cstdint>
#include <random>

#include "cleandecomp/element.hpp"

namespace cleandecomp {

/// Engine used for every seeded run. Only raw engine output is consumed
/// (no std distributions), so sequences are identical across standard
/// library implementations.
using Rng = std::mt19937_64;

/// Uniform-ish integer in [lo, hi].
std::int64_t random_int(Rng& rng, std::int64_t lo, std::int64_t hi);

/// Small pseudo-random element: integers in [-5, 5], fractions with
/// denominators up to 6 (admissible ones only for Zloc), polynomials of
/// degree <= 2, and entrywise/coefficientwise recursion for Mat and GrpC.
Element random_element(const Ring& ring, Rng& rng);

/// Seed from CLEANDECOMP_SEED, default 0.
std::uint64_t seed_from_environment();

}  // namespace cleandecomp
