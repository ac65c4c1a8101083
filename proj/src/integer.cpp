#include "cleandecomp/integer.hpp"

#include "cleandecomp/error.hpp"

namespace cleandecomp {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DenominatorNotUnit: return "DenominatorNotUnit";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::NoUnitPivot: return "NoUnitPivot";
    case ErrorCode::InternalPatternViolation: return "InternalPatternViolation";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::TwoNotInvertible: return "TwoNotInvertible";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::NoScalarRule: return "NoScalarRule";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::BadFactorization: return "BadFactorization";
  }
  return "Unknown";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    factors.emplace_back(p, k);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
  Integer old_r = mod_floor(a, m), r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return std::nullopt;
  return mod_floor(old_s, m);
}

std::uint64_t to_u64(const Integer& value) {
  if (value < 0 || value > Integer(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorCode::BadInput, "integer out of 64-bit range");
  }
  return value.convert_to<std::uint64_t>();
}

}  // namespace cleandecomp
