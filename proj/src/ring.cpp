#include "cleandecomp/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>

#include "cleandecomp/error.hpp"

namespace cleandecomp {

class RingRegistry {
 public:
  static RingRegistry& instance() {
    static RingRegistry registry;
    return registry;
  }

  const Ring& intern(std::unique_ptr<Ring> candidate) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = rings_.try_emplace(candidate->name_);
    if (inserted) it->second = std::move(candidate);
    return *it->second;
  }

  static std::unique_ptr<Ring> make() { return std::unique_ptr<Ring>(new Ring()); }
  static Ring& access(std::unique_ptr<Ring>& r) { return *r; }

 private:
  std::mutex mutex_;
  std::map<std::string, std::unique_ptr<Ring>, std::less<>> rings_;
};

namespace {

std::string join_primes(const std::vector<std::uint64_t>& primes) {
  std::string out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(primes[i]);
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::uint64_t parse_count(std::string_view token, std::string_view what) {
  if (token.empty() || token.size() > 18 ||
      !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(ErrorCode::ParseError, "expected " + std::string(what) + ", got '" + std::string(token) + "'");
  }
  return std::stoull(std::string(token));
}

class DescriptorParser {
 public:
  explicit DescriptorParser(std::string_view text) {
    std::size_t start = 0;
    while (true) {
      std::size_t pos = text.find(':', start);
      tokens_.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }

  const Ring& parse_all() {
    const Ring& ring = parse();
    if (pos_ != tokens_.size()) throw Error(ErrorCode::ParseError, "trailing descriptor tokens");
    return ring;
  }

 private:
  std::string_view next() {
    if (pos_ >= tokens_.size()) throw Error(ErrorCode::ParseError, "truncated ring descriptor");
    return tokens_[pos_++];
  }

  const Ring& parse() {
    std::string_view head = next();
    if (head == "Z") return Ring::integers();
    if (head == "Q") return Ring::rationals();
    if (head == "Zmod") {
      std::string_view token = next();
      if (token.empty() ||
          !std::all_of(token.begin(), token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw Error(ErrorCode::ParseError, "bad modulus '" + std::string(token) + "'");
      }
      return Ring::integers_mod(Integer(std::string(token)));
    }
    if (head == "Zloc") {
      std::string_view list = next();
      std::vector<std::uint64_t> primes;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = list.find(',', start);
        primes.push_back(parse_count(list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start), "prime"));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return Ring::localized(std::move(primes));
    }
    if (head == "Poly") {
      const Ring& base = parse();
      std::string_view var = next();
      if (!is_identifier(var)) throw Error(ErrorCode::ParseError, "bad polynomial variable '" + std::string(var) + "'");
      return Ring::polynomial(base, std::string(var));
    }
    if (head == "Mat") {
      const Ring& base = parse();
      return Ring::matrix(base, parse_count(next(), "matrix size"));
    }
    if (head == "GrpC") {
      const Ring& base = parse();
      return Ring::group_ring(base, parse_count(next(), "group order"));
    }
    throw Error(ErrorCode::ParseError, "unknown ring '" + std::string(head) + "'");
  }

  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

const Ring& Ring::integers() {
  static const Ring& ring = [] {
    auto r = RingRegistry::make();
    r->kind_ = Kind::Integers;
    r->name_ = "Z";
    return std::ref(RingRegistry::instance().intern(std::move(r)));
  }();
  return ring;
}

const Ring& Ring::rationals() {
  static const Ring& ring = [] {
    auto r = RingRegistry::make();
    r->kind_ = Kind::Rationals;
    r->name_ = "Q";
    return std::ref(RingRegistry::instance().intern(std::move(r)));
  }();
  return ring;
}

const Ring& Ring::integers_mod(const Integer& modulus) {
  if (modulus < 2) throw Error(ErrorCode::BadInput, "modulus must be at least 2");
  auto r = RingRegistry::make();
  r->kind_ = Kind::IntegersMod;
  r->modulus_ = modulus;
  r->name_ = "Zmod:" + modulus.str();
  return RingRegistry::instance().intern(std::move(r));
}

const Ring& Ring::localized(std::vector<std::uint64_t> avoided_primes) {
  if (avoided_primes.empty()) throw Error(ErrorCode::BadInput, "localization needs at least one prime");
  std::sort(avoided_primes.begin(), avoided_primes.end());
  if (std::adjacent_find(avoided_primes.begin(), avoided_primes.end()) != avoided_primes.end()) {
    throw Error(ErrorCode::BadInput, "avoided primes must be distinct");
  }
  for (std::uint64_t p : avoided_primes) {
    if (!is_prime(p)) throw Error(ErrorCode::BadInput, std::to_string(p) + " is not prime");
  }
  auto r = RingRegistry::make();
  r->kind_ = Kind::LocalizedIntegers;
  r->name_ = "Zloc:" + join_primes(avoided_primes);
  r->primes_ = std::move(avoided_primes);
  return RingRegistry::instance().intern(std::move(r));
}

const Ring& Ring::polynomial(const Ring& base, std::string variable) {
  if (!is_identifier(variable)) throw Error(ErrorCode::BadInput, "bad polynomial variable");
  auto r = RingRegistry::make();
  r->kind_ = Kind::Polynomial;
  r->base_ = &base;
  r->name_ = "Poly:" + base.name() + ":" + variable;
  r->variable_ = std::move(variable);
  return RingRegistry::instance().intern(std::move(r));
}

const Ring& Ring::matrix(const Ring& base, std::size_t size) {
  if (size < 1) throw Error(ErrorCode::BadInput, "matrix size must be at least 1");
  auto r = RingRegistry::make();
  r->kind_ = Kind::Matrix;
  r->base_ = &base;
  r->dimension_ = size;
  r->name_ = "Mat:" + base.name() + ":" + std::to_string(size);
  return RingRegistry::instance().intern(std::move(r));
}

const Ring& Ring::group_ring(const Ring& base, std::size_t order) {
  if (order < 1) throw Error(ErrorCode::BadInput, "group order must be at least 1");
  auto r = RingRegistry::make();
  r->kind_ = Kind::GroupRingCyclic;
  r->base_ = &base;
  r->dimension_ = order;
  r->variable_ = "g";
  r->name_ = "GrpC:" + base.name() + ":" + std::to_string(order);
  return RingRegistry::instance().intern(std::move(r));
}

const Ring& Ring::parse(std::string_view text) { return DescriptorParser(text).parse_all(); }

const Ring& Ring::base() const {
  if (base_ == nullptr) throw Error(ErrorCode::UnsupportedRing, name_ + " has no base ring");
  return *base_;
}

bool Ring::is_scalar() const noexcept {
  return kind_ == Kind::Integers || kind_ == Kind::Rationals || kind_ == Kind::IntegersMod ||
         kind_ == Kind::LocalizedIntegers;
}

bool Ring::is_commutative() const noexcept {
  switch (kind_) {
    case Kind::Polynomial:
    case Kind::GroupRingCyclic:
      return base_->is_commutative();
    case Kind::Matrix:
      return dimension_ == 1 && base_->is_commutative();
    default:
      return true;
  }
}

bool Ring::is_domain() const noexcept {
  switch (kind_) {
    case Kind::Integers:
    case Kind::Rationals:
    case Kind::LocalizedIntegers:
      return true;
    case Kind::IntegersMod:
      return modulus_ <= Integer(std::numeric_limits<std::uint64_t>::max()) &&
             is_prime(modulus_.convert_to<std::uint64_t>());
    case Kind::Polynomial:
      return base_->is_domain();
    case Kind::Matrix:
      return dimension_ == 1 && base_->is_domain();
    case Kind::GroupRingCyclic:
      return dimension_ == 1 && base_->is_domain();
  }
  return false;
}

bool Ring::is_field() const noexcept {
  return kind_ == Kind::Rationals || (kind_ == Kind::IntegersMod && is_domain());
}

std::optional<std::uint64_t> Ring::cardinality() const {
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  switch (kind_) {
    case Kind::IntegersMod:
      if (modulus_ >= Integer(limit)) return std::nullopt;
      return modulus_.convert_to<std::uint64_t>();
    case Kind::Matrix:
    case Kind::GroupRingCyclic: {
      auto b = base_->cardinality();
      if (!b) return std::nullopt;
      std::size_t slots = kind_ == Kind::Matrix ? dimension_ * dimension_ : dimension_;
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < slots; ++i) {
        if (total > limit / *b) return std::nullopt;
        total *= *b;
      }
      return total;
    }
    default:
      return std::nullopt;
  }
}

bool Ring::is_finite() const {
  switch (kind_) {
    case Kind::IntegersMod: return true;
    case Kind::Matrix:
    case Kind::GroupRingCyclic: return base_->is_finite();
    default: return false;
  }
}

}  // namespace cleandecomp
