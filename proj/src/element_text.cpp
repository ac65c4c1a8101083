#include <cctype>

#include "cleandecomp/element.hpp"
#include "cleandecomp/error.hpp"

namespace cleandecomp {

namespace {

using Kind = Ring::Kind;

bool is_compound(const Ring& ring) {
  return ring.kind() == Kind::Polynomial || ring.kind() == Kind::GroupRingCyclic;
}

std::string rational_text(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

std::string power_text(const std::string& var, std::size_t k) {
  return k == 1 ? var : var + "^" + std::to_string(k);
}

std::string sum_text(const Element& e) {
  const Ring& ring = e.ring();
  const std::string& var = ring.variable();
  const bool wrap = is_compound(ring.base());
  std::string out;
  auto coeffs = e.terms();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Element& c = coeffs[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    if (wrap) cs = "(" + cs + ")";
    std::string term;
    if (k == 0) {
      term = cs;
    } else if (cs == "1") {
      term = power_text(var, k);
    } else if (cs == "-1") {
      term = "-" + power_text(var, k);
    } else {
      term = cs + "*" + power_text(var, k);
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

class ElementParser {
 public:
  explicit ElementParser(std::string_view text) : text_(text) {}

  Element parse_all(const Ring& ring) {
    Element e = parse(ring);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  Integer digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) return {};
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational number() {
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    Integer num = digits();
    Rational value(num);
    skip_ws();
    if (accept('/')) {
      Integer den = digits();
      if (den == 0) fail("zero denominator");
      value = Rational(num, den);
    }
    return negative ? Rational(-value) : value;
  }

  Element parse(const Ring& ring) {
    if (!is_compound(ring) && peek() == '(') {
      ++pos_;
      Element inner = parse(ring);
      expect(')');
      return inner;
    }
    switch (ring.kind()) {
      case Kind::Integers:
      case Kind::Rationals:
      case Kind::IntegersMod:
      case Kind::LocalizedIntegers:
        return Element::from_rational(ring, number());
      case Kind::Matrix:
        return matrix(ring);
      case Kind::Polynomial:
      case Kind::GroupRingCyclic:
        return sum(ring);
    }
    fail("unsupported ring");
  }

  Element matrix(const Ring& ring) {
    const std::size_t n = ring.dimension();
    Element::Terms entries;
    expect('[');
    for (std::size_t i = 0; i < n; ++i) {
      if (i) expect(',');
      expect('[');
      for (std::size_t j = 0; j < n; ++j) {
        if (j) expect(',');
        entries.push_back(parse(ring.base()));
      }
      expect(']');
    }
    expect(']');
    return Element::from_terms(ring, std::move(entries));
  }

  std::size_t exponent() {
    if (!accept('^')) return 1;
    bool paren = accept('(');
    Integer k = digits();
    if (paren) expect(')');
    if (k > 1000000) fail("exponent too large");
    return k.convert_to<std::size_t>();
  }

  Element monomial(const Ring& ring, const Element& coeff, std::size_t power) {
    if (ring.kind() == Kind::GroupRingCyclic) {
      Element::Terms terms(ring.dimension(), Element::zero(ring.base()));
      terms[power % ring.dimension()] = coeff;
      return Element::from_terms(ring, std::move(terms));
    }
    Element::Terms terms(power + 1, Element::zero(ring.base()));
    terms[power] = coeff;
    return Element::from_terms(ring, std::move(terms));
  }

  Element coefficient(const Ring& base) {
    if (base.kind() == Kind::Matrix || peek() == '(') return parse(base);
    return Element::from_rational(base, number());
  }

  // A parenthesized group is a coefficient when it parses in the base ring,
  // otherwise a nested sum in the ring itself.
  Element parenthesized(const Ring& ring) {
    std::size_t save = pos_;
    try {
      ++pos_;
      Element coeff = parse(ring.base());
      expect(')');
      if (accept('*')) return monomial(ring, coeff, variable_power(ring));
      return monomial(ring, coeff, 0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParseError) throw;
    }
    pos_ = save + 1;
    Element whole = parse(ring);
    expect(')');
    if (accept('*')) return whole * monomial(ring, Element::one(ring.base()), variable_power(ring));
    return whole;
  }

  std::size_t variable_power(const Ring& ring) {
    std::string var = identifier();
    if (var != ring.variable()) fail("expected variable '" + ring.variable() + "'");
    return exponent();
  }

  // Parses one term: coefficient, coefficient*var^k, or var^k.
  Element term(const Ring& ring) {
    const Ring& base = ring.base();
    skip_ws();
    std::size_t save = pos_;
    std::string ident = identifier();
    if (!ident.empty()) {
      if (ident != ring.variable()) fail("unknown variable '" + ident + "'");
      return monomial(ring, Element::one(base), exponent());
    }
    pos_ = save;
    if (peek() == '(') return parenthesized(ring);
    Element coeff = coefficient(base);
    if (accept('*')) return monomial(ring, coeff, variable_power(ring));
    return monomial(ring, coeff, 0);
  }

  Element continue_sum(const Ring& ring, Element acc) {
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term(ring);
      } else if (c == '-') {
        ++pos_;
        acc = acc - term(ring);
      } else {
        return acc;
      }
    }
  }

  Element sum(const Ring& ring) {
    Element acc = Element::zero(ring);
    if (accept('-')) {
      acc = acc - term(ring);
    } else {
      accept('+');
      acc = acc + term(ring);
    }
    return continue_sum(ring, std::move(acc));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Element::to_string() const {
  switch (ring_->kind()) {
    case Kind::Integers:
    case Kind::IntegersMod:
      return integer().str();
    case Kind::Rationals:
    case Kind::LocalizedIntegers:
      return rational_text(rational());
    case Kind::Matrix: {
      const std::size_t n = ring_->dimension();
      auto entries = terms();
      std::string out = "[";
      for (std::size_t i = 0; i < n; ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < n; ++j) {
          if (j) out += ',';
          out += entries[i * n + j].to_string();
        }
        out += ']';
      }
      return out + "]";
    }
    case Kind::Polynomial:
    case Kind::GroupRingCyclic:
      return sum_text(*this);
  }
  return "?";
}

Element Element::parse(const Ring& ring, std::string_view text) { return ElementParser(text).parse_all(ring); }

}  // namespace cleandecomp
