#include "cleandecomp/unit.hpp"

#include "cleandecomp/error.hpp"
#include "cleandecomp/linear.hpp"

namespace cleandecomp {

namespace {

using Kind = Ring::Kind;

[[noreturn]] void not_a_unit(const Element& a, const std::string& why) {
  throw Error(ErrorCode::NotAUnit, a.to_string() + " in " + a.ring().name() + ": " + why);
}

// The innermost Zmod of a finite ring built from Zmod by Mat/GrpC nesting.
const Ring& scalar_core(const Ring& ring) {
  const Ring* r = &ring;
  while (!r->is_scalar()) r = &r->base();
  return *r;
}

void flatten(const Element& e, std::vector<Integer>& out) {
  if (e.ring().is_scalar()) {
    out.push_back(e.integer());
    return;
  }
  for (const auto& t : e.terms()) flatten(t, out);
}

Element unflatten(const Ring& ring, const std::vector<Integer>& coords, std::size_t& pos) {
  if (ring.is_scalar()) return Element::from_int(ring, coords[pos++]);
  const std::size_t slots = ring.kind() == Kind::Matrix ? ring.dimension() * ring.dimension() : ring.dimension();
  Element::Terms terms;
  terms.reserve(slots);
  for (std::size_t i = 0; i < slots; ++i) terms.push_back(unflatten(ring.base(), coords, pos));
  return Element::from_terms(ring, std::move(terms));
}

// Solves a * y = 1 through the regular representation y -> a*y, which is a
// linear map over Zmod:m. A right inverse in a finite ring is two-sided.
// Elimination with unit pivots is complete over each local factor Zmod:p^k.
UnitWitness invert_via_regular_representation(const Element& a) {
  const Ring& ring = a.ring();
  const Ring& core = scalar_core(ring);
  std::vector<Integer> one_coords;
  flatten(Element::one(ring), one_coords);
  const std::size_t d = one_coords.size();

  std::vector<std::vector<Integer>> columns;
  columns.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Integer> basis(d, 0);
    basis[j] = 1;
    std::size_t pos = 0;
    std::vector<Integer> col;
    flatten(a * unflatten(ring, basis, pos), col);
    columns.push_back(std::move(col));
  }

  const Integer& m = core.modulus();
  std::vector<Integer> solution(d, 0);
  Integer modulus_so_far = 1;
  for (auto [p, k] : factorize(to_u64(m))) {
    Integer q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    const Ring& local = Ring::integers_mod(q);
    Matrix l(local, d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) l(i, j) = Element::from_int(local, columns[j][i]);
    }
    Matrix rhs(local, d, 1);
    for (std::size_t i = 0; i < d; ++i) rhs(i, 0) = Element::from_int(local, one_coords[i]);
    Matrix y(local, d, 1);
    try {
      y = Matrix::from_element(unit_pivot_invert(l).inverse) * rhs;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoUnitPivot || e.code() == ErrorCode::NotAUnit) not_a_unit(a, "singular modulo " + q.str());
      throw;
    }
    // CRT: combine x = solution mod modulus_so_far with y mod q.
    auto inv = mod_inverse(modulus_so_far, q);
    for (std::size_t i = 0; i < d; ++i) {
      Integer t = mod_floor((y(i, 0).integer() - solution[i]) * *inv, q);
      solution[i] += modulus_so_far * t;
    }
    modulus_so_far *= q;
  }
  std::size_t pos = 0;
  return make_unit_witness(a, unflatten(ring, solution, pos));
}

UnitWitness invert_polynomial(const Element& a) {
  auto coeffs = a.terms();
  if (coeffs.empty()) not_a_unit(a, "zero");
  const Ring& ring = a.ring();
  UnitWitness c0 = try_invert(coeffs[0]);
  auto constant = [&](const Element& c) { return Element::from_terms(ring, {c}); };
  if (coeffs.size() == 1) return make_unit_witness(a, constant(c0.inverse));
  if (ring.base().is_domain()) not_a_unit(a, "positive degree over a domain");

  // a = c0 (1 + N) with N = c0^-1 (a - c0); a unit iff N is nilpotent here.
  const Element n = constant(c0.inverse) * (a - constant(coeffs[0]));
  const Element minus_n = -n;
  Element sum = Element::one(ring);
  Element term = Element::one(ring);
  constexpr int kMaxPower = 64;
  for (int k = 1;; ++k) {
    term = minus_n * term;
    if (term.is_zero()) break;
    if (k == kMaxPower) not_a_unit(a, "higher part is not nilpotent");
    sum += term;
  }
  return make_unit_witness(a, sum * constant(c0.inverse));
}

// Left-multiplication matrix of a in the basis 1, g, ..., g^(n-1):
// entry (k, j) = a_{k-j mod n}.
Matrix circulant(const Element& a, const Ring& entry_ring, bool to_rationals) {
  const std::size_t n = a.ring().dimension();
  auto coeffs = a.terms();
  Matrix l(entry_ring, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const Element& c = coeffs[(k + n - j) % n];
      l(k, j) = to_rationals ? Element::from_rational(entry_ring, c.ring().kind() == Kind::Integers
                                                                        ? Rational(c.integer())
                                                                        : c.rational())
                             : c;
    }
  }
  return l;
}

UnitWitness invert_group_ring(const Element& a) {
  const Ring& ring = a.ring();
  const Ring& base = ring.base();
  const std::size_t n = ring.dimension();
  const bool over_q = base.kind() == Kind::Integers || base.kind() == Kind::LocalizedIntegers;
  const Ring& entry_ring = over_q ? Ring::rationals() : base;
  Matrix inv(entry_ring, n, n);
  try {
    inv = Matrix::from_element(unit_pivot_invert(circulant(a, entry_ring, over_q)).inverse);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoUnitPivot && e.code() != ErrorCode::NotAUnit) throw;
    if (ring.is_finite()) return invert_via_regular_representation(a);
    not_a_unit(a, "circulant system has no unit-pivot solution");
  }
  // a * b = 1 means L_a b = e_0, so b is column 0 of L_a^-1.
  Element::Terms coeffs;
  coeffs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Element& c = inv(k, 0);
    if (!over_q) {
      coeffs.push_back(c);
      continue;
    }
    try {
      coeffs.push_back(Element::from_rational(base, c.rational()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DenominatorNotUnit) throw;
      not_a_unit(a, "inverse coefficient " + c.to_string() + " does not lie in " + base.name());
    }
  }
  return make_unit_witness(a, Element::from_terms(ring, std::move(coeffs)));
}

}  // namespace

bool UnitWitness::factorization_holds() const {
  if (!factorization) return true;
  const Ring& ring = value.ring();
  if (ring.kind() != Kind::Matrix) return false;
  return generator_product(*factorization, ring.base(), ring.dimension()).to_element() == value;
}

UnitWitness make_unit_witness(Element value, Element inverse, std::optional<std::vector<Generator>> factorization) {
  require_same_ring(value, inverse);
  UnitWitness w{std::move(value), std::move(inverse), std::move(factorization)};
  if (!w.right_inverse_holds() || !w.left_inverse_holds()) {
    not_a_unit(w.value, "candidate inverse " + w.inverse.to_string() + " fails a two-sided check");
  }
  return w;
}

UnitWitness try_invert(const Element& a) {
  const Ring& ring = a.ring();
  switch (ring.kind()) {
    case Kind::Integers:
      if (a.integer() == 1 || a.integer() == -1) return make_unit_witness(a, a);
      not_a_unit(a, "only +-1 are units in Z");
    case Kind::Rationals:
      if (a.is_zero()) not_a_unit(a, "zero");
      return make_unit_witness(a, Element::from_rational(ring, 1 / a.rational()));
    case Kind::IntegersMod: {
      auto inv = mod_inverse(a.integer(), ring.modulus());
      if (!inv) not_a_unit(a, "shares a factor with the modulus");
      return make_unit_witness(a, Element::from_int(ring, *inv));
    }
    case Kind::LocalizedIntegers: {
      const Integer num = boost::multiprecision::numerator(a.rational());
      for (std::uint64_t p : ring.avoided_primes()) {
        if (num % p == 0) not_a_unit(a, "numerator divisible by avoided prime " + std::to_string(p));
      }
      return make_unit_witness(a, Element::from_rational(ring, 1 / a.rational()));
    }
    case Kind::Polynomial:
      return invert_polynomial(a);
    case Kind::Matrix: {
      try {
        return unit_pivot_invert(Matrix::from_element(a));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoUnitPivot) throw;
        if (ring.is_finite()) return invert_via_regular_representation(a);
        not_a_unit(a, e.what());
      }
    }
    case Kind::GroupRingCyclic:
      return invert_group_ring(a);
  }
  not_a_unit(a, "unsupported ring");
}

bool is_unit(const Element& a) {
  try {
    try_invert(a);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAUnit) throw;
    return false;
  }
}

UnitWitness unit_pivot_invert(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::ShapeMismatch, "cannot invert a non-square matrix");
  const Ring& ring = m.ring();
  const std::size_t n = m.rows();
  const Element one = Element::one(ring);
  const Element minus_one = -one;

  Matrix work = m;
  Matrix inv = Matrix::identity(ring, n);
  std::vector<Generator> steps;
  auto apply = [&](Generator g) {
    apply_left(g, work);
    apply_left(g, inv);
    steps.push_back(std::move(g));
  };

  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> pivot_row;
    std::optional<Element> pivot_inverse;
    for (const Element* wanted : {&one, &minus_one}) {
      for (std::size_t r = c; r < n && !pivot_row; ++r) {
        if (work(r, c) == *wanted) {
          pivot_row = r;
          pivot_inverse = *wanted;
        }
      }
      if (pivot_row) break;
    }
    for (std::size_t r = c; r < n && !pivot_row; ++r) {
      if (work(r, c).is_zero()) continue;
      try {
        pivot_inverse = try_invert(work(r, c)).inverse;
        pivot_row = r;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotAUnit) throw;
      }
    }
    if (!pivot_row) {
      throw Error(ErrorCode::NoUnitPivot, "column " + std::to_string(c) + " has no unit pivot in " + m.to_string());
    }
    if (*pivot_row != c) apply(RowSwap{c, *pivot_row});
    if (!(work(c, c) == one)) apply(RowScale{c, *pivot_inverse, work(c, c)});
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || work(r, c).is_zero()) continue;
      apply(Transvection{r, c, -work(r, c), Side::Row});
    }
  }

  // steps: Ek ... E1 m = I, hence m = E1^-1 ... Ek^-1.
  std::vector<Generator> factorization;
  factorization.reserve(steps.size());
  for (const auto& g : steps) factorization.push_back(generator_inverse(g));
  return make_unit_witness(m.to_element(), inv.to_element(), std::move(factorization));
}

Matrix block_triangular_inverse(const Matrix& u, const Matrix& a_inv, const Matrix& d_inv) {
  const std::size_t n1 = a_inv.rows();
  const std::size_t n2 = d_inv.rows();
  if (!u.is_square() || !a_inv.is_square() || !d_inv.is_square() || u.rows() != n1 + n2) {
    throw Error(ErrorCode::ShapeMismatch, "block inverse shapes do not match");
  }
  const Ring& ring = u.ring();
  const Matrix b = u.block(0, n1, n1, n2);
  const Matrix c = u.block(n1, 0, n2, n1);
  Matrix result(ring, n1 + n2, n1 + n2);
  if (c.is_zero()) {
    result = block_compose({{a_inv, -(a_inv * b * d_inv)}, {Matrix::zero(ring, n2, n1), d_inv}});
  } else if (b.is_zero()) {
    result = block_compose({{a_inv, Matrix::zero(ring, n1, n2)}, {-(d_inv * c * a_inv), d_inv}});
  } else {
    throw Error(ErrorCode::ShapeMismatch, "matrix is not block triangular");
  }
  const Matrix id = Matrix::identity(ring, n1 + n2);
  if (!(u * result == id) || !(result * u == id)) {
    throw Error(ErrorCode::NotAUnit, "diagonal block inverses do not invert the block-triangular matrix");
  }
  return result;
}

}  // namespace cleandecomp
