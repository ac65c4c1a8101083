#include "cleandecomp/clean.hpp"

#include "cleandecomp/error.hpp"
#include "cleandecomp/linear.hpp"

namespace cleandecomp {

namespace {

struct MatrixUnit {
  Matrix value;
  Matrix inverse;
  std::vector<Generator> factorization;
};

struct MatrixDecomposition {
  Matrix idempotent;
  MatrixUnit first;
  MatrixUnit second;
};

Element integer(const Ring& ring, long v) { return Element::from_int(ring, v); }

// P^-1 * K * Q^-1 where P^-1 and Q^-1 are single transvections.
MatrixUnit sandwich(const Transvection& left_inv, const Matrix& k, const Matrix& k_inv, const Transvection& right_inv,
                    const Ring& ring, std::size_t n) {
  UnitWitness core = unit_pivot_invert(k);
  const Matrix left = generator_matrix(left_inv, ring, n);
  const Matrix right = generator_matrix(right_inv, ring, n);
  const Matrix left_fwd = generator_matrix(generator_inverse(left_inv), ring, n);
  const Matrix right_fwd = generator_matrix(generator_inverse(right_inv), ring, n);
  MatrixUnit u{left * k * right, right_fwd * k_inv * left_fwd, {}};
  u.factorization.push_back(left_inv);
  u.factorization.insert(u.factorization.end(), core.factorization->begin(), core.factorization->end());
  u.factorization.push_back(right_inv);
  return u;
}

MatrixDecomposition two_by_two(const Matrix& a) {
  const Ring& r = a.ring();
  const Element one = Element::one(r), two = integer(r, 2);
  const Element &a11 = a(0, 0), &a12 = a(0, 1), &a21 = a(1, 0), &a22 = a(1, 1);

  Matrix e = Matrix::from_rows(r, {{a11 - one, two - a11}, {a11 - one, two - a11}});
  const Element p = a11 - a21 - one;
  const Element q = two - a11 - a12;
  const Element c = a11 * a11 + a11 * a12 - a21 * a12 - a21 * a11 - two * a11 + two * a21 - a12 + a22;

  const Transvection p_inv{1, 0, -p, Side::Row};
  const Transvection q_inv{0, 1, -q, Side::Column};
  const Element zero = Element::zero(r);
  Matrix k1 = Matrix::from_rows(r, {{one, one}, {one, zero}});
  Matrix k1_inv = Matrix::from_rows(r, {{zero, one}, {one, -one}});
  Matrix k2 = Matrix::from_rows(r, {{zero, -one}, {-one, c}});
  Matrix k2_inv = Matrix::from_rows(r, {{-c, -one}, {-one, zero}});
  return {std::move(e), sandwich(p_inv, k1, k1_inv, q_inv, r, 2), sandwich(p_inv, k2, k2_inv, q_inv, r, 2)};
}

// T^-1 V^-1 U W^-1, inverse W U^-1 V T.
MatrixUnit three_sandwich(const Transvection& t, const Transvection& v, const Matrix& u, const Transvection& w,
                          const Ring& r) {
  UnitWitness core = unit_pivot_invert(u);
  const Transvection t_inv{t.row, t.col, -t.factor, t.side};
  const Transvection v_inv{v.row, v.col, -v.factor, v.side};
  const Transvection w_inv{w.row, w.col, -w.factor, w.side};
  MatrixUnit out{generator_matrix(t_inv, r, 3) * generator_matrix(v_inv, r, 3) * u * generator_matrix(w_inv, r, 3),
                 generator_matrix(w, r, 3) * Matrix::from_element(core.inverse) * generator_matrix(v, r, 3) *
                     generator_matrix(t, r, 3),
                 {t_inv, v_inv}};
  out.factorization.insert(out.factorization.end(), core.factorization->begin(), core.factorization->end());
  out.factorization.push_back(w_inv);
  return out;
}

MatrixDecomposition three_by_three(const Matrix& b) {
  const Ring& r = b.ring();
  const Element one = Element::one(r), zero = Element::zero(r), three = integer(r, 3);
  const Element &b11 = b(0, 0), &b12 = b(0, 1), &b22 = b(1, 1), &b23 = b(1, 2), &b31 = b(2, 0);

  const std::vector<Element> row = {b11 - one, b22 - one, three - b11 - b22};
  Matrix f = Matrix::from_rows(r, {row, row, row});

  const Transvection t{2, 0, b11 - b31 - one, Side::Row};
  const Transvection v{0, 1, b22 - b12 - one, Side::Row};
  const Transvection w{1, 2, three - b23 - b11 - b22, Side::Column};
  const Matrix m = generator_matrix(v, r, 3) * generator_matrix(t, r, 3) * (b - f) * generator_matrix(w, r, 3);
  if (!m(0, 1).is_zero() || !m(1, 1).is_one() || !m(1, 2).is_zero() || !m(2, 0).is_zero()) {
    throw Error(ErrorCode::InternalPatternViolation, "V T (B - F) W = " + m.to_string());
  }
  Matrix u1 = Matrix::from_rows(r, {{zero, one, m(0, 2)}, {zero, zero, one}, {one, m(2, 1), m(2, 2)}});
  Matrix u2 = Matrix::from_rows(r, {{m(0, 0), -one, zero}, {m(1, 0), one, -one}, {-one, zero, zero}});
  return {std::move(f), three_sandwich(t, v, u1, w, r), three_sandwich(t, v, u2, w, r)};
}

std::vector<Generator> embedded(const std::vector<Generator>& gens, std::size_t offset, std::size_t size,
                                const Ring& r) {
  std::vector<Generator> out;
  for (const Generator& g : gens) {
    std::vector<Generator> moved = embed_generator(g, offset, size, r);
    out.insert(out.end(), moved.begin(), moved.end());
  }
  return out;
}

// [[A, B], [0, D]] = (I + B D^-1 in the corner) diag(A, D); the lower form
// [[A, 0], [C, D]] = (I + C A^-1 in the corner) diag(A, D).
MatrixUnit block_unit(const MatrixUnit& a, const MatrixUnit& d, const Matrix& off, bool upper) {
  const Ring& r = off.ring();
  const std::size_t n1 = a.value.rows(), n2 = d.value.rows();
  Matrix value = upper ? block_compose({{a.value, off}, {Matrix::zero(r, n2, n1), d.value}})
                       : block_compose({{a.value, Matrix::zero(r, n1, n2)}, {off, d.value}});
  Matrix inverse = block_triangular_inverse(value, a.inverse, d.inverse);
  std::vector<Generator> gens;
  const Matrix corner = upper ? off * d.inverse : off * a.inverse;
  for (std::size_t i = 0; i < corner.rows(); ++i)
    for (std::size_t j = 0; j < corner.cols(); ++j) {
      if (corner(i, j).is_zero()) continue;
      if (upper)
        gens.push_back(Transvection{i, n1 + j, corner(i, j), Side::Row});
      else
        gens.push_back(Transvection{n1 + i, j, corner(i, j), Side::Row});
    }
  std::vector<Generator> ga = embedded(a.factorization, 0, n1, r);
  std::vector<Generator> gd = embedded(d.factorization, n1, n2, r);
  gens.insert(gens.end(), ga.begin(), ga.end());
  gens.insert(gens.end(), gd.begin(), gd.end());
  return {std::move(value), std::move(inverse), std::move(gens)};
}

MatrixDecomposition recurse(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 2) return two_by_two(a);
  if (n == 3) return three_by_three(a);
  const std::size_t n1 = 2, n2 = n - 2;
  MatrixDecomposition top = two_by_two(a.block(0, 0, n1, n1));
  MatrixDecomposition bottom = recurse(a.block(n1, n1, n2, n2));
  const Ring& r = a.ring();
  return {block_compose({{top.idempotent, Matrix::zero(r, n1, n2)}, {Matrix::zero(r, n2, n1), bottom.idempotent}}),
          block_unit(top.first, bottom.first, a.block(0, n1, n1, n2), true),
          block_unit(top.second, bottom.second, a.block(n1, 0, n2, n1), false)};
}

CleanDecomposition finish(const Matrix& target, const MatrixDecomposition& d) {
  CleanDecomposition out{target.to_element(), d.idempotent.to_element(), {}};
  for (const MatrixUnit* u : {&d.first, &d.second}) {
    out.units.push_back(make_unit_witness(u->value.to_element(), u->inverse.to_element(), u->factorization));
  }
  return out;
}

void require_square(const Matrix& a, std::size_t n) {
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
}

}  // namespace

bool VerificationReport::all_passed() const {
  for (const Check& c : checks)
    if (!c.passed) return false;
  return true;
}

CleanDecomposition decompose_2x2(const Matrix& a) {
  require_square(a, 2);
  return finish(a, two_by_two(a));
}

CleanDecomposition decompose_3x3(const Matrix& b) {
  require_square(b, 3);
  return finish(b, three_by_three(b));
}

CleanDecomposition decompose_nxn(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "matrix is not square");
  if (a.rows() < 2) throw Error(ErrorCode::SizeTooSmall, "a 1x1 matrix need not be 2-clean");
  return finish(a, recurse(a));
}

VerificationReport verify_decomposition(const CleanDecomposition& d) {
  VerificationReport report;
  auto add = [&](std::string name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const Error&) {
      ok = false;
    }
    report.checks.push_back({std::move(name), ok});
  };
  add("idempotent", [&] { return is_idempotent(d.idempotent); });
  for (std::size_t i = 0; i < d.units.size(); ++i) {
    const UnitWitness& u = d.units[i];
    const std::string tag = "unit " + std::to_string(i + 1);
    add(tag + " right inverse", [&] { return u.right_inverse_holds(); });
    add(tag + " left inverse", [&] { return u.left_inverse_holds(); });
    if (u.factorization) add(tag + " factorization", [&] { return u.factorization_holds(); });
  }
  add("sum", [&] {
    Element total = d.idempotent;
    for (const UnitWitness& u : d.units) total += u.value;
    return total == d.target;
  });
  return report;
}

CleanDecomposition lengthen_decomposition(const CleanDecomposition& d) {
  const Ring& r = d.idempotent.ring();
  const Element one = Element::one(r);
  const Element reflection = integer(r, 2) * d.idempotent - one;
  CleanDecomposition out{d.target, one - d.idempotent, d.units};
  out.units.push_back(make_unit_witness(reflection, reflection));
  return out;
}

std::vector<UnitWitness> good_units_from_clean(const Element& a, const CleanDecomposition& h_decomposition) {
  const Ring& r = a.ring();
  const Element two = integer(r, 2);
  Element half = Element::zero(r);
  try {
    half = try_invert(two).inverse;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAUnit) throw;
    throw Error(ErrorCode::TwoNotInvertible, "2 is not a unit in " + r.name());
  }
  require_same_ring(a, h_decomposition.target);
  if (!((a + Element::one(r)) * half == h_decomposition.target)) {
    throw Error(ErrorCode::BadInput, "decomposition target is not (a + 1)/2");
  }
  const Element reflection = two * h_decomposition.idempotent - Element::one(r);
  std::vector<UnitWitness> out{make_unit_witness(reflection, reflection)};
  for (const UnitWitness& u : h_decomposition.units) {
    out.push_back(make_unit_witness(two * u.value, u.inverse * half));
  }
  return out;
}

}  // namespace cleandecomp
