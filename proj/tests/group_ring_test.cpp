#include "cleandecomp/group_ring.hpp"

#include <random>
#include <set>

#include "cleandecomp/random.hpp"
#include "test_support.hpp"

namespace cleandecomp {
namespace {

using testing::el;
using testing::expect_error;
using testing::ring;

void expect_two_good(const Element& a, const TwoGoodResult& r) {
  EXPECT_TRUE(r.u1.right_inverse_holds() && r.u1.left_inverse_holds()) << a;
  EXPECT_TRUE(r.u2.right_inverse_holds() && r.u2.left_inverse_holds()) << a;
  EXPECT_EQ(r.u1.value + r.u2.value, a);
  EXPECT_TRUE(verify_decomposition(clean_from_two_good(a, r)).all_passed()) << a;
}

// Evaluation of an integer polynomial at x modulo p.
long evaluate(const std::vector<long>& c, long x, long p) {
  long v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = ((v * x + c[i]) % p + p) % p;
  return v;
}

TEST(Cyclotomic, ProductOverDivisorsIsXmMinusOne) {
  for (std::size_t m = 1; m <= 30; ++m) {
    RationalPolynomial product{Rational(1)};
    for (std::size_t d = 1; d <= m; ++d) {
      if (m % d) continue;
      RationalPolynomial phi = cyclotomic_polynomial(d);
      std::size_t totient = 0;
      for (std::size_t k = 1; k <= d; ++k) totient += std::gcd(k, d) == 1;
      EXPECT_EQ(phi.size(), totient + 1) << d;
      RationalPolynomial next(product.size() + phi.size() - 1, Rational(0));
      for (std::size_t i = 0; i < product.size(); ++i)
        for (std::size_t j = 0; j < phi.size(); ++j) next[i + j] += product[i] * phi[j];
      product = next;
    }
    RationalPolynomial expected(m + 1, Rational(0));
    expected[0] = -1;
    expected[m] = 1;
    EXPECT_EQ(product, expected) << m;
  }
}

TEST(Sigma, SpecTable) {
  EXPECT_TRUE(sigma_is_cyclic(3));
  EXPECT_TRUE(sigma_is_cyclic(5));
  EXPECT_FALSE(sigma_is_cyclic(7));
  EXPECT_FALSE(sigma_is_cyclic(9));
  EXPECT_TRUE(sigma_is_cyclic(11));
  EXPECT_TRUE(sigma_is_cyclic(13));
  for (std::uint64_t bad : {0, 1, 2, 4, 10}) expect_error(ErrorCode::BadInput, [&] { sigma_is_cyclic(bad); });
}

TEST(Sigma, MatchesCycleCount) {
  for (std::uint64_t m = 3; m < 200; m += 2) {
    std::vector<bool> seen(m, false);
    int cycles = 0;
    for (std::uint64_t start = 1; start < m; ++start) {
      if (seen[start]) continue;
      ++cycles;
      for (std::uint64_t x = start; !seen[x]; x = 2 * x % m) seen[x] = true;
    }
    EXPECT_EQ(sigma_is_cyclic(m), cycles == 1) << m;
  }
}

TEST(IdempotentsF2, SpecExamples) {
  std::vector<Element> three = enumerate_idempotents_f2(3);
  std::set<std::string> names;
  for (const Element& e : three) names.insert(e.to_string());
  EXPECT_EQ(names, (std::set<std::string>{"0", "1", "1 + g + g^2", "g + g^2"}));
  EXPECT_EQ(enumerate_idempotents_f2(5).size(), 4u);
  EXPECT_GT(enumerate_idempotents_f2(7).size(), 4u);
  expect_error(ErrorCode::TooLarge, [] { enumerate_idempotents_f2(21); });
  expect_error(ErrorCode::BadInput, [] { enumerate_idempotents_f2(0); });
}

TEST(IdempotentsF2, MatchesGenericArithmetic) {
  for (std::size_t m = 1; m <= 8; ++m) {
    const Ring& r = ring(("GrpC:Zmod:2:" + std::to_string(m)).c_str());
    std::vector<Element> expected;
    for (std::uint64_t code = 0; code < (1u << m); ++code) {
      Element::Terms t;
      for (std::size_t i = 0; i < m; ++i) t.push_back(Element::from_int(r.base(), Integer(code >> i & 1)));
      Element x = Element::from_terms(r, t);
      if (x * x == x) expected.push_back(x);
    }
    EXPECT_EQ(enumerate_idempotents_f2(m), expected) << m;
  }
}

TEST(IdempotentsF2, CountIsTwoToTheCosetCount) {
  for (std::size_t m = 1; m <= 19; m += 2) {
    std::vector<bool> seen(m, false);
    int cosets = 0;
    for (std::size_t start = 0; start < m; ++start) {
      if (seen[start]) continue;
      ++cosets;
      for (std::size_t x = start; !seen[x]; x = 2 * x % m) seen[x] = true;
    }
    EXPECT_EQ(enumerate_idempotents_f2(m).size(), std::size_t{1} << cosets) << m;
  }
}

TEST(ExplicitIdempotents, SpecExamples) {
  ExplicitIdempotents three = explicit_idempotents(3, ring("Zloc:2"));
  EXPECT_EQ(three.f3.to_string(), "1/3 + 1/3*g + 1/3*g^2");
  EXPECT_EQ(three.f4.to_string(), "2/3 - 1/3*g - 1/3*g^2");
  EXPECT_TRUE(three.f1.is_zero());
  EXPECT_TRUE(three.f2.is_one());
  ExplicitIdempotents five = explicit_idempotents(5, ring("Zloc:2"));
  EXPECT_TRUE(is_idempotent(five.f3) && is_idempotent(five.f4));
  EXPECT_TRUE((five.f3 * five.f4).is_zero());
  expect_error(ErrorCode::NotInvertible, [] { explicit_idempotents(2, ring("Zloc:2")); });
  expect_error(ErrorCode::NotInvertible, [] { explicit_idempotents(6, ring("Zmod:9")); });
}

TEST(RationalCatalog, SpecExamples) {
  IdempotentCatalog three = rational_idempotents(3);
  ASSERT_EQ(three.primitive.size(), 2u);
  EXPECT_EQ(three.primitive[0].to_string(), "1/3 + 1/3*g + 1/3*g^2");
  EXPECT_EQ(three.primitive[1].to_string(), "2/3 - 1/3*g - 1/3*g^2");
  EXPECT_EQ(three.all_idempotents.size(), 4u);
  EXPECT_TRUE(three.all_idempotents.front().is_zero());
  EXPECT_TRUE(three.all_idempotents.back().is_one());
  IdempotentCatalog one = rational_idempotents(1);
  ASSERT_EQ(one.all_idempotents.size(), 2u);
  EXPECT_TRUE(one.all_idempotents[1].is_one());
}

TEST(RationalCatalog, PrimitivesAreOrthogonalAndSumToOne) {
  for (std::size_t m = 1; m <= 24; ++m) {
    IdempotentCatalog c = rational_idempotents(m);
    Element total = Element::zero(c.primitive[0].ring());
    for (std::size_t i = 0; i < c.primitive.size(); ++i) {
      EXPECT_TRUE(is_idempotent(c.primitive[i])) << m;
      EXPECT_FALSE(c.primitive[i].is_zero());
      for (std::size_t j = i + 1; j < c.primitive.size(); ++j) EXPECT_TRUE((c.primitive[i] * c.primitive[j]).is_zero());
      total += c.primitive[i];
    }
    EXPECT_TRUE(total.is_one()) << m;
    for (const Element& e : c.all_idempotents) EXPECT_TRUE(is_idempotent(e));
  }
}

TEST(RationalCatalog, MembershipFilter) {
  // Denominators of the primitive idempotents divide m.
  EXPECT_EQ(rational_idempotents(3).members_in(ring("Zloc:2")).size(), 4u);
  EXPECT_EQ(rational_idempotents(3).members_in(ring("Zloc:3")).size(), 2u);
  EXPECT_EQ(rational_idempotents(6).members_in(ring("Zloc:5")).size(), 16u);
  EXPECT_EQ(rational_idempotents(6).members_in(ring("Z")).size(), 2u);
}

TEST(UnitInvert, SpecExamples) {
  EXPECT_EQ(unit_invert_groupring(el("GrpC:Zloc:7:3", "g")).inverse.to_string(), "g^2");
  EXPECT_EQ(unit_invert_groupring(el("GrpC:Q:3", "g")).inverse.to_string(), "g^2");
  expect_error(ErrorCode::NotAUnit, [] { unit_invert_groupring(el("GrpC:Zmod:2:3", "1 + g")); });
  EXPECT_EQ(unit_invert_groupring(el("GrpC:Zloc:2:3", "3")).inverse.to_string(), "1/3");
  expect_error(ErrorCode::BadInput, [] { unit_invert_groupring(el("Q", "3")); });
}

TEST(CleanLocalized, SpecExamples) {
  auto g = clean_check_localized(el("GrpC:Zloc:7:3", "g"));
  ASSERT_TRUE(g);
  EXPECT_TRUE(g->idempotent.is_zero());
  EXPECT_EQ(g->unit.value.to_string(), "g");
  auto zero = clean_check_localized(el("GrpC:Zloc:7:3", "0"));
  ASSERT_TRUE(zero);
  EXPECT_TRUE(zero->idempotent.is_one());
  EXPECT_EQ(zero->unit.value.to_string(), "-1");
  EXPECT_FALSE(clean_check_localized(el("GrpC:Zloc:7:3", "6 + 4*g")));
  expect_error(ErrorCode::BadInput, [] { clean_check_localized(el("GrpC:Zmod:7:3", "g")); });
}

TEST(CleanLocalized, MatchesEvaluationAtCubeRootsModSeven) {
  // Over Zloc:7 C3, x is a unit iff x(1), x(2), x(4) are nonzero mod 7, and
  // the four rational idempotents evaluate to these triples.
  const std::vector<std::array<long, 3>> idempotent_values{{0, 0, 0}, {1, 1, 1}, {1, 0, 0}, {0, 1, 1}};
  const Ring& r = ring("GrpC:Zloc:7:3");
  int non_clean = 0;
  for (long c0 = 0; c0 < 7; ++c0)
    for (long c1 = 0; c1 < 7; ++c1)
      for (long c2 = 0; c2 < 7; ++c2) {
        const std::vector<long> c{c0, c1, c2};
        bool expected = false;
        for (const auto& t : idempotent_values) {
          bool unit = true;
          for (int i = 0; i < 3; ++i) unit = unit && (evaluate(c, std::array<long, 3>{1, 2, 4}[i], 7) - t[i]) % 7 != 0;
          expected = expected || unit;
        }
        Element a = Element::from_terms(r, {Element::from_int(r.base(), c0), Element::from_int(r.base(), c1),
                                            Element::from_int(r.base(), c2)});
        auto w = clean_check_localized(a);
        EXPECT_EQ(w.has_value(), expected) << a;
        if (w) {
          EXPECT_TRUE(is_idempotent(w->idempotent));
          EXPECT_EQ(w->idempotent + w->unit.value, a);
          EXPECT_TRUE(w->unit.left_inverse_holds() && w->unit.right_inverse_holds());
        }
        non_clean += !expected;
      }
  EXPECT_GE(non_clean, 1);
}

TEST(TwoGood, SpecExamples) {
  const Element zero = el("GrpC:Zloc:3:2", "0");
  TwoGoodResult z = two_good_group_ring(zero);
  EXPECT_EQ(z.u1.value.to_string(), "-1");
  EXPECT_EQ(z.u2.value.to_string(), "1");
  expect_two_good(zero, z);

  const Element g = el("GrpC:Zloc:5:2", "g");
  TwoGoodResult r = two_good_group_ring(g);
  EXPECT_EQ(r.u1.value.to_string(), "-g");
  EXPECT_EQ(r.u2.value.to_string(), "2*g");
  expect_two_good(g, r);

  expect_error(ErrorCode::TwoNotInvertible, [] { two_good_group_ring(el("GrpC:Zloc:2:3", "g")); });
  expect_error(ErrorCode::BadInput, [] { two_good_group_ring(el("GrpC:Q:3", "g")); });
  expect_error(ErrorCode::BadInput, [] { two_good_group_ring(el("GrpC:Zloc:3,5:2", "g")); });
}

TEST(TwoGood, AllSmallRepresentativesOverZloc5C3) {
  const Ring& r = ring("GrpC:Zloc:5:3");
  for (int code = 0; code < 125; ++code) {
    Element a = Element::from_terms(r, {Element::from_int(r.base(), code % 5), Element::from_int(r.base(), code / 5 % 5),
                                        Element::from_int(r.base(), code / 25)});
    expect_two_good(a, two_good_group_ring(a));
  }
}

TEST(TwoGood, RandomElementsOverZloc3C4) {
  const Ring& r = ring("GrpC:Zloc:3:4");
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Element a = random_element(r, rng);
    expect_two_good(a, two_good_group_ring(a));
  }
}

TEST(TwoGood, ResidueIdempotentsWithoutRationalPreimage) {
  // Phi_3 splits mod 7, so F7 C3 has idempotents that are not images of
  // rational ones; every element still gets verified units.
  const Ring& r = ring("GrpC:Zloc:7:3");
  int direct = 0;
  for (int code = 0; code < 343; ++code) {
    Element a = Element::from_terms(r, {Element::from_int(r.base(), code % 7), Element::from_int(r.base(), code / 7 % 7),
                                        Element::from_int(r.base(), code / 49)});
    TwoGoodResult res = two_good_group_ring(a);
    expect_two_good(a, res);
    direct += !res.catalog_lift;
  }
  EXPECT_GT(direct, 0);
}

TEST(TwoGood, PrimeDividingTheOrder) {
  Rng rng(5);
  for (const char* name : {"GrpC:Zloc:3:3", "GrpC:Zloc:3:6", "GrpC:Zloc:5:10"}) {
    for (int trial = 0; trial < 10; ++trial) {
      Element a = random_element(ring(name), rng);
      TwoGoodResult res = two_good_group_ring(a);
      EXPECT_FALSE(res.catalog_lift);
      expect_two_good(a, res);
    }
  }
}

TEST(Regroup, SpecExamples) {
  RegroupIso six = regroup_iso(6, 3);
  EXPECT_EQ(six.k, 1u);
  EXPECT_EQ(six.m, 2u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(six(i), std::make_pair(i % 3, i % 2));
  RegroupIso twelve = regroup_iso(12, 3);
  EXPECT_EQ(twelve.k, 1u);
  EXPECT_EQ(twelve.prime_power, 3u);
  EXPECT_EQ(twelve.m, 4u);
  RegroupIso eight = regroup_iso(8, 2);
  EXPECT_EQ(eight.k, 3u);
  EXPECT_EQ(eight.m, 1u);
  expect_error(ErrorCode::BadFactorization, [] { regroup_iso(6, 4); });
  expect_error(ErrorCode::BadFactorization, [] { regroup_iso(0, 3); });
}

TEST(Regroup, IsARingIsomorphism) {
  const Ring& r = ring("GrpC:Zmod:5:6");
  RegroupIso iso = regroup_iso(6, 3);
  Rng rng(3);
  std::set<std::pair<std::size_t, std::size_t>> images;
  for (std::size_t i = 0; i < 6; ++i) images.insert(iso(i));
  EXPECT_EQ(images.size(), 6u);
  for (int trial = 0; trial < 50; ++trial) {
    Element a = random_element(r, rng), b = random_element(r, rng);
    EXPECT_EQ(iso.forward(a * b), iso.forward(a) * iso.forward(b));
    EXPECT_EQ(iso.forward(a + b), iso.forward(a) + iso.forward(b));
    EXPECT_EQ(iso.backward(iso.forward(a)), a);
  }
  EXPECT_TRUE(iso.forward(Element::one(r)).is_one());
}

}  // namespace
}  // namespace cleandecomp
