// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "cleandecomp/banded.hpp"
#include "cleandecomp/clean.hpp"
#include "cleandecomp/error.hpp"
#include "cleandecomp/group_ring.hpp"
#include "cleandecomp/oracle.hpp"
#include "cleandecomp/random.hpp"

namespace cleandecomp {
namespace {

// Pinned limits (seconds). Zero means no limit was specified.
constexpr double kFixtureLimit = 1.0;
constexpr double kRandomSuiteLimit = 60.0;
constexpr double kBandedLimit = 30.0;

constexpr std::size_t kRandomPerCell = 500;
constexpr std::size_t kBandedRandomCount = 50;
constexpr std::size_t kBandedWindow = 48;
constexpr std::size_t kBandedInverseColumns = 16;

struct Criterion {
  std::string id;
  std::string description;
  double limit;
  std::function<bool(std::ostream& detail)> body;
};

const Ring& ring(const char* text) { return Ring::parse(text); }

Matrix mat(const Ring& r, const std::vector<std::vector<std::string>>& rows) { return Matrix::parse_rows(r, rows); }

Matrix random_matrix(const Ring& r, std::size_t n, Rng& rng) {
  Matrix m(r, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_element(r, rng);
  return m;
}

bool valid(const CleanDecomposition& d) { return verify_decomposition(d).all_passed(); }

bool matches(const CleanDecomposition& d, const char* e, const char* u1, const char* u2) {
  return valid(d) && d.idempotent.to_string() == e && d.units[0].value.to_string() == u1 &&
         d.units[1].value.to_string() == u2;
}

bool sandwich_matches(const CleanDecomposition& d, const Matrix& t, const Matrix& v, const Matrix& w, const char* u1,
                      const char* u2) {
  return (v * t * Matrix::from_element(d.units[0].value) * w).to_string() == u1 &&
         (v * t * Matrix::from_element(d.units[1].value) * w).to_string() == u2;
}

bool fixtures(std::ostream& detail) {
  const Ring& z = ring("Z");
  const Ring& f2 = ring("Zmod:2");
  bool ok = matches(decompose_2x2(Matrix::zero(z, 2, 2)), "[[-1,2],[-1,2]]", "[[1,-1],[2,-3]]", "[[0,-1],[-1,1]]") &&
            matches(decompose_2x2(Matrix::identity(z, 2)), "[[0,1],[0,1]]", "[[1,0],[1,-1]]", "[[0,-1],[-1,1]]") &&
            matches(decompose_2x2(mat(f2, {{"1", "1"}, {"0", "1"}})), "[[0,1],[0,1]]", "[[1,1],[1,0]]", "[[0,1],[1,0]]");
  detail << "2x2 " << (ok ? "exact" : "mismatch");

  CleanDecomposition zero3 = decompose_3x3(Matrix::zero(z, 3, 3));
  bool ok3 = valid(zero3) && zero3.idempotent.to_string() == "[[-1,-1,3],[-1,-1,3],[-1,-1,3]]" &&
             sandwich_matches(zero3, mat(z, {{"1", "0", "0"}, {"0", "1", "0"}, {"-1", "0", "1"}}),
                              mat(z, {{"1", "-1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}),
                              mat(z, {{"1", "0", "0"}, {"0", "1", "3"}, {"0", "0", "1"}}), "[[0,1,0],[0,0,1],[1,0,0]]",
                              "[[0,-1,0],[1,1,-1],[-1,0,0]]");
  CleanDecomposition id3 = decompose_3x3(Matrix::identity(f2, 3));
  ok3 = ok3 && valid(id3) && id3.idempotent.to_string() == "[[0,0,1],[0,0,1],[0,0,1]]" &&
        sandwich_matches(id3, Matrix::identity(f2, 3), Matrix::identity(f2, 3),
                         mat(f2, {{"1", "0", "0"}, {"0", "1", "1"}, {"0", "0", "1"}}), "[[0,1,1],[0,0,1],[1,0,0]]",
                         "[[1,1,0],[0,1,1],[1,0,0]]");
  // Any b: F has three equal rows (b11 - 1, b22 - 1, 3 - b11 - b22).
  Matrix b = mat(z, {{"4", "-2", "7"}, {"1", "-5", "0"}, {"3", "3", "9"}});
  CleanDecomposition general = decompose_3x3(b);
  ok3 = ok3 && valid(general) && general.idempotent.to_string() == "[[3,-6,4],[3,-6,4],[3,-6,4]]";
  detail << ", 3x3 " << (ok3 ? "exact" : "mismatch");
  return ok && ok3;
}

bool random_suite(std::ostream& detail) {
  std::size_t total = 0, passed = 0;
  Rng rng(seed_from_environment());
  for (const char* name : {"Z", "Q", "Zmod:2", "Zmod:6", "Zmod:7", "Zloc:2,3", "Poly:Q:x", "Mat:Zmod:2:2"}) {
    const Ring& r = ring(name);
    for (std::size_t n = 2; n <= 7; ++n)
      for (std::size_t k = 0; k < kRandomPerCell; ++k) {
        ++total;
        passed += valid(decompose_nxn(random_matrix(r, n, rng)));
      }
  }
  detail << passed << "/" << total << " verified";
  return passed == total;
}

bool noncommutative(std::ostream& detail) {
  const Ring& f2 = ring("Zmod:2");
  const Ring& m2 = ring("Mat:Zmod:2:2");
  std::size_t elements = 0;
  for (std::uint64_t code = 0; code < 16; ++code) {
    Matrix a = Matrix::from_element(decode(m2, code));
    if (!(a.ring() == f2) || !valid(decompose_2x2(a))) return false;
    ++elements;
  }
  Rng rng(seed_from_environment() + 3);
  std::size_t blocks = 0;
  for (int k = 0; k < 200; ++k) blocks += valid(decompose_3x3(random_matrix(m2, 3, rng)));
  const bool oracle = ring_is_n_clean(enumerate(m2), 2);
  detail << elements << "/16 elements, " << blocks << "/200 block matrices, oracle 2-clean " << oracle;
  return blocks == 200 && oracle;
}

bool negative_control(std::ostream& detail) {
  const bool five_two_clean = integer_n_clean_check(Integer(5), 2);
  // Sums e + u1 + u2 of integers reach at most 1 + 1 + 1 = 3.
  bool brute = false;
  for (int e = 0; e <= 1; ++e)
    for (int u1 : {-1, 1})
      for (int u2 : {-1, 1}) brute = brute || e + u1 + u2 == 5;
  const Ring& z = ring("Z");
  const bool matrix_ok = valid(decompose_2x2(mat(z, {{"5", "0"}, {"0", "5"}})));
  detail << "5 two-clean in Z: " << five_two_clean << " (brute force " << brute << "), diag(5,5) verified " << matrix_ok;
  return !five_two_clean && !brute && matrix_ok;
}

bool near_idempotent_fixture(std::ostream& detail) {
  const Ring& r = ring("Zloc:2,3");
  Matrix f = mat(r, {{"3", "0"}, {"6", "3"}});
  Matrix defect = f * f - f;
  bool divisible = true;
  for (const Element& x : defect.entries()) {
    try {
      Element::from_rational(r, x.rational() / 6);
    } catch (const Error&) {
      divisible = false;
    }
  }
  const bool decomposed = valid(decompose_2x2(f));
  detail << "F^2 - F = " << defect.to_string() << ", divisible by 6 " << divisible << ", verified " << decomposed;
  return divisible && decomposed;
}

bool lengthening(std::ostream& detail) {
  Rng rng(seed_from_environment() + 6);
  const std::vector<const char*> rings{"Z", "Q", "Zmod:6", "Zloc:2,3", "Poly:Q:x", "Mat:Zmod:2:2"};
  std::size_t ok = 0;
  for (int k = 0; k < 100; ++k) {
    CleanDecomposition d = decompose_nxn(random_matrix(ring(rings[k % rings.size()]), 2 + k % 4, rng));
    bool all = true;
    for (int step = 1; step <= 4; ++step) {
      d = lengthen_decomposition(d);
      all = all && valid(d) && d.units.size() == 2u + step;
    }
    ok += all;
  }
  const Ring& q = ring("Q");
  std::size_t sums = 0;
  for (int k = 0; k < 100; ++k) {
    const Element a = random_element(q, rng);
    const Element h = (a + Element::one(q)) * Element::from_rational(q, Rational(1, 2));
    CleanDecomposition clean = h.is_zero()
                                   ? CleanDecomposition{h, Element::one(q), {try_invert(-Element::one(q))}}
                                   : CleanDecomposition{h, Element::zero(q), {try_invert(h)}};
    std::vector<UnitWitness> units = good_units_from_clean(a, clean);
    Element total = Element::zero(q);
    bool inverses = units.size() == 2;
    for (const UnitWitness& u : units) {
      total += u.value;
      inverses = inverses && u.right_inverse_holds() && u.left_inverse_holds();
    }
    sums += inverses && total == a;
  }
  detail << ok << "/100 lengthened four times, " << sums << "/100 rationals as two units";
  return ok == 100 && sums == 100;
}

bool finite_instantiation(std::ostream& detail) {
  std::size_t clean = 0;
  // Zmod needs a modulus of at least 2.
  for (int n = 2; n <= 60; ++n) clean += ring_is_n_clean(enumerate(Ring::integers_mod(Integer(n))), 1);
  bool stalks_agree = true;
  for (int n : {4, 6, 10, 12, 30}) {
    const FiniteRingTable t = enumerate(Ring::integers_mod(Integer(n)));
    const PierceStalkReport report = pierce_stalks(t);
    for (std::size_t units = 1; units <= 2; ++units) {
      bool all = true;
      for (const FiniteRingTable& s : report.stalks) all = all && ring_is_n_clean(s, units);
      if (report.stalks.empty()) all = ring_is_n_clean(t, units);
      stalks_agree = stalks_agree && all == ring_is_n_clean(t, units);
    }
  }
  detail << clean << "/59 rings 1-clean, stalks agree " << stalks_agree;
  return clean == 59 && stalks_agree;
}

bool banded(std::ostream& detail) {
  std::size_t runs = 0, passed = 0;
  auto check = [&](const BandedOperator& phi) {
    ++runs;
    passed += window_verify(theorem8_decompose(phi), kBandedWindow, kBandedInverseColumns).all_passed();
  };
  for (const char* base : {"Q", "Zmod:2"}) {
    const Ring& r = ring(base);
    const bool block = r.kind() == Ring::Kind::IntegersMod;
    auto prepare = [&](const BandedOperator& op) { return block ? block2(op) : op; };
    check(prepare(BandedOperator::identity(r)));
    check(prepare(BandedOperator::shift(r)));
    for (std::size_t k = 0; k < kBandedRandomCount; ++k) check(prepare(BandedOperator::random(r, k % 4, seed_from_environment() + k)));
  }
  detail << passed << "/" << runs << " operators pass at W = " << kBandedWindow;
  return passed == runs;
}

bool group_rings(std::ostream& detail) {
  bool sigma = true;
  const std::vector<std::pair<int, bool>> table{{3, true}, {5, true}, {7, false}, {9, false}, {11, true}, {13, true}};
  for (auto [m, expected] : table) sigma = sigma && sigma_is_cyclic(m) == expected;

  std::set<std::string> f2c3;
  for (const Element& e : enumerate_idempotents_f2(3)) f2c3.insert(e.to_string());
  const bool display = f2c3 == std::set<std::string>{"0", "1", "1 + g + g^2", "g + g^2"};

  bool explicit_ok = true;
  for (std::size_t m : {3, 5}) {
    ExplicitIdempotents f = explicit_idempotents(m, ring("Zloc:2"));
    explicit_ok = explicit_ok && is_idempotent(f.f3) && is_idempotent(f.f4) && (f.f3 + f.f4).is_one();
  }

  auto two_good_ok = [](const Element& a) {
    TwoGoodResult r = two_good_group_ring(a);
    return r.u1.right_inverse_holds() && r.u1.left_inverse_holds() && r.u2.right_inverse_holds() &&
           r.u2.left_inverse_holds() && r.u1.value + r.u2.value == a && valid(clean_from_two_good(a, r));
  };
  std::size_t five = 0;
  const Ring& c3 = ring("GrpC:Zloc:5:3");
  for (int code = 0; code < 125; ++code) {
    five += two_good_ok(Element::from_terms(c3, {Element::from_int(c3.base(), code % 5),
                                                 Element::from_int(c3.base(), code / 5 % 5),
                                                 Element::from_int(c3.base(), code / 25)}));
  }
  std::size_t three = 0;
  Rng rng(seed_from_environment() + 9);
  for (int k = 0; k < 100; ++k) three += two_good_ok(random_element(ring("GrpC:Zloc:3:4"), rng));

  const Ring& z7 = ring("GrpC:Zloc:7:3");
  const bool witness = !clean_check_localized(Element::parse(z7, "6 + 4*g"));
  std::size_t non_clean = 0;
  for (int code = 0; code < 343; ++code) {
    non_clean += !clean_check_localized(Element::from_terms(z7, {Element::from_int(z7.base(), code % 7),
                                                                 Element::from_int(z7.base(), code / 7 % 7),
                                                                 Element::from_int(z7.base(), code / 49)}));
  }
  detail << "sigma " << sigma << ", F2C3 " << display << ", f3/f4 " << explicit_ok << ", 2-good " << five
         << "/125 and " << three << "/100, 6+4g not clean " << witness << ", " << non_clean << " non-clean in [0,6]^3";
  return sigma && display && explicit_ok && five == 125 && three == 100 && witness && non_clean >= 1;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, got);
  status = pclose(pipe);
  return out;
}

bool cli_determinism(std::ostream& detail) {
  const std::string tool = CLEANDECOMP_CLI;
  const std::string fixtures = CLEANDECOMP_FIXTURES;
  const std::vector<std::string> commands{
      "banded --spec " + fixtures + "/banded_random_q.json --window 24",
      "decompose --ring Mat:Zmod:2:2 --input " + fixtures + "/blocks3_mat_zmod2.json --n 3",
      "groupring --base Zloc:3 --order 4 --op twogood --element '1 + 2*g - g^3'",
  };
  std::size_t identical = 0;
  for (const std::string& c : commands) {
    int s1 = 0, s2 = 0;
    const std::string line = "CLEANDECOMP_SEED=0 '" + tool + "' " + c + " 2>/dev/null";
    const std::string a = capture(line, s1), b = capture(line, s2);
    identical += s1 == 0 && s2 == 0 && !a.empty() && a == b;
  }
  detail << identical << "/" << commands.size() << " commands byte-identical";
  return identical == commands.size();
}

}  // namespace
}  // namespace cleandecomp

int main() {
  using namespace cleandecomp;
  const std::vector<Criterion> criteria{
      {"AC1", "explicit 2x2 and 3x3 fixtures", kFixtureLimit, fixtures},
      {"AC2", "random matrices, 8 rings x sizes 2..7 x 500", kRandomSuiteLimit, random_suite},
      {"AC3", "matrices over M2(F2)", 0, noncommutative},
      {"AC4", "integer 5 versus diag(5,5)", 0, negative_control},
      {"AC5", "near-idempotent over Zloc:2,3", 0, near_idempotent_fixture},
      {"AC6", "lengthening and halving", 0, lengthening},
      {"AC7", "Zmod:n cleanness and stalks", 0, finite_instantiation},
      {"AC8", "banded operators on a window", kBandedLimit, banded},
      {"AC9", "cyclic group rings", 0, group_rings},
      {"AC10", "CLI byte-stable reports", 0, cli_determinism},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    std::ostringstream detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit == 0 || seconds < c.limit;
    if (!in_time) detail << ", over the time limit";
    ok = ok && in_time;
    all = all && ok;
    std::ostringstream timing;
    timing.precision(3);
    timing << std::fixed << seconds << " s";
    if (c.limit > 0) timing << " < " << c.limit << " s";
    std::cout << c.id << " " << (ok ? "PASS" : "FAIL") << "  " << c.description << " [" << timing.str() << "] "
              << detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
