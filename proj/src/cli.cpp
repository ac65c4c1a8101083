#include "cleandecomp/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>

#include "cleandecomp/clean.hpp"
#include "cleandecomp/error.hpp"
#include "cleandecomp/group_ring.hpp"
#include "cleandecomp/oracle.hpp"
#include "cleandecomp/random.hpp"

namespace cleandecomp::cli {

namespace {

// Listing every element of a larger table would swamp the report.
constexpr std::size_t kListLimit = 64;

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InternalPatternViolation:
    case ErrorCode::CapExceeded:
    case ErrorCode::NoUnitPivot:
    case ErrorCode::NotAUnit:
      return false;
    default:
      return true;
  }
}

std::string entry_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + entry_text(v[i]);
    return s + "]";
  }
  throw Error(ErrorCode::ParseError, "matrix entries must be strings, integers or arrays, got " + v.dump());
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Json unit_json(const UnitWitness& u) {
  Json out;
  out["value"] = u.value.to_string();
  out["inverse"] = u.inverse.to_string();
  if (u.factorization) {
    Json gens = Json::array();
    for (const Generator& g : *u.factorization) gens.push_back(generator_to_string(g));
    out["factorization"] = std::move(gens);
  } else {
    out["factorization"] = nullptr;
  }
  return out;
}

Json checks_json(const VerificationReport& r) {
  Json out = Json::array();
  for (const Check& c : r.checks) out.push_back({{"name", c.name}, {"passed", c.passed}});
  return out;
}

void add_check(Json& report, const std::string& name, bool passed) {
  report["checks"].push_back({{"name", name}, {"passed", passed}});
}

Json sample(const BandedOperator& op, std::size_t size) {
  Json rows = Json::array();
  for (std::size_t i = 1; i <= size; ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= size; ++j) row.push_back(op(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Options {
  std::string ring, input, spec, base, op, element;
  std::size_t n = 2, size = 0, window = 48, order = 1, cap = kEnumerationCap;
  std::uint64_t m = 0;
};

void cmd_decompose(const Options& o, Json& report) {
  const Ring& ring = Ring::parse(o.ring);
  const nlohmann::json payload = read_json_file(o.input);
  if (payload.contains("ring") && &Ring::parse(payload.at("ring").get<std::string>()) != &ring) {
    throw Error(ErrorCode::DescriptorMismatch, "input file ring " + payload.at("ring").get<std::string>() +
                                                   " differs from --ring " + o.ring);
  }
  if (!payload.contains("matrix")) throw Error(ErrorCode::BadInput, o.input + " has no matrix field");
  const Matrix a = matrix_from_json(ring, payload.at("matrix"));
  if (o.size != 0 && (a.rows() != o.size || a.cols() != o.size)) {
    throw Error(ErrorCode::ShapeMismatch, "expected a " + std::to_string(o.size) + "x" + std::to_string(o.size) + " matrix");
  }
  report["input"] = {{"ring", ring.name()}, {"size", a.rows()}, {"units", o.n}, {"matrix", matrix_to_json(a)}};
  CleanDecomposition d = decompose_nxn(a);
  for (std::size_t k = 2; k < o.n; ++k) d = lengthen_decomposition(d);
  Json units = Json::array();
  for (const UnitWitness& u : d.units) units.push_back(unit_json(u));
  report["result"] = {{"idempotent", d.idempotent.to_string()}, {"units", std::move(units)}};
  report["checks"] = checks_json(verify_decomposition(d));
  if (payload.contains("expected")) {
    const nlohmann::json& expected = payload.at("expected");
    if (expected.contains("idempotent")) {
      add_check(report, "expected idempotent",
                matrix_from_json(ring, expected.at("idempotent")).to_element() == d.idempotent);
    }
    if (expected.contains("units")) {
      const auto& units = expected.at("units");
      for (std::size_t k = 0; k < units.size(); ++k) {
        add_check(report, "expected unit " + std::to_string(k + 1),
                  k < d.units.size() && matrix_from_json(ring, units[k]).to_element() == d.units[k].value);
      }
    }
  }
}

void cmd_oracle(const Options& o, Json& report) {
  const Ring& ring = Ring::parse(o.ring);
  if (!ring.is_finite()) throw Error(ErrorCode::NotFinite, ring.name() + " is infinite");
  auto card = ring.cardinality();
  if (!card || *card > o.cap) throw Error(ErrorCode::TooLarge, ring.name() + " exceeds the enumeration cap");
  const FiniteRingTable t = enumerate(ring);
  report["input"] = {{"ring", ring.name()}, {"n", o.n}};
  const auto table = clean_table(t, o.n);
  bool witnesses_ok = true;
  Json non_clean = Json::array(), listing = Json::array();
  std::size_t non_clean_count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Element& a = t.elements[i];
    const auto& w = table[i];
    if (w) {
      Element sum = w->idempotent;
      for (const Element& u : w->units) {
        sum += u;
        witnesses_ok = witnesses_ok && is_unit(u);
      }
      witnesses_ok = witnesses_ok && is_idempotent(w->idempotent) && sum == a;
    } else {
      if (non_clean.size() < kListLimit) non_clean.push_back(a.to_string());
      ++non_clean_count;
    }
    if (t.size() <= kListLimit) {
      Json row = {{"element", a.to_string()}, {"clean", w.has_value()}};
      if (w) {
        row["idempotent"] = w->idempotent.to_string();
        Json us = Json::array();
        for (const Element& u : w->units) us.push_back(u.to_string());
        row["units"] = std::move(us);
      }
      listing.push_back(std::move(row));
    }
  }
  report["result"] = {{"size", t.size()},
                      {"units", t.units.size()},
                      {"idempotents", t.idempotents.size()},
                      {"n_clean", non_clean_count == 0},
                      {"non_clean_count", non_clean_count},
                      {"non_clean", std::move(non_clean)}};
  if (t.size() <= kListLimit) report["result"]["elements"] = std::move(listing);
  add_check(report, "witnesses verify", witnesses_ok);
}

void cmd_pierce(const Options& o, Json& report) {
  const Ring& ring = Ring::parse(o.ring);
  const FiniteRingTable t = enumerate(ring);
  report["input"] = {{"ring", ring.name()}};
  const PierceStalkReport p = pierce_stalks(t);
  Json ideals = Json::array(), stalks = Json::array();
  bool generators_ok = true;
  for (const PierceIdeal& ideal : p.pierce_ideals) {
    generators_ok = generators_ok && is_idempotent(ideal.generator);
    Json entry = {{"generator", ideal.generator.to_string()}, {"size", ideal.elements.size()}};
    if (ideal.elements.size() <= kListLimit) {
      Json xs = Json::array();
      for (const Element& x : ideal.elements) xs.push_back(x.to_string());
      entry["elements"] = std::move(xs);
    }
    ideals.push_back(std::move(entry));
  }
  bool all_one = true, all_two = true;
  for (const FiniteRingTable& s : p.stalks) {
    const bool one = ring_is_n_clean(s, 1), two = ring_is_n_clean(s, 2);
    all_one = all_one && one;
    all_two = all_two && two;
    stalks.push_back({{"identity", s.identity.to_string()},
                      {"size", s.size()},
                      {"units", s.units.size()},
                      {"one_clean", one},
                      {"two_clean", two}});
  }
  const bool ring_one = ring_is_n_clean(t, 1), ring_two = ring_is_n_clean(t, 2);
  report["result"] = {{"pierce_ideals", std::move(ideals)},
                      {"stalks", std::move(stalks)},
                      {"one_clean", ring_one},
                      {"two_clean", ring_two}};
  add_check(report, "generators are idempotent", generators_ok);
  // With no proper central idempotent the ring is its own stalk.
  if (!p.stalks.empty()) {
    add_check(report, "1-clean iff every stalk is", ring_one == all_one);
    add_check(report, "2-clean iff every stalk is", ring_two == all_two);
  }
}

void cmd_banded(const Options& o, Json& report, std::uint64_t seed) {
  if (o.window == 0 || o.window > kMaxWindow) {
    throw Error(ErrorCode::BadInput, "window must be in [1, " + std::to_string(kMaxWindow) + "]");
  }
  const nlohmann::json spec = read_json_file(o.spec);
  const BandedOperator phi = banded_from_json(spec, seed);
  const BandedDecomposition d = theorem8_decompose(phi);
  const std::size_t shown = std::min<std::size_t>(o.window, 4);
  report["input"] = {{"ring", phi.base().name()}, {"bandwidth", phi.bandwidth()}, {"window", o.window}};
  report["result"] = {{"decomposed_ring", d.phi.base().name()},
                      {"blocked", d.blocked},
                      {"bandwidth", d.phi.bandwidth()},
                      {"u1", sample(d.u1.value, shown)},
                      {"u2", sample(d.u2.value, shown)},
                      {"e", sample(d.e, shown)}};
  report["checks"] = checks_json(window_verify(d, o.window));
}

void cmd_groupring(const Options& o, Json& report) {
  const Ring& ring = Ring::group_ring(Ring::parse(o.base), o.order);
  const Element a = Element::parse(ring, o.element);
  report["input"] = {{"ring", ring.name()}, {"op", o.op}, {"element", a.to_string()}};
  if (o.op == "invert") {
    try {
      const UnitWitness u = unit_invert_groupring(a);
      report["result"] = {{"unit", true}, {"inverse", u.inverse.to_string()}};
      add_check(report, "right inverse", u.right_inverse_holds());
      add_check(report, "left inverse", u.left_inverse_holds());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAUnit) throw;
      report["result"] = {{"unit", false}};
    }
  } else if (o.op == "clean") {
    const auto w = clean_check_localized(a);
    report["result"] = {{"clean", w.has_value()}};
    if (w) {
      report["result"]["idempotent"] = w->idempotent.to_string();
      report["result"]["unit"] = unit_json(w->unit);
      add_check(report, "idempotent", is_idempotent(w->idempotent));
      add_check(report, "unit", w->unit.right_inverse_holds() && w->unit.left_inverse_holds());
      add_check(report, "sum", w->idempotent + w->unit.value == a);
    }
  } else {
    const TwoGoodResult r = two_good_group_ring(a);
    report["result"] = {{"lift", r.catalog_lift ? "catalog idempotent" : "residue unit"},
                        {"u1", unit_json(r.u1)},
                        {"u2", unit_json(r.u2)}};
    report["checks"] = checks_json(verify_decomposition(clean_from_two_good(a, r)));
  }
}

void cmd_sigma(const Options& o, Json& report) {
  report["input"] = {{"m", o.m}};
  const bool cyclic = sigma_is_cyclic(o.m);
  Json orbit = Json::array();
  std::uint64_t x = 1;
  do {
    orbit.push_back(x);
    x = 2 * x % o.m;
  } while (x != 1);
  report["result"] = {{"cyclic", cyclic}, {"orbit_of_1", std::move(orbit)}};
}

}  // namespace

Matrix matrix_from_json(const Ring& ring, const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::ParseError, "matrix must be a nonempty array of rows");
  std::vector<std::vector<std::string>> text;
  for (const auto& row : rows) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "matrix rows must be arrays");
    text.emplace_back();
    for (const auto& v : row) text.back().push_back(entry_text(v));
  }
  return Matrix::parse_rows(ring, text);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

BandedOperator banded_from_json(const nlohmann::json& spec, std::uint64_t seed) {
  try {
    const Ring& ring = Ring::parse(spec.at("ring").get<std::string>());
    const std::size_t b = spec.at("bandwidth").get<std::size_t>();
    if (spec.contains("bands")) {
      std::vector<std::pair<long, std::vector<Element>>> bands;
      for (const auto& band : spec.at("bands")) {
        const long offset = band.at("offset").get<long>();
        if (static_cast<std::size_t>(offset < 0 ? -offset : offset) > b) {
          throw Error(ErrorCode::BadInput, "band offset " + std::to_string(offset) + " exceeds the bandwidth");
        }
        std::vector<Element> pattern;
        for (const auto& v : band.at("pattern")) pattern.push_back(Element::parse(ring, entry_text(v)));
        if (pattern.empty()) throw Error(ErrorCode::BadInput, "band pattern is empty");
        bands.emplace_back(offset, std::move(pattern));
      }
      BandedOperator op = BandedOperator::from_bands(ring, std::move(bands));
      return BandedOperator(ring, b, [op](std::size_t i, std::size_t j) { return op(i, j); });
    }
    const std::string name = spec.at("builtin").get<std::string>();
    if (name == "random") return BandedOperator::random(ring, b, spec.value("seed", seed));
    BandedOperator op = name == "identity"      ? BandedOperator::identity(ring)
                        : name == "shift"       ? BandedOperator::shift(ring)
                        : name == "tridiagonal" ? BandedOperator::tridiagonal(ring)
                        : name == "zero"        ? BandedOperator::zero(ring)
                                                : throw Error(ErrorCode::BadInput, "unknown builtin " + name);
    if (op.bandwidth() > b) throw Error(ErrorCode::BadInput, name + " needs bandwidth at least " + std::to_string(op.bandwidth()));
    return BandedOperator(ring, b, [op](std::size_t i, std::size_t j) { return op(i, j); });
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("operator spec: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clean decompositions of matrices, banded operators and group rings", "cleandecomp"};
  app.require_subcommand(1);
  Options o;

  auto* decompose = app.add_subcommand("decompose", "Decompose a square matrix as idempotent plus units");
  decompose->add_option("--ring", o.ring, "Entry ring descriptor")->required();
  decompose->add_option("--input", o.input, "JSON file with fields ring and matrix")->required();
  decompose->add_option("--n", o.n, "Number of units")->check(CLI::Range(std::size_t{2}, kMaxUnits));
  decompose->add_option("--size", o.size, "Expected matrix size");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive n-cleanness of a finite ring");
  oracle->add_option("--ring", o.ring, "Finite ring descriptor")->required();
  oracle->add_option("--n", o.n, "Number of units")->required()->check(CLI::Range(std::size_t{1}, kMaxUnits));
  oracle->add_option("--cap", o.cap, "Enumeration cap")->check(CLI::Range(std::size_t{1}, std::size_t{kEnumerationCap}));

  auto* pierce = app.add_subcommand("pierce", "Pierce ideals and stalks of a finite ring");
  pierce->add_option("--ring", o.ring, "Finite ring descriptor")->required();

  auto* banded = app.add_subcommand("banded", "Decompose a banded operator and verify a window");
  banded->add_option("--spec", o.spec, "JSON operator spec")->required();
  banded->add_option("--window", o.window, "Window size W")->required();

  auto* groupring = app.add_subcommand("groupring", "Cyclic group ring operations");
  groupring->add_option("--base", o.base, "Base ring descriptor")->required();
  groupring->add_option("--order", o.order, "Group order")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  groupring->add_option("--op", o.op, "clean, twogood or invert")->required()->check(CLI::IsMember({"clean", "twogood", "invert"}));
  groupring->add_option("--element", o.element, "Element text")->required();

  auto* sigma = app.add_subcommand("sigma", "Whether doubling mod m is one cycle");
  sigma->add_option("--m", o.m, "Odd modulus")->required();

  std::vector<const char*> argv{"cleandecomp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Json report;
  report["command"] = chosen->get_name();
  try {
    const std::uint64_t seed = seed_from_environment();
    report["seed"] = seed;
    report["checks"] = Json::array();
    if (chosen == decompose) cmd_decompose(o, report);
    if (chosen == oracle) cmd_oracle(o, report);
    if (chosen == pierce) cmd_pierce(o, report);
    if (chosen == banded) cmd_banded(o, report, seed);
    if (chosen == groupring) cmd_groupring(o, report);
    if (chosen == sigma) cmd_sigma(o, report);
  } catch (const Error& e) {
    report.erase("input");
    report.erase("result");
    report.erase("checks");
    report["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    report["status"] = "error";
    out << report.dump(2) << "\n";
    err << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInputError : kExitVerificationFailed;
  }

  Json ordered;
  for (const char* key : {"command", "seed", "input", "result", "checks"})
    if (report.contains(key)) ordered[key] = std::move(report[key]);
  bool passed = true;
  for (const auto& c : ordered["checks"]) passed = passed && c["passed"].get<bool>();
  ordered["status"] = passed ? "pass" : "fail";
  out << ordered.dump(2) << "\n";
  for (const auto& c : ordered["checks"])
    if (!c["passed"].get<bool>()) err << "check failed: " << c["name"].get<std::string>() << "\n";
  return passed ? kExitPass : kExitVerificationFailed;
}

}  // namespace cleandecomp::cli
