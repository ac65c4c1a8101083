#include "cleandecomp/banded.hpp"

#include <mutex>

#include "cleandecomp/error.hpp"
#include "cleandecomp/random.hpp"
#include "cleandecomp/unit.hpp"

namespace cleandecomp {

namespace {

std::size_t distance(std::size_t i, std::size_t j) { return i > j ? i - j : j - i; }

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

BandedOperator::BandedOperator(const Ring& base, std::size_t bandwidth, Generator entry)
    : base_(&base), bandwidth_(bandwidth), entry_(std::move(entry)) {}

Element BandedOperator::operator()(std::size_t i, std::size_t j) const {
  if (i == 0 || j == 0) throw Error(ErrorCode::BadInput, "operator indices start at 1");
  if (distance(i, j) > bandwidth_) return Element::zero(*base_);
  return entry_(i, j);
}

bool BandedOperator::band_contract_holds(std::size_t window) const {
  for (std::size_t i = 1; i <= window; ++i) {
    const std::size_t gap = bandwidth_ + 1 + i % 3;
    if (!entry_(i, i + gap).is_zero()) return false;
    if (i > gap && !entry_(i, i - gap).is_zero()) return false;
  }
  return true;
}

BandedOperator BandedOperator::zero(const Ring& base) {
  return {base, 0, [&base](std::size_t, std::size_t) { return Element::zero(base); }};
}

BandedOperator BandedOperator::identity(const Ring& base) {
  return {base, 0, [&base](std::size_t i, std::size_t j) { return i == j ? Element::one(base) : Element::zero(base); }};
}

BandedOperator BandedOperator::shift(const Ring& base) {
  return {base, 1, [&base](std::size_t i, std::size_t j) { return i == j + 1 ? Element::one(base) : Element::zero(base); }};
}

BandedOperator BandedOperator::tridiagonal(const Ring& base) {
  return {base, 1,
          [&base](std::size_t i, std::size_t j) { return distance(i, j) <= 1 ? Element::one(base) : Element::zero(base); }};
}

BandedOperator BandedOperator::random(const Ring& base, std::size_t bandwidth, std::uint64_t seed) {
  return {base, bandwidth, [&base, bandwidth, seed](std::size_t i, std::size_t j) {
            if (distance(i, j) > bandwidth) return Element::zero(base);
            Rng rng(splitmix(splitmix(seed) ^ splitmix((std::uint64_t{i} << 32) ^ j)));
            return random_element(base, rng);
          }};
}

BandedOperator BandedOperator::from_bands(const Ring& base, std::vector<std::pair<long, std::vector<Element>>> bands) {
  std::size_t width = 0;
  for (const auto& [offset, pattern] : bands) {
    if (pattern.empty()) throw Error(ErrorCode::BadInput, "band pattern is empty");
    for (const Element& x : pattern)
      if (!(x.ring() == base)) throw Error(ErrorCode::DescriptorMismatch, "band entry outside " + base.name());
    width = std::max<std::size_t>(width, static_cast<std::size_t>(offset < 0 ? -offset : offset));
  }
  auto shared = std::make_shared<const std::vector<std::pair<long, std::vector<Element>>>>(std::move(bands));
  return {base, width, [&base, shared](std::size_t i, std::size_t j) {
            Element sum = Element::zero(base);
            const long offset = static_cast<long>(i) - static_cast<long>(j);
            for (const auto& [o, pattern] : *shared)
              if (o == offset) sum += pattern[(j - 1) % pattern.size()];
            return sum;
          }};
}

BandedOperator operator+(const BandedOperator& a, const BandedOperator& b) {
  require_same_ring(Element::zero(a.base()), Element::zero(b.base()));
  return {a.base(), std::max(a.bandwidth(), b.bandwidth()),
          [a, b](std::size_t i, std::size_t j) { return a(i, j) + b(i, j); }};
}

AbdSplit split_abd(const BandedOperator& phi) {
  const Ring& base = phi.base();
  const std::size_t b = phi.bandwidth();
  return {BandedOperator(base, b, [phi, &base](std::size_t i, std::size_t j) { return i > j ? phi(i, j) : Element::zero(base); }),
          BandedOperator(base, b, [phi, &base](std::size_t i, std::size_t j) { return i < j ? phi(i, j) : Element::zero(base); }),
          BandedOperator(base, 0, [phi, &base](std::size_t i, std::size_t j) { return i == j ? phi(i, j) : Element::zero(base); })};
}

std::pair<BandedOperator, BandedOperator> alternate_split(const BandedOperator& part, SplitKind kind,
                                                          const StrideSequence& strides) {
  const Ring& base = part.base();
  auto make = [&](bool even) {
    return BandedOperator(base, part.bandwidth(), [part, kind, strides, even, &base](std::size_t i, std::size_t j) {
      const std::size_t index = kind == SplitKind::Eta ? j : i;
      return strides.in_even_block(index) == even ? part(i, j) : Element::zero(base);
    });
  };
  return {make(true), make(false)};
}

bool has_diagonal_rule(const Ring& base) {
  switch (base.kind()) {
    case Ring::Kind::Rationals:
      return true;
    case Ring::Kind::IntegersMod:
      return base.modulus() > 1 && base.modulus() < Integer(std::uint64_t{1} << 62) &&
             factorize(base.modulus().convert_to<std::uint64_t>()).size() == 1;
    case Ring::Kind::LocalizedIntegers:
      return base.avoided_primes().size() == 1;
    case Ring::Kind::Matrix:
      return base.dimension() >= 2;
    default:
      return false;
  }
}

struct DiagonalDecomposition::Cache {
  std::mutex mutex;
  std::map<std::size_t, DiagonalEntry> entries;
};

DiagonalDecomposition::DiagonalDecomposition(BandedOperator delta)
    : delta_(std::move(delta)), cache_(std::make_shared<Cache>()) {}

namespace {

DiagonalEntry decompose_entry(const Element& a) {
  const Ring& r = a.ring();
  if (r.kind() == Ring::Kind::Matrix) {
    CleanDecomposition d = decompose_nxn(Matrix::from_element(a));
    return {d.units[0].value, d.units[0].inverse, d.units[1].value, d.units[1].inverse, d.idempotent};
  }
  // Local ring: a - 1 or a is a unit. Clean first, then lengthen.
  const Element one = Element::one(r);
  const bool shifted = is_unit(a - one);
  const Element e = shifted ? one : Element::zero(r);
  const UnitWitness u = try_invert(a - e);
  const Element reflection = Element::from_int(r, 2) * e - one;
  return {u.value, u.inverse, reflection, reflection, one - e};
}

}  // namespace

const DiagonalEntry& DiagonalDecomposition::at(std::size_t i) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->entries.find(i);
  if (it != cache_->entries.end()) return it->second;
  return cache_->entries.emplace(i, decompose_entry(delta_(i, i))).first->second;
}

DeltaParts delta_decompose(const BandedOperator& delta) {
  const Ring& base = delta.base();
  if (!has_diagonal_rule(base)) {
    throw Error(ErrorCode::NoScalarRule, base.name() + " has no diagonal 2-clean rule; apply block2 first");
  }
  auto diag = std::make_shared<const DiagonalDecomposition>(delta);
  auto pick = [&base, diag](Element DiagonalEntry::*field) {
    return BandedOperator(base, 0, [&base, diag, field](std::size_t i, std::size_t j) {
      return i == j ? diag->at(i).*field : Element::zero(base);
    });
  };
  return {pick(&DiagonalEntry::u1), pick(&DiagonalEntry::u2), pick(&DiagonalEntry::e), diag};
}

BandedOperator block2(const BandedOperator& phi) {
  const Ring& blocked = Ring::matrix(phi.base(), 2);
  const std::size_t b = phi.bandwidth();
  return {blocked, (b + 1) / 2, [phi, &blocked](std::size_t i, std::size_t j) {
            Element::Terms t = {phi(2 * i - 1, 2 * j - 1), phi(2 * i - 1, 2 * j), phi(2 * i, 2 * j - 1), phi(2 * i, 2 * j)};
            return Element::from_terms(blocked, std::move(t));
          }};
}

BandedDecomposition theorem8_decompose(const BandedOperator& input) {
  const bool blocked = !has_diagonal_rule(input.base());
  BandedOperator phi = blocked ? block2(input) : input;
  StrideSequence strides(phi.bandwidth());
  AbdSplit parts = split_abd(phi);
  auto [eta1, eta2] = alternate_split(parts.eta, SplitKind::Eta, strides);
  auto [rho1, rho2] = alternate_split(parts.rho, SplitKind::Rho, strides);
  DeltaParts delta = delta_decompose(parts.delta);
  auto diag = delta.diagonal;
  BandedOperator n1 = eta1 + rho2, n2 = eta2 + rho1;
  DecomposedUnit u1{n1 + delta.delta1, n1, [diag](std::size_t i) { return diag->at(i).u1_inverse; }};
  DecomposedUnit u2{n2 + delta.delta2, n2, [diag](std::size_t i) { return diag->at(i).u2_inverse; }};
  return {phi, blocked, strides, std::move(u1), std::move(u2), delta.delta_e};
}

SparseColumn apply_to_column(const BandedOperator& op, const SparseColumn& v) {
  SparseColumn out;
  const std::size_t b = op.bandwidth();
  for (const auto& [k, x] : v) {
    for (std::size_t i = k > b ? k - b : 1; i <= k + b; ++i) {
      Element y = op(i, k) * x;
      if (y.is_zero()) continue;
      auto [it, inserted] = out.emplace(i, y);
      if (!inserted) it->second += y;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

SparseColumn neumann_inverse_column(const DecomposedUnit& u, std::size_t j, std::size_t cap) {
  if (j == 0) throw Error(ErrorCode::BadInput, "operator indices start at 1");
  SparseColumn current{{j, u.diagonal_inverse(j)}};
  SparseColumn column = current;
  for (std::size_t applied = 0;; ++applied) {
    SparseColumn next = apply_to_column(u.nilpotent_part, current);
    for (auto& [i, x] : next) x = -(u.diagonal_inverse(i) * x);
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    if (next.empty()) break;
    if (applied == cap) {
      throw Error(ErrorCode::CapExceeded, "perturbation still nonzero after " + std::to_string(cap) + " applications at column " +
                                              std::to_string(j));
    }
    for (const auto& [i, x] : next) {
      auto [it, inserted] = column.emplace(i, x);
      if (!inserted) it->second += x;
    }
    current = std::move(next);
  }
  std::erase_if(column, [](const auto& kv) { return kv.second.is_zero(); });
  return column;
}

SparseColumn neumann_inverse_column(const DecomposedUnit& u, std::size_t j) {
  return neumann_inverse_column(u, j, 10 * (j + u.value.bandwidth() + 2));
}

namespace {

bool is_basis_column(const SparseColumn& v, std::size_t j) {
  return v.size() == 1 && v.begin()->first == j && v.begin()->second.is_one();
}

void verify_unit(VerificationReport& report, const std::string& tag, const DecomposedUnit& u, std::size_t columns) {
  std::map<std::size_t, SparseColumn> inverse;
  bool terminated = true;
  auto column = [&](std::size_t k) -> const SparseColumn* {
    auto it = inverse.find(k);
    if (it != inverse.end()) return &it->second;
    try {
      return &inverse.emplace(k, neumann_inverse_column(u, k)).first->second;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
      terminated = false;
      return nullptr;
    }
  };
  bool right = true, left = true;
  const std::size_t b = u.value.bandwidth();
  for (std::size_t j = 1; j <= columns; ++j) {
    const SparseColumn* c = column(j);
    right = right && c != nullptr && is_basis_column(apply_to_column(u.value, *c), j);
    // (U^-1 U) e_j = sum_k col_k(U^-1) U(k, j), right factors kept on the right.
    SparseColumn acc;
    for (std::size_t k = j > b ? j - b : 1; k <= j + b; ++k) {
      const Element ukj = u.value(k, j);
      if (ukj.is_zero()) continue;
      const SparseColumn* ck = column(k);
      if (ck == nullptr) {
        left = false;
        continue;
      }
      for (const auto& [i, x] : *ck) {
        auto [it, inserted] = acc.emplace(i, x * ukj);
        if (!inserted) it->second += x * ukj;
      }
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
    left = left && is_basis_column(acc, j);
  }
  report.checks.push_back({tag + " local nilpotence", terminated});
  report.checks.push_back({tag + " right inverse columns", right});
  report.checks.push_back({tag + " left inverse columns", left});
}

}  // namespace

VerificationReport window_verify(const BandedDecomposition& d, std::size_t window, std::size_t inverse_columns) {
  VerificationReport report;
  bool sum = true;
  for (std::size_t i = 1; i <= window && sum; ++i)
    for (std::size_t j = 1; j <= window && sum; ++j) sum = d.phi(i, j) == d.u1.value(i, j) + d.u2.value(i, j) + d.e(i, j);
  report.checks.push_back({"reconstruction", sum});

  bool idempotent = true;
  for (std::size_t i = 1; i <= window && idempotent; ++i) idempotent = is_idempotent(d.e(i, i));
  report.checks.push_back({"idempotent diagonal", idempotent});

  verify_unit(report, "unit 1", d.u1, inverse_columns);
  verify_unit(report, "unit 2", d.u2, inverse_columns);

  bool band = d.phi.band_contract_holds(window);
  for (const BandedOperator* op : {&d.u1.value, &d.u2.value, &d.e, &d.u1.nilpotent_part, &d.u2.nilpotent_part})
    band = band && op->band_contract_holds(window) && op->bandwidth() <= d.phi.bandwidth();
  report.checks.push_back({"band contract", band});
  return report;
}

VerificationReport window_verify(const BandedDecomposition& d, std::size_t window) {
  return window_verify(d, window, window);
}

}  // namespace cleandecomp
