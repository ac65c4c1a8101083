#include "cleandecomp/matrix.hpp"

#include "cleandecomp/error.hpp"

namespace cleandecomp {

namespace {

void require_conformable(const Matrix& a, const Matrix& b, bool for_product) {
  if (!(a.ring() == b.ring())) throw Error(ErrorCode::DescriptorMismatch, a.ring().name() + " vs " + b.ring().name());
  bool ok = for_product ? a.cols() == b.rows() : (a.rows() == b.rows() && a.cols() == b.cols());
  if (!ok) {
    throw Error(ErrorCode::ShapeMismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

void check_index(std::size_t idx, std::size_t n) {
  if (idx >= n) throw Error(ErrorCode::ShapeMismatch, "generator index " + std::to_string(idx) + " out of range");
}

}  // namespace

Matrix::Matrix(const Ring& ring, std::size_t rows, std::size_t cols)
    : ring_(&ring), rows_(rows), cols_(cols), entries_(rows * cols, Element::zero(ring)) {}

Matrix::Matrix(const Ring& ring, std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : ring_(&ring), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "entry count does not match shape");
  for (const auto& e : entries_) {
    if (!(e.ring() == ring)) throw Error(ErrorCode::DescriptorMismatch, "entry in " + e.ring().name() + ", expected " + ring.name());
  }
}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  Element one = Element::one(ring);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

Matrix Matrix::zero(const Ring& ring, std::size_t rows, std::size_t cols) { return Matrix(ring, rows, cols); }

Matrix Matrix::from_rows(const Ring& ring, const std::vector<std::vector<Element>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::ShapeMismatch, "matrix needs at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<Element> entries;
  for (const auto& row : rows) {
    if (row.size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(ring, rows.size(), cols, std::move(entries));
}

Matrix Matrix::parse_rows(const Ring& ring, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Element>> parsed;
  for (const auto& row : rows) {
    auto& out = parsed.emplace_back();
    for (const auto& s : row) out.push_back(Element::parse(ring, s));
  }
  return from_rows(ring, parsed);
}

Matrix Matrix::from_element(const Element& element) {
  const Ring& ring = element.ring();
  if (ring.kind() != Ring::Kind::Matrix) throw Error(ErrorCode::UnsupportedRing, ring.name() + " is not a matrix ring");
  auto terms = element.terms();
  return Matrix(ring.base(), ring.dimension(), ring.dimension(), std::vector<Element>(terms.begin(), terms.end()));
}

Element Matrix::to_element() const {
  if (!is_square()) throw Error(ErrorCode::ShapeMismatch, "only square matrices are ring elements");
  return Element::from_terms(Ring::matrix(*ring_, rows_), entries_);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
  std::vector<Element> out;
  out.reserve(nr * nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) out.push_back((*this)(r0 + i, c0 + j));
  }
  return Matrix(*ring_, nr, nc, std::move(out));
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ',';
      out += (*this)(i, j).to_string();
    }
    out += ']';
  }
  return out + "]";
}

Matrix Matrix::operator-() const {
  std::vector<Element> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(-e);
  return Matrix(*ring_, rows_, cols_, std::move(out));
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_conformable(a, b, false);
  std::vector<Element> out;
  out.reserve(a.entries_.size());
  for (std::size_t i = 0; i < a.entries_.size(); ++i) out.push_back(a.entries_[i] + b.entries_[i]);
  return Matrix(*a.ring_, a.rows_, a.cols_, std::move(out));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_conformable(a, b, false);
  std::vector<Element> out;
  out.reserve(a.entries_.size());
  for (std::size_t i = 0; i < a.entries_.size(); ++i) out.push_back(a.entries_[i] - b.entries_[i]);
  return Matrix(*a.ring_, a.rows_, a.cols_, std::move(out));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_conformable(a, b, true);
  Matrix out(*a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Element& lhs = a(i, k);
      if (lhs.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Element& rhs = b(k, j);
        if (rhs.is_zero()) continue;
        out(i, j) += lhs * rhs;
      }
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring() == b.ring() && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }
Matrix mat_add(const Matrix& a, const Matrix& b) { return a + b; }
Matrix mat_sub(const Matrix& a, const Matrix& b) { return a - b; }

Matrix block_compose(const std::vector<std::vector<Matrix>>& blocks) {
  if (blocks.empty() || blocks.front().empty()) throw Error(ErrorCode::ShapeMismatch, "empty block grid");
  const Ring& ring = blocks.front().front().ring();
  std::vector<std::size_t> heights, widths;
  for (const auto& row : blocks) heights.push_back(row.front().rows());
  for (const auto& b : blocks.front()) widths.push_back(b.cols());
  std::size_t total_rows = 0, total_cols = 0;
  for (auto h : heights) total_rows += h;
  for (auto w : widths) total_cols += w;
  Matrix out(ring, total_rows, total_cols);
  std::size_t r0 = 0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    if (blocks[bi].size() != widths.size()) throw Error(ErrorCode::ShapeMismatch, "ragged block grid");
    std::size_t c0 = 0;
    for (std::size_t bj = 0; bj < widths.size(); ++bj) {
      const Matrix& b = blocks[bi][bj];
      if (!(b.ring() == ring)) throw Error(ErrorCode::DescriptorMismatch, "blocks over different rings");
      if (b.rows() != heights[bi] || b.cols() != widths[bj]) throw Error(ErrorCode::ShapeMismatch, "block size mismatch");
      for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
      }
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return out;
}

Matrix generator_matrix(const Generator& g, const Ring& ring, std::size_t n) {
  Matrix m = Matrix::identity(ring, n);
  apply_left(g, m);
  return m;
}

void apply_left(const Generator& g, Matrix& m) {
  const std::size_t n = m.rows();
  std::visit(
      [&](const auto& gen) {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, Transvection>) {
          check_index(gen.row, n);
          check_index(gen.col, n);
          if (gen.row == gen.col) throw Error(ErrorCode::BadInput, "transvection needs distinct indices");
          for (std::size_t c = 0; c < m.cols(); ++c) {
            const Element& src = m(gen.col, c);
            if (!src.is_zero()) m(gen.row, c) += gen.factor * src;
          }
        } else if constexpr (std::is_same_v<T, RowSwap>) {
          check_index(gen.i, n);
          check_index(gen.j, n);
          if (gen.i == gen.j) throw Error(ErrorCode::BadInput, "swap needs distinct indices");
          for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(gen.i, c), m(gen.j, c));
        } else if constexpr (std::is_same_v<T, RowScale>) {
          check_index(gen.row, n);
          for (std::size_t c = 0; c < m.cols(); ++c) m(gen.row, c) = gen.factor * m(gen.row, c);
        } else {
          m = -m;
        }
      },
      g);
}

Generator generator_inverse(const Generator& g) {
  return std::visit(
      [](const auto& gen) -> Generator {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, Transvection>) {
          return Transvection{gen.row, gen.col, -gen.factor, gen.side};
        } else if constexpr (std::is_same_v<T, RowScale>) {
          return RowScale{gen.row, gen.inverse, gen.factor};
        } else {
          return gen;
        }
      },
      g);
}

std::vector<Generator> embed_generator(const Generator& g, std::size_t offset, std::size_t block_size, const Ring& ring) {
  return std::visit(
      [&](const auto& gen) -> std::vector<Generator> {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, Transvection>) {
          return {Transvection{gen.row + offset, gen.col + offset, gen.factor, gen.side}};
        } else if constexpr (std::is_same_v<T, RowSwap>) {
          return {RowSwap{gen.i + offset, gen.j + offset}};
        } else if constexpr (std::is_same_v<T, RowScale>) {
          return {RowScale{gen.row + offset, gen.factor, gen.inverse}};
        } else {
          const Element minus_one = -Element::one(ring);
          std::vector<Generator> out;
          for (std::size_t r = 0; r < block_size; ++r) out.push_back(RowScale{offset + r, minus_one, minus_one});
          return out;
        }
      },
      g);
}

Matrix generator_product(const std::vector<Generator>& gens, const Ring& ring, std::size_t n) {
  Matrix m = Matrix::identity(ring, n);
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) apply_left(*it, m);
  return m;
}

std::string generator_to_string(const Generator& g) {
  return std::visit(
      [](const auto& gen) -> std::string {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, Transvection>) {
          return std::string(gen.side == Side::Row ? "row" : "col") + "-transvection(" + std::to_string(gen.row) + "," +
                 std::to_string(gen.col) + "," + gen.factor.to_string() + ")";
        } else if constexpr (std::is_same_v<T, RowSwap>) {
          return "swap(" + std::to_string(gen.i) + "," + std::to_string(gen.j) + ")";
        } else if constexpr (std::is_same_v<T, RowScale>) {
          return "scale(" + std::to_string(gen.row) + "," + gen.factor.to_string() + ")";
        } else {
          return "negate";
        }
      },
      g);
}

}  // namespace cleandecomp
