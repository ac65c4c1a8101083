#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cleandecomp/element.hpp"

namespace cleandecomp {

/// Dense rows x cols matrix over an arbitrary (possibly noncommutative)
/// entry ring. Indices are zero-based.
class Matrix {
 public:
  Matrix(const Ring& ring, std::size_t rows, std::size_t cols);
  Matrix(const Ring& ring, std::size_t rows, std::size_t cols, std::vector<Element> entries);

  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix zero(const Ring& ring, std::size_t rows, std::size_t cols);
  static Matrix from_rows(const Ring& ring, const std::vector<std::vector<Element>>& rows);
  /// Convenience for literals: every entry goes through Element::parse.
  static Matrix parse_rows(const Ring& ring, const std::vector<std::vector<std::string>>& rows);
  /// A square matrix viewed as an element of Mat:<ring>:<n>.
  static Matrix from_element(const Element& element);

  const Ring& ring() const noexcept { return *ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Element& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Element& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const std::vector<Element>& entries() const noexcept { return entries_; }

  /// Square matrices only.
  Element to_element() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_zero() const;

  std::string to_string() const;

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  const Ring* ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);

/// Assembles a grid of blocks; blocks in one grid row share a row count and
/// blocks in one grid column share a column count.
Matrix block_compose(const std::vector<std::vector<Matrix>>& blocks);

/// Left or right multiplication that produced a transvection.
enum class Side { Row, Column };

/// I + factor * e(row, col), row != col. As a left factor it adds
/// factor * (row col) to row `row`; as a right factor it adds (column row) *
/// factor to column `col`.
struct Transvection {
  std::size_t row;
  std::size_t col;
  Element factor;
  Side side;
};

/// Permutation matrix exchanging rows i and j.
struct RowSwap {
  std::size_t i;
  std::size_t j;
};

/// Identity with `factor` (a unit) at (row, row). Elementary row scaling;
/// produced only when a pivot is a unit other than 1.
struct RowScale {
  std::size_t row;
  Element factor;
  Element inverse;
};

/// -I.
struct NegateAll {};

using Generator = std::variant<Transvection, RowSwap, RowScale, NegateAll>;

/// The n x n matrix of a generator over `ring`.
Matrix generator_matrix(const Generator& g, const Ring& ring, std::size_t n);
/// Replaces m with G * m (a row operation).
void apply_left(const Generator& g, Matrix& m);
Generator generator_inverse(const Generator& g);
/// Re-indexes a generator of a diagonal block that starts at `offset`.
/// NegateAll becomes one RowScale(-1) per row of the block.
std::vector<Generator> embed_generator(const Generator& g, std::size_t offset, std::size_t block_size, const Ring& ring);
/// Ordered product G1 * G2 * ... * Gk as an n x n matrix.
Matrix generator_product(const std::vector<Generator>& gens, const Ring& ring, std::size_t n);
std::string generator_to_string(const Generator& g);

}  // namespace cleandecomp
