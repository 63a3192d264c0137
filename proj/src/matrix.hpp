#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace corrfun {

using Vec = std::vector<Scalar>;

// Dense matrix over exact rationals. Multiplication skips zero entries,
// which keeps products with 0/1 action matrices near linear time.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const = default;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transposed() const;
  Vec apply(const Vec& v) const;

  bool is_zero() const;
  bool is_identity() const;

  void set_column(std::size_t j, const Vec& v);
  Vec column(std::size_t j) const;

  static Matrix kronecker(const Matrix& a, const Matrix& b);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

  std::string to_text() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec data_;
};

// Reduced row echelon form in place; returns the pivot columns. Pivots are
// chosen as the first nonzero entry by row order, no pivoting heuristics.
std::vector<std::size_t> rref_in_place(Matrix& m);

std::size_t rank(Matrix m);

// Exact solution of a x = b, or nullopt when the system is inconsistent.
// Free variables are set to zero.
std::optional<Vec> solve_linear(const Matrix& a, const Vec& b);

// Basis of the null space {x : a x = 0}. Canonical: one vector per free
// column in ascending order, carrying 1 at its own free column.
std::vector<Vec> kernel_basis(const Matrix& a);

// Inverse of a square matrix; throws Errc::singular when rank < n.
Matrix invert(const Matrix& a);

// Presentation of ambient / span(relators): projection p (q x n) and
// section s (n x q) with p s = id and p r = 0 for every relator r.
struct QuotientPresentation {
  Matrix projection;
  Matrix section;
  std::size_t dim() const { return projection.rows(); }
};

QuotientPresentation quotient_presentation(std::size_t ambient_dim,
                                           const std::vector<Vec>& relators);

}  // namespace corrfun
