#include "matrix.hpp"

#include <sstream>

namespace corrfun {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::dimension,
          "matrix sum shape mismatch");
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = data_[i] + o.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::dimension,
          "matrix difference shape mismatch");
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = data_[i] - o.data_[i];
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(cols_ == o.rows_, Errc::dimension, "matrix product shape mismatch");
  Matrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b == 0) continue;
        out.at(i, j) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * c;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  require(v.size() == cols_, Errc::dimension, "matrix apply shape mismatch");
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) == 0 || v[j] == 0) continue;
      out[i] += at(i, j) * v[j];
    }
  return out;
}

bool Matrix::is_zero() const {
  for (const Scalar& x : data_)
    if (x != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  require(v.size() == rows_, Errc::dimension, "column height mismatch");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Scalar& x = a.at(ia, ja);
      if (x == 0) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          const Scalar& y = b.at(ib, jb);
          if (y == 0) continue;
          out.at(ia * b.rows() + ib, ja * b.cols() + jb) = x * y;
        }
    }
  return out;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out.set_column(j, cols[j]);
  return out;
}

std::string Matrix::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j).get_str();
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Scalar inv = 1 / m.at(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Scalar f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (m.at(r, j) == 0) continue;
        m.at(i, j) -= f * m.at(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
  require(b.size() == a.rows(), Errc::dimension, "rhs height mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug.at(i, a.cols());
  return x;
}

std::vector<Vec> kernel_basis(const Matrix& a) {
  Matrix r = a;
  auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix invert(const Matrix& a) {
  require(a.rows() == a.cols(), Errc::dimension, "inverse of non-square matrix");
  std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref_in_place(aug);
  require(pivots.size() == n && pivots.back() == n - 1, Errc::singular,
          "matrix is not invertible");
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

QuotientPresentation quotient_presentation(std::size_t ambient_dim,
                                           const std::vector<Vec>& relators) {
  Matrix r(relators.size(), ambient_dim);
  for (std::size_t i = 0; i < relators.size(); ++i) {
    require(relators[i].size() == ambient_dim, Errc::dimension,
            "relator has wrong length");
    for (std::size_t j = 0; j < ambient_dim; ++j) r.at(i, j) = relators[i][j];
  }
  auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  QuotientPresentation q;
  q.projection = Matrix(free_cols.size(), ambient_dim);
  q.section = Matrix(ambient_dim, free_cols.size());
  // e_f maps to itself; e_pivot reduces to minus the free part of its row.
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    q.projection.at(fi, free_cols[fi]) = 1;
    q.section.at(free_cols[fi], fi) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      q.projection.at(fi, pivots[i]) = -r.at(i, free_cols[fi]);
  }
  return q;
}

}  // namespace corrfun
