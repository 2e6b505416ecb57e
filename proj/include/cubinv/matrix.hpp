#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cubinv/error.hpp"
#include "cubinv/poly.hpp"
#include "cubinv/tower.hpp"

namespace cubinv {

// Dense matrix over an exact coefficient type. Two instantiations are used:
// Mat<Scalar> for linear algebra over a field tower and Mat<MultiPoly> for
// determinant work on matrices of forms.
template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols, const T& init = T())
      : rows_(rows), cols_(cols), a_(rows * cols, init) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;
};

using ScalarMat = Mat<Scalar>;
using FormMat = Mat<MultiPoly>;

inline ScalarMat scalar_identity(std::size_t n) {
  ScalarMat m(n, n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

inline ScalarMat mat_mul(const ScalarMat& a, const ScalarMat& b) {
  if (a.cols() != b.rows()) throw std::logic_error("matrix product shape mismatch");
  ScalarMat out(a.rows(), b.cols(), Scalar(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

inline std::vector<Scalar> mat_vec(const ScalarMat& a,
                                   const std::vector<Scalar>& v) {
  if (a.cols() != v.size()) throw std::logic_error("matrix-vector shape mismatch");
  std::vector<Scalar> out(a.rows(), Scalar(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

inline ScalarMat transpose(const ScalarMat& a) {
  ScalarMat out(a.cols(), a.rows(), Scalar(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

// In-place reduced row echelon form; returns the pivot columns. The pivot in
// each column is the first nonzero candidate row, which keeps the routine
// deterministic across runs.
inline std::vector<std::size_t> rref(ScalarMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(row, sel);
    Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(ScalarMat m) { return rref(m).size(); }

// Basis of the right kernel. Vectors come out one per free column, in
// ascending column order, each normalized so its first nonzero entry is 1.
inline std::vector<std::vector<Scalar>> kernel_basis(ScalarMat m) {
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols(), Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
    for (const Scalar& x : v) {
      if (x.is_zero()) continue;
      Scalar inv = x.inverse();
      for (Scalar& y : v) y = inv * y;
      break;
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::optional<ScalarMat> inverse(const ScalarMat& a) {
  if (a.rows() != a.cols()) throw std::logic_error("inverse of non-square matrix");
  std::size_t n = a.rows();
  ScalarMat aug(n, 2 * n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar(1);
  }
  if (rref(aug).size() != n) return std::nullopt;
  ScalarMat out(n, n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

inline Scalar det(ScalarMat m) {
  if (m.rows() != m.cols()) throw std::logic_error("determinant of non-square matrix");
  Scalar d(1);
  for (std::size_t k = 0; k < m.rows(); ++k) {
    std::size_t sel = k;
    while (sel < m.rows() && m(sel, k).is_zero()) ++sel;
    if (sel == m.rows()) return Scalar(0);
    if (sel != k) {
      m.swap_rows(k, sel);
      d = -d;
    }
    d *= m(k, k);
    Scalar inv = m(k, k).inverse();
    for (std::size_t i = k + 1; i < m.rows(); ++i) {
      if (m(i, k).is_zero()) continue;
      Scalar f = inv * m(i, k);
      for (std::size_t j = k; j < m.cols(); ++j)
        m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

// Fraction-free determinant of a matrix of polynomials (Bareiss). Every
// division is exact by construction, including after row swaps.
inline MultiPoly det_bareiss(Mat<MultiPoly> m) {
  if (m.rows() != m.cols()) throw std::logic_error("determinant of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) throw std::logic_error("determinant of empty matrix");
  unsigned arity = m(0, 0).arity();
  if (n == 1) return m(0, 0);
  int sign = 1;
  MultiPoly prev = MultiPoly::constant(arity, Scalar(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t sel = k;
    while (sel < n && m(sel, k).is_zero()) ++sel;
    if (sel == n) return MultiPoly::zero(arity);
    if (sel != k) {
      m.swap_rows(k, sel);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw std::logic_error("Bareiss division was not exact");
        m(i, j) = std::move(*q);
      }
      m(i, k) = MultiPoly::zero(arity);
    }
    prev = m(k, k);
  }
  MultiPoly out = m(n - 1, n - 1);
  return sign < 0 ? -out : out;
}

// Applies an invertible linear change of variables to a polynomial:
// x_i := sum_j change(i, j) * y_j.
inline MultiPoly poly_substitute(const MultiPoly& p, const ScalarMat& change) {
  if (change.rows() != change.cols())
    throw std::logic_error("change of variables must be square");
  if (change.rows() != p.arity())
    throw std::logic_error("change of variables has wrong size for polynomial");
  if (rank(change) != change.rows())
    fail(errc::SingularChange, "change of variables is not invertible");
  std::vector<std::vector<Scalar>> rows(change.rows());
  for (std::size_t i = 0; i < change.rows(); ++i) {
    rows[i].reserve(change.cols());
    for (std::size_t j = 0; j < change.cols(); ++j)
      rows[i].push_back(change(i, j));
  }
  return substitute_linear(p, rows);
}

}  // namespace cubinv
