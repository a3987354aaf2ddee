#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "fansig/rational.hpp"

// Exact dense linear algebra over an ordered field scalar (used throughout
// with fansig::Rational). Everything is a free function over Eigen dense
// types; no floating point anywhere.

namespace fansig {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Mat = Matrix<Rational>;
using Vec = Vector<Rational>;

// Reduced row echelon form in place; returns the pivot column indices.
template <class Scalar>
std::vector<int> rref_in_place(Matrix<Scalar>& m) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != Scalar(0)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    m.row(r) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Scalar f = m(i, c);
      if (f != Scalar(0)) m.row(i) -= f * m.row(r);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Derived>
int rank_of(const Eigen::MatrixBase<Derived>& m) {
  Matrix<typename Derived::Scalar> copy = m;
  return static_cast<int>(rref_in_place(copy).size());
}

// Columns spanning ker(m), i.e. m * k = 0 and the columns are independent.
template <class Derived>
Matrix<typename Derived::Scalar> kernel_basis(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> copy = m;
  const std::vector<int> pivots = rref_in_place(copy);
  const int cols = static_cast<int>(m.cols());
  std::vector<int> free_cols;
  {
    std::size_t pi = 0;
    for (int c = 0; c < cols; ++c) {
      if (pi < pivots.size() && pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  Matrix<Scalar> k =
      Matrix<Scalar>::Zero(cols, static_cast<int>(free_cols.size()));
  for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
    const int f = free_cols[j];
    k(f, j) = Scalar(1);
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
      k(pivots[r], j) = -copy(r, f);
  }
  return k;
}

// Unique solution of A x = b for A with independent columns; std::nullopt if
// the system is inconsistent. Throws if A's columns are dependent (no use in
// this codebase has that shape).
template <class Scalar>
std::optional<Vector<Scalar>> solve_unique(const Matrix<Scalar>& a,
                                           const Vector<Scalar>& b) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  Matrix<Scalar> aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  const std::vector<int> pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  if (static_cast<int>(pivots.size()) != cols)
    throw std::logic_error("solve_unique: matrix has dependent columns");
  Vector<Scalar> x(cols);
  for (int r = 0; r < cols; ++r) x(pivots[r]) = aug(r, cols);
  return x;
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const int n = static_cast<int>(m.rows());
  if (n != static_cast<int>(m.cols()))
    throw std::logic_error("determinant: matrix not square");
  Scalar det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c) != Scalar(0)) {
        p = i;
        break;
      }
    if (p < 0) return Scalar(0);
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    const Scalar inv = Scalar(1) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      const Scalar f = m(i, c) * inv;
      if (f != Scalar(0)) m.row(i) -= f * m.row(c);
    }
  }
  return det;
}

template <class Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  const int n = static_cast<int>(m.rows());
  if (n != static_cast<int>(m.cols()))
    throw std::logic_error("inverse: matrix not square");
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  rref_in_place(aug);
  if (aug.leftCols(n) != Matrix<Scalar>::Identity(n, n))
    throw std::logic_error("inverse: matrix is singular");
  return aug.rightCols(n);
}

// Inertia of a symmetric matrix under congruence (Sylvester's law).
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature() const { return positive - negative; }
};

// Exact symmetric congruence diagonalization. A zero diagonal with a nonzero
// off-diagonal entry G(i,j) is the hyperbolic situation; adding row/column j
// onto i makes the diagonal entry 2*G(i,j) != 0 and the block then yields one
// positive and one negative pivot (net signature contribution zero).
template <class Scalar>
Inertia congruence_inertia(Matrix<Scalar> g) {
  const int n = static_cast<int>(g.rows());
  if (n != static_cast<int>(g.cols()) || g != Matrix<Scalar>(g.transpose()))
    throw std::logic_error("congruence_inertia: matrix not symmetric");
  Inertia in;
  for (int k = 0; k < n; ++k) {
    if (g(k, k) == Scalar(0)) {
      int jd = -1;
      for (int j = k + 1; j < n; ++j)
        if (g(j, j) != Scalar(0)) {
          jd = j;
          break;
        }
      if (jd >= 0) {
        g.row(k).swap(g.row(jd));
        g.col(k).swap(g.col(jd));
      } else {
        int pi = -1, pj = -1;
        for (int i = k; i < n && pi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (g(i, j) != Scalar(0)) {
              pi = i;
              pj = j;
              break;
            }
        if (pi < 0) {
          in.zero += n - k;  // remaining block is identically zero
          break;
        }
        g.row(pi) += g.row(pj);
        g.col(pi) += g.col(pj);
        if (pi != k) {
          g.row(k).swap(g.row(pi));
          g.col(k).swap(g.col(pi));
        }
      }
    }
    const Scalar d = g(k, k);
    if (d > Scalar(0))
      ++in.positive;
    else
      ++in.negative;
    for (int i = k + 1; i < n; ++i) {
      const Scalar f = g(i, k) / d;
      if (f != Scalar(0)) {
        g.row(i) -= f * g.row(k);
        g.col(i) -= f * g.col(k);
      }
    }
  }
  return in;
}

// All strictly increasing q-element index tuples from {0,...,n-1}, lex order.
std::vector<std::vector<int>> index_subsets(int n, int q);

// q-th compound matrix: entry (I, J) = det of the q x q minor of m on row
// subset I and column subset J, with subsets enumerated in lex order.
template <class Scalar>
Matrix<Scalar> compound_matrix(const Matrix<Scalar>& m, int q) {
  const auto rows_sets = index_subsets(static_cast<int>(m.rows()), q);
  const auto cols_sets = index_subsets(static_cast<int>(m.cols()), q);
  Matrix<Scalar> c(static_cast<int>(rows_sets.size()),
                   static_cast<int>(cols_sets.size()));
  for (int i = 0; i < static_cast<int>(rows_sets.size()); ++i)
    for (int j = 0; j < static_cast<int>(cols_sets.size()); ++j) {
      Matrix<Scalar> sub(q, q);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
          sub(a, b) = m(rows_sets[i][a], cols_sets[j][b]);
      c(i, j) = determinant(sub);
    }
  return c;
}

// Unimodular completion: for an integer n x d matrix V whose columns are part
// of a basis of the integer lattice, returns U in GL_n(Z) with U * V = [I; 0].
// The last n-d rows of U are then an integral projection onto the quotient
// lattice Z^n / (column span of V). Returns std::nullopt when the columns are
// not part of a lattice basis.
std::optional<Mat> unimodular_complement(const Mat& v);

// Exact feasibility of { x >= 0 : E x = e } by Gaussian elimination on the
// equalities followed by Fourier-Motzkin elimination of the free parameters.
bool nonneg_solution_exists(const Mat& e_mat, const Vec& e_vec);

}  // namespace fansig
