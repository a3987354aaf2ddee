#include "fansig/linalg.hpp"

namespace fansig {

std::vector<std::vector<int>> index_subsets(int n, int q) {
  std::vector<std::vector<int>> out;
  if (q < 0 || q > n) return out;
  std::vector<int> cur(q);
  for (int i = 0; i < q; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = q - 1;
    while (i >= 0 && cur[i] == n - q + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (q == 0) out.assign(1, {});
  return out;
}

namespace {

// Truncated integer quotient of two integer-valued rationals.
Rational trunc_quotient(const Rational& a, const Rational& b) {
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
  return Rational(q);
}

}  // namespace

std::optional<Mat> unimodular_complement(const Mat& v) {
  const int n = static_cast<int>(v.rows());
  const int d = static_cast<int>(v.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j)
      if (!v(i, j).is_integer())
        throw std::logic_error("unimodular_complement: non-integer entry");
  Mat a = v;
  Mat u = Mat::Identity(n, n);
  for (int j = 0; j < d; ++j) {
    // Euclidean elimination below the diagonal of column j.
    while (true) {
      int best = -1;
      for (int i = j; i < n; ++i) {
        if (a(i, j).is_zero()) continue;
        if (best < 0 || abs(a(i, j)) < abs(a(best, j))) best = i;
      }
      if (best < 0) return std::nullopt;  // dependent columns
      if (best != j) {
        a.row(best).swap(a.row(j));
        u.row(best).swap(u.row(j));
      }
      bool clean = true;
      for (int i = j + 1; i < n; ++i) {
        if (a(i, j).is_zero()) continue;
        const Rational q = trunc_quotient(a(i, j), a(j, j));
        if (!q.is_zero()) {
          a.row(i) -= q * a.row(j);
          u.row(i) -= q * u.row(j);
        }
        if (!a(i, j).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (abs(a(j, j)) != Rational(1)) return std::nullopt;  // index > 1
    if (a(j, j).sign() < 0) {
      a.row(j) = -a.row(j);
      u.row(j) = -u.row(j);
    }
    for (int i = 0; i < j; ++i) {
      const Rational f = a(i, j);
      if (!f.is_zero()) {
        a.row(i) -= f * a.row(j);
        u.row(i) -= f * u.row(j);
      }
    }
  }
  Mat expect = Mat::Zero(n, d);
  for (int j = 0; j < d; ++j) expect(j, j) = Rational(1);
  if (a != expect)
    throw std::logic_error("unimodular_complement: reduction failed");
  return u;
}

bool nonneg_solution_exists(const Mat& e_mat, const Vec& e_vec) {
  const int rows = static_cast<int>(e_mat.rows());
  const int vars = static_cast<int>(e_mat.cols());
  Mat aug(rows, vars + 1);
  if (vars > 0) aug.leftCols(vars) = e_mat;
  aug.col(vars) = e_vec;
  const std::vector<int> pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == vars) return false;  // inconsistent
  std::vector<int> free_cols;
  {
    std::size_t pi = 0;
    for (int c = 0; c < vars; ++c) {
      if (pi < pivots.size() && pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  const int nf = static_cast<int>(free_cols.size());
  // Each original variable must be >= 0; express it affinely in the free
  // parameters t: rows of (coeffs | constant).
  std::vector<std::pair<Vec, Rational>> ineqs;
  for (int r = 0; r < static_cast<int>(pivots.size()); ++r) {
    Vec coef = Vec::Zero(nf);
    for (int j = 0; j < nf; ++j) coef(j) = -aug(r, free_cols[j]);
    ineqs.emplace_back(coef, aug(r, vars));
  }
  for (int j = 0; j < nf; ++j) {
    Vec coef = Vec::Zero(nf);
    coef(j) = Rational(1);
    ineqs.emplace_back(coef, Rational(0));
  }
  // Fourier-Motzkin elimination of the parameters, one at a time.
  for (int v = 0; v < nf; ++v) {
    std::vector<std::pair<Vec, Rational>> pos, neg, next;
    for (auto& iq : ineqs) {
      const int s = iq.first(v).sign();
      if (s > 0)
        pos.push_back(iq);
      else if (s < 0)
        neg.push_back(iq);
      else
        next.push_back(iq);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // a t + A >= 0 (a > 0), b t + B >= 0 (b < 0)  =>  a B - b A >= 0.
        const Rational a = p.first(v), b = q.first(v);
        Vec coef = a * q.first - b * p.first;
        coef(v) = Rational(0);
        next.emplace_back(std::move(coef), a * q.second - b * p.second);
      }
    ineqs = std::move(next);
  }
  for (const auto& iq : ineqs)
    if (iq.second.sign() < 0) return false;
  return true;
}

}  // namespace fansig
