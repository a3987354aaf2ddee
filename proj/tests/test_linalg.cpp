#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fansig/linalg.hpp"

using fansig::Mat;
using fansig::Rational;
using fansig::Vec;

namespace {

Mat make(int rows, int cols, std::initializer_list<long> entries) {
  Mat m(rows, cols);
  auto it = entries.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
  return m;
}

Vec vec(std::initializer_list<long> entries) {
  Vec v(static_cast<int>(entries.size()));
  int i = 0;
  for (long e : entries) v(i++) = Rational(e);
  return v;
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational(4, 6).str() == "2/3");
  CHECK(Rational(-4, 6).str() == "-2/3");
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(7).str() == "7");
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("banana"));
  CHECK(fansig::pow(Rational(-1, 2), 3) == Rational(-1, 8));
  CHECK(fansig::pow(Rational(5), 0) == Rational(1));
  CHECK(fansig::factorial(6) == Rational(720));
  CHECK(fansig::binomial(5, 2) == Rational(10));
  CHECK(fansig::binomial(3, 5) == Rational(0));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(22).to_long() == 22);
  CHECK_THROWS(Rational(1, 2).to_long());
}

TEST_CASE("rref and rank") {
  Mat m = make(3, 4, {1, 2, 3, 4, 2, 4, 6, 8, 1, 1, 1, 1});
  auto pivots = fansig::rref_in_place(m);
  CHECK(pivots == std::vector<int>{0, 1});
  CHECK(fansig::rank_of(make(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) == 3);
  CHECK(fansig::rank_of(make(2, 2, {1, 2, 2, 4})) == 1);
}

TEST_CASE("kernel basis") {
  // ker of (1 1 1) is 2-dimensional and orthogonal to the row.
  Mat m = make(1, 3, {1, 1, 1});
  Mat k = fansig::kernel_basis(m);
  REQUIRE(k.cols() == 2);
  CHECK((m * k).isZero(0));
  // Full-rank square matrix has trivial kernel.
  CHECK(fansig::kernel_basis(make(2, 2, {1, 1, 0, 1})).cols() == 0);
}

TEST_CASE("solve, determinant, inverse") {
  Mat a = make(2, 2, {1, 1, 0, 1});
  auto x = fansig::solve_unique(a, vec({3, 2}));
  REQUIRE(x.has_value());
  CHECK((*x)(0) == Rational(1));
  CHECK((*x)(1) == Rational(2));
  // Inconsistent overdetermined system.
  Mat tall = make(3, 1, {1, 0, 0});
  CHECK_FALSE(fansig::solve_unique(tall, vec({1, 1, 0})).has_value());

  CHECK(fansig::determinant(make(2, 2, {1, 1, 0, 1})) == Rational(1));
  CHECK(fansig::determinant(make(2, 2, {2, 0, 0, 3})) == Rational(6));
  CHECK(fansig::determinant(make(2, 2, {1, 2, 2, 4})) == Rational(0));
  Mat inv = fansig::inverse(make(2, 2, {1, 1, 0, 1}));
  CHECK(inv == make(2, 2, {1, -1, 0, 1}));
  CHECK_THROWS(fansig::inverse(make(2, 2, {1, 2, 2, 4})));
}

TEST_CASE("congruence inertia") {
  // Hyperbolic plane: signature 0, no zero part.
  Mat h = make(2, 2, {0, 1, 1, 0});
  auto in = fansig::congruence_inertia(h);
  CHECK(in.positive == 1);
  CHECK(in.negative == 1);
  CHECK(in.zero == 0);
  CHECK(in.signature() == 0);

  auto d = fansig::congruence_inertia(make(3, 3, {1, 0, 0, 0, -1, 0, 0, 0, 2}));
  CHECK(d.positive == 2);
  CHECK(d.negative == 1);
  CHECK(d.signature() == 1);

  // Rank-deficient: x^2 with a zero direction.
  auto z = fansig::congruence_inertia(make(2, 2, {1, 0, 0, 0}));
  CHECK(z.positive == 1);
  CHECK(z.zero == 1);

  // Congruence-invariant: P^T G P has the same inertia.
  Mat g = make(3, 3, {2, 1, 0, 1, -3, 1, 0, 1, 0});
  Mat p = make(3, 3, {1, 2, 0, 0, 1, 5, 1, 0, 1});
  REQUIRE(fansig::determinant(p) != Rational(0));
  Mat g2 = p.transpose() * g * p;
  auto i1 = fansig::congruence_inertia(g);
  auto i2 = fansig::congruence_inertia(g2);
  CHECK(i1.positive == i2.positive);
  CHECK(i1.negative == i2.negative);
}

TEST_CASE("index subsets and compound matrix") {
  auto s = fansig::index_subsets(4, 2);
  CHECK(s.size() == 6);
  CHECK(s.front() == std::vector<int>{0, 1});
  CHECK(s.back() == std::vector<int>{2, 3});
  CHECK(fansig::index_subsets(3, 0).size() == 1);

  // Second compound of a diagonal matrix is diagonal with pairwise products.
  Mat m = make(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 5});
  Mat c = fansig::compound_matrix(m, 2);
  CHECK(c == make(3, 3, {6, 0, 0, 0, 10, 0, 0, 0, 15}));
  // det(compound_2) relates to det(m): for 3x3, det C_2(M) = det(M)^2.
  CHECK(fansig::determinant(c) == Rational(900));
}

TEST_CASE("unimodular complement") {
  // e1 extends to the standard basis: U = I works and projection is row 2.
  Mat v = make(2, 1, {1, 0});
  auto u = fansig::unimodular_complement(v);
  REQUIRE(u.has_value());
  Mat expect = Mat::Zero(2, 1);
  expect(0, 0) = Rational(1);
  CHECK((*u) * v == expect);
  CHECK(fansig::abs(fansig::determinant(*u)) == Rational(1));

  // (1,1) is primitive: completable, with |det U| = 1.
  auto u2 = fansig::unimodular_complement(make(2, 1, {1, 1}));
  REQUIRE(u2.has_value());
  CHECK(fansig::abs(fansig::determinant(*u2)) == Rational(1));

  // (2,0) is not primitive: not part of any lattice basis.
  CHECK_FALSE(fansig::unimodular_complement(make(2, 1, {2, 0})).has_value());

  // Two columns spanning an index-2 sublattice of Z^2.
  CHECK_FALSE(
      fansig::unimodular_complement(make(2, 2, {1, 1, 1, -1})).has_value());

  // Dependent columns.
  CHECK_FALSE(
      fansig::unimodular_complement(make(2, 2, {1, 2, 1, 2})).has_value());

  // A genuinely 3d case: columns (1,2,3), (0,1,4).
  Mat v3 = make(3, 2, {1, 0, 2, 1, 3, 4});
  auto u3 = fansig::unimodular_complement(v3);
  REQUIRE(u3.has_value());
  Mat expect3 = Mat::Zero(3, 2);
  expect3(0, 0) = Rational(1);
  expect3(1, 1) = Rational(1);
  CHECK((*u3) * v3 == expect3);
  CHECK(fansig::abs(fansig::determinant(*u3)) == Rational(1));
}

TEST_CASE("nonnegative solution feasibility") {
  // x0 + x1 = 1, x >= 0: feasible.
  CHECK(fansig::nonneg_solution_exists(make(1, 2, {1, 1}), vec({1})));
  // x0 + x1 = -1, x >= 0: infeasible.
  CHECK_FALSE(fansig::nonneg_solution_exists(make(1, 2, {1, 1}), vec({-1})));
  // x0 - x1 = 0, x0 + x1 = 2: x = (1,1) works.
  CHECK(fansig::nonneg_solution_exists(make(2, 2, {1, -1, 1, 1}), vec({0, 2})));
  // x0 = -3 alone.
  CHECK_FALSE(fansig::nonneg_solution_exists(make(1, 1, {1}), vec({-3})));
  // No variables: 0 = 0 feasible, 0 = 1 infeasible.
  CHECK(fansig::nonneg_solution_exists(Mat(1, 0), vec({0})));
  CHECK_FALSE(fansig::nonneg_solution_exists(Mat(1, 0), vec({1})));
  // Underdetermined with a forced negative: x0 - x1 = 1, x0 + x1 = 1,
  // 2*x1 = 0 -> x = (1, 0) is feasible.
  CHECK(fansig::nonneg_solution_exists(make(2, 2, {1, -1, 1, 1}), vec({1, 1})));

  // The cone-overlap instance: cone(e1, e2) and cone(e1, e1+e2) share the
  // ray e1 but overlap in 2d; the normalized intersection system must be
  // feasible. Unknowns (a_e2, b_{e1+e2}, a_e1, b_e1):
  //   a_e1*e1 + a_e2*e2 = b_e1*e1 + b_{11}*(e1+e2),  a_e2 + b_{11} = 1.
  Mat e(3, 4);
  e.row(0) = vec({0, -1, 1, -1}).transpose();  // x: a_e1 - b_e1 - b11 = 0
  e.row(1) = vec({1, -1, 0, 0}).transpose();   // y: a_e2 - b11 = 0
  e.row(2) = vec({1, 1, 0, 0}).transpose();    // normalization
  CHECK(fansig::nonneg_solution_exists(e, vec({0, 0, 1})));
}

TEST_CASE("eigen expression interop") {
  Mat a = make(2, 2, {1, 2, 3, 4});
  Vec v = vec({1, 1});
  Vec w = a * v + Rational(1, 2) * v;
  CHECK(w(0) == Rational(7, 2));
  CHECK(w(1) == Rational(15, 2));
  Mat b = a.transpose() * a - Mat::Identity(2, 2);
  CHECK(b(0, 0) == Rational(9));
}
