#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fansig/fan.hpp"

// Sheaves on the fan poset as stalk models with restriction matrices, the
// signed cellular complex and its cohomology, and the Grothendieck group
// K(fan) in the basis {[O(sigma)]} with the product formula and Euler
// characteristics.

namespace fansig {

enum class SheafKind { Constant, IndicatorStar, Skyscraper, LineO, Forms };

// A tagged description of one of the linear sheaves used throughout:
//   Constant(d)        the constant sheaf of stalk dimension d
//   IndicatorStar(s)   the constant rank-1 sheaf supported on Star(s)
//   Skyscraper(s)      rank 1 at s only
//   LineO(s)           stalk 1 exactly at cones sharing no ray with s
//   Forms(q)           q-forms: stalk at s is the q-th exterior power of
//                      the space of functionals vanishing on s
struct SheafSpec {
  SheafKind kind = SheafKind::Constant;
  int amount = 1;  // Constant dimension, or the exterior power q
  Cone cone;       // base cone for IndicatorStar / Skyscraper / LineO

  static SheafSpec constant(int dim) { return {SheafKind::Constant, dim, {}}; }
  static SheafSpec indicator_star(Cone c) {
    return {SheafKind::IndicatorStar, 1, std::move(c)};
  }
  static SheafSpec skyscraper(Cone c) {
    return {SheafKind::Skyscraper, 1, std::move(c)};
  }
  static SheafSpec line_o(Cone c) {
    return {SheafKind::LineO, 1, std::move(c)};
  }
  static SheafSpec forms(int q) { return {SheafKind::Forms, q, {}}; }
};

// Stalk dimensions per cone plus one restriction matrix (stalk at sigma ->
// stalk at tau) per facet incidence tau < sigma.
struct LinearSheaf {
  std::map<Cone, int> stalk_dim;
  std::map<std::pair<Cone, Cone>, Mat> restriction;  // key (sigma, facet tau)

  int dim_at(const Cone& c) const {
    const auto it = stalk_dim.find(c);
    return it == stalk_dim.end() ? 0 : it->second;
  }
  const Mat& restriction_to_facet(const Cone& sigma, const Cone& tau) const {
    return restriction.at({sigma, tau});
  }
};

int stalk_dimension(const Fan& fan, const SheafSpec& spec, const Cone& c);

LinearSheaf stalk_model(const Fan& fan, const SheafSpec& spec);

// Alternating sum over all cones of (-1)^(rank - dim) * stalk dimension.
long euler_char(const Fan& fan, const SheafSpec& spec);

// The signed cellular differentials d_i : C^i -> C^(i+1) for i = 0..rank-1,
// where C^i is the direct sum of the stalks over cones of dimension
// rank - i. Verifies the codimension-2 diamond commutation first.
std::vector<Mat> cellular_differentials(const Fan& fan,
                                        const LinearSheaf& sheaf);

// Exact cohomology dimensions (H^0, ..., H^rank) of the cellular complex.
std::vector<int> cellular_cohomology(const Fan& fan, const LinearSheaf& sheaf);

// An element of K(fan) (with rational scalars) in the basis {[O(sigma)]};
// zero coefficients are never stored.
struct KClass {
  std::map<Cone, Rational> coeff;

  bool operator==(const KClass& other) const = default;
};

KClass k_add(const KClass& a, const KClass& b);
KClass k_scale(const Rational& r, const KClass& a);

// Class of a sheaf in the {[O(sigma)]} basis. IndicatorStar expands by
// inclusion-exclusion over the faces of its base cone; Skyscraper inverts
// the star-sum identity by Moebius inversion over the face poset. Forms has
// no single-sheaf expansion here (see forms_sum_kclass).
KClass kclass_of(const Fan& fan, const SheafSpec& spec);

// Product in K(fan): bilinear extension of
//   [O(sigma)]*[O(tau)] = prod over the union of their rays of [O(rho)],
// with squarefree ray products expanded by the product formula whose
// coefficient at tau is (-1)^(quotient rank) times the Euler characteristic
// of the quotient star of tau inside the subfan spanned by the ray set.
KClass k_product(const Fan& fan, const KClass& a, const KClass& b);

// Euler characteristic, extended linearly from
//   chi([O(sigma)]) = sum over cones tau sharing no ray with sigma of
//   (-1)^(rank - dim tau).
Rational chi_k(const Fan& fan, const KClass& a);

// 2^(-h1) * prod over rays of ([O(rho)] + [O]), h1 = #rays - rank: the class
// of the direct sum of all exterior form sheaves.
KClass forms_sum_kclass(const Fan& fan);

}  // namespace fansig
