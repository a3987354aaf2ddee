#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fansig/errors.hpp"
#include "fansig/linalg.hpp"

// Lattice geometry of complete simplicial fans: construction with exact
// validation, classification flags, stars, quotient star fans, orientation
// signs, local convexity, conewise-linear functions, and a catalog of
// standard fans.

namespace fansig {

// A cone of a simplicial fan, as its strictly increasing list of ray ids.
// The empty list is the origin cone.
using Cone = std::vector<int>;

inline int dim_of(const Cone& c) { return static_cast<int>(c.size()); }

inline bool cone_subset(const Cone& a, const Cone& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Cone cone_union(const Cone& a, const Cone& b);
Cone cone_minus(const Cone& a, const Cone& b);

struct Fan {
  int rank = 0;
  std::vector<Vec> rays;                 // primitive integer generators
  std::vector<std::vector<Cone>> cones;  // cones[d], sorted lexicographically
  std::vector<Cone> maximal;             // inclusion-maximal cones, (dim, lex)
  bool complete = false;
  bool simplicial = true;
  bool unimodular = false;

  int num_rays() const { return static_cast<int>(rays.size()); }
  const std::vector<Cone>& cones_of(int d) const { return cones.at(d); }
  std::vector<Cone> all_cones() const;  // ordered by (dim, lex)
  int num_cones() const;
  bool contains_cone(const Cone& c) const;
  // rank x d matrix whose columns are the cone's primitive generators.
  Mat ray_matrix(const Cone& c) const;
};

// Builds and fully validates a fan from maximal-cone generators: enumerates
// all faces, rejects non-simplicial input, and verifies exactly (via rational
// Fourier-Motzkin feasibility) that every two maximal cones intersect in the
// cone on their shared rays.
Fan build_fan(int rank, const std::vector<Vec>& rays,
              const std::vector<Cone>& max_cones);

struct Flags {
  bool complete = false;
  bool simplicial = false;
  bool unimodular = false;
};

// Recomputes the classification flags of an already-built fan.
Flags classify(const Fan& fan);

struct StarSets {
  std::vector<Cone> star;         // cones containing tau
  std::vector<Cone> closed_star;  // faces of cones of the star
  std::vector<Cone> boundary;     // closed star minus star
};

StarSets star_sets(const Fan& fan, const Cone& tau);

// Quotient star fan: the image of Star(tau) under the integral projection
// V -> V / Span(tau), computed from a unimodular completion of tau's rays.
struct QuotientStar {
  Fan fan;                     // the quotient fan, of rank n - d(tau)
  std::vector<int> ray_image;  // source ray id -> quotient ray id, or -1
};

QuotientStar quotient_star_fan(const Fan& fan, const Cone& tau);

// Same, but the star is taken inside the given subfan (a face-closed set of
// cones of `fan`); used for the K-theory product coefficients.
QuotientStar quotient_star_fan(const Fan& fan, const Cone& tau,
                               const std::vector<Cone>& subfan);

// The largest subfan of `fan` whose rays all lie in the set S.
std::vector<Cone> spanned_subfan(const Fan& fan, const std::vector<int>& s);

// Orientation sign between a cone and one of its facets: (-1)^k where the
// ray of sigma missing from tau sits at (0-based) position k in sigma's
// sorted ray list. This convention makes the cellular differential square
// to zero.
int incidence_sign(const Fan& fan, const Cone& sigma, const Cone& tau);

// All cones of the fan having tau as a facet.
std::vector<Cone> cofacets(const Fan& fan, const Cone& tau);

// Whether |Star(sigma)| is a convex set: every boundary facet of the star's
// maximal-cone subcomplex must span a supporting hyperplane with all rays of
// the closed star weakly on the inner side.
bool is_star_support_convex(const Fan& fan, const Cone& sigma);
bool is_locally_convex(const Fan& fan);

// A conewise-linear function, stored by its values on the primitive ray
// generators. courant(fan, rho) is 1 at ray rho and 0 at all other rays.
struct PLFunction {
  std::vector<Rational> values;
};

PLFunction courant(const Fan& fan, int ray);
PLFunction linear_functional(const Fan& fan, const Vec& functional);

Rational pl_evaluate(const Fan& fan, const PLFunction& f, const Vec& p);

// Exact point location: coefficients of p in the cone's rays if p lies in
// the cone, std::nullopt otherwise.
std::optional<Vec> cone_coordinates(const Fan& fan, const Cone& c,
                                    const Vec& p);

// The smallest cone of the fan containing p.
Cone smallest_containing_cone(const Fan& fan, const Vec& p);

// Product fan: rays concatenated, maximal cones all pairwise unions.
Fan product_fan(const Fan& a, const Fan& b);

// Named fans: "projective(n)", "product(A,B)" (recursively), and aliases
// P0..P4, P1xP1, P1xP2, P2xP2, BlP2 (blowup of P2 at cone(e1,e2)),
// BlP1xP1 (blowup of P1xP1 at cone(e1,e2)), BlP1xP1xBlP1xP1.
Fan catalog(const std::string& name);

bool same_fan(const Fan& a, const Fan& b);

// Number of cones per dimension (the f-vector).
std::vector<int> f_vector(const Fan& fan);

Vec make_vec(std::initializer_list<long> coords);

}  // namespace fansig
