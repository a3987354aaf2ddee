#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fansig/fan.hpp"

// Star subdivisions of simplicial fans, subdivision maps, pullback of
// conewise-linear functions, convexity of such functions, and reproducible
// random subdivision chains.

namespace fansig {

// A star subdivision pi: source -> target. The source refines the target:
// both have the same support and every target cone is a union of source
// cones.
struct SubdivisionMap {
  Fan source;  // the subdivided fan
  Fan target;  // the fan that was subdivided
  // Per source ray, the smallest target cone containing it.
  std::vector<Cone> ray_image;
  int new_ray = -1;  // id of the inserted ray in the source fan
  Cone center;       // the target cone that was subdivided
};

// The smallest target cone containing the given source cone.
Cone cone_image(const SubdivisionMap& map, const Cone& c);

// Star subdivision at sigma along a primitive vector v in the relative
// interior of sigma: every maximal cone containing sigma is replaced by the
// cones obtained by swapping one generator of sigma for v. Subdividing a ray
// at its own generator is the identity.
std::pair<Fan, SubdivisionMap> star_subdivide(const Fan& fan,
                                              const Cone& sigma, const Vec& v);

// Star subdivision along the sum of sigma's primitive generators; preserves
// unimodularity.
std::pair<Fan, SubdivisionMap> regular_star_subdivide(const Fan& fan,
                                                      const Cone& sigma);

// Pullback of a conewise-linear function: evaluate on the source rays.
PLFunction pullback_pl(const SubdivisionMap& map, const PLFunction& f);

enum class Convexity { not_convex, convex, strictly_convex };

// Wall test on a complete fan: across every ridge, the linear extension from
// one side must not exceed the function on the opposite generator.
Convexity is_convex_pl(const Fan& fan, const PLFunction& f);

// Exact refinement certificate: recomputes every ray image and checks, for
// each maximal target cone, that its source preimage cones tile it exactly
// (cross-section volume bookkeeping with exact determinants).
bool verify_refinement(const SubdivisionMap& map);

// Deterministic chain of regular star subdivisions from a complete
// unimodular fan; step k subdivides a uniformly chosen cone of dimension
// >= 2. The generator is the linear congruential step
//   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
// seeded with `seed`; each step picks index state mod (candidate count) in
// the (dimension, lexicographic) cone order. Entry k holds the map from the
// (k+1)-st fan onto the k-th.
std::vector<SubdivisionMap> random_chain(std::uint64_t seed, const Fan& start,
                                         int steps);

}  // namespace fansig
