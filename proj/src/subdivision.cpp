#include "fansig/subdivision.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace fansig {

namespace {

bool is_primitive_integer(const Vec& v) {
  mpz_class g = 0;
  for (int i = 0; i < v.size(); ++i) {
    if (!v(i).is_integer()) return false;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v(i).num().get_mpz_t());
  }
  return g == 1;
}

std::vector<Cone> identity_ray_images(const Fan& fan) {
  std::vector<Cone> images;
  images.reserve(fan.num_rays());
  for (int i = 0; i < fan.num_rays(); ++i) images.push_back(Cone{i});
  return images;
}

}  // namespace

Cone cone_image(const SubdivisionMap& map, const Cone& c) {
  Vec p = Vec::Zero(map.source.rank);
  for (int id : c) p += map.source.rays[id];
  return smallest_containing_cone(map.target, p);
}

std::pair<Fan, SubdivisionMap> star_subdivide(const Fan& fan,
                                              const Cone& sigma,
                                              const Vec& v) {
  if (!fan.contains_cone(sigma))
    fail(ErrorCode::ConeNotInFan, "subdivision center");
  if (dim_of(sigma) == 0)
    fail(ErrorCode::PreconditionViolated, "cannot subdivide the origin cone");
  if (v.size() != fan.rank)
    fail(ErrorCode::PreconditionViolated, "vector has wrong length");
  if (!is_primitive_integer(v))
    fail(ErrorCode::NonPrimitive, "subdivision vector must be primitive");
  const auto coords = cone_coordinates(fan, sigma, v);
  if (!coords)
    fail(ErrorCode::NotInteriorPoint, "vector lies outside the cone");
  for (int i = 0; i < coords->size(); ++i)
    if ((*coords)(i).is_zero())
      fail(ErrorCode::NotInteriorPoint, "vector lies on a proper face");

  SubdivisionMap map;
  map.target = fan;
  map.center = sigma;

  if (dim_of(sigma) == 1) {
    // v is a positive multiple of a primitive vector and itself primitive,
    // so this is the identity subdivision.
    map.source = fan;
    map.new_ray = sigma[0];
    map.ray_image = identity_ray_images(fan);
    return {fan, map};
  }

  std::vector<Vec> rays = fan.rays;
  rays.push_back(v);
  const int new_id = static_cast<int>(rays.size()) - 1;

  std::vector<Cone> max_cones;
  for (const Cone& m : fan.maximal) {
    if (!cone_subset(sigma, m)) {
      max_cones.push_back(m);
      continue;
    }
    for (int r : sigma) {
      Cone c = cone_minus(m, Cone{r});
      c.push_back(new_id);
      max_cones.push_back(std::move(c));
    }
  }

  Fan result = build_fan(fan.rank, rays, max_cones);
  map.source = result;
  map.new_ray = new_id;
  map.ray_image.reserve(result.num_rays());
  for (const Vec& ray : result.rays)
    map.ray_image.push_back(smallest_containing_cone(fan, ray));
  return {std::move(result), std::move(map)};
}

std::pair<Fan, SubdivisionMap> regular_star_subdivide(const Fan& fan,
                                                      const Cone& sigma) {
  if (!fan.contains_cone(sigma))
    fail(ErrorCode::ConeNotInFan, "subdivision center");
  if (!fan.unimodular)
    fail(ErrorCode::NonUnimodular,
         "regular star subdivision needs a unimodular fan");
  if (dim_of(sigma) == 0)
    fail(ErrorCode::PreconditionViolated, "cannot subdivide the origin cone");
  Vec v = Vec::Zero(fan.rank);
  for (int id : sigma) v += fan.rays[id];
  auto result = star_subdivide(fan, sigma, v);
  if (!result.first.unimodular)
    throw std::logic_error(
        "regular star subdivision of a unimodular fan must stay unimodular");
  return result;
}

PLFunction pullback_pl(const SubdivisionMap& map, const PLFunction& f) {
  PLFunction out;
  out.values.reserve(map.source.num_rays());
  for (const Vec& ray : map.source.rays)
    out.values.push_back(pl_evaluate(map.target, f, ray));
  return out;
}

Convexity is_convex_pl(const Fan& fan, const PLFunction& f) {
  if (!fan.complete)
    fail(ErrorCode::NotComplete, "convexity needs a complete fan");
  if (static_cast<int>(f.values.size()) != fan.num_rays())
    fail(ErrorCode::PreconditionViolated,
         "value count does not match the ray count");
  bool strict = true;
  if (fan.rank == 0) return Convexity::strictly_convex;  // no walls
  for (const Cone& ridge : fan.cones_of(fan.rank - 1)) {
    const std::vector<Cone> walls = cofacets(fan, ridge);
    for (const Cone& side : walls)
      for (const Cone& other : walls) {
        if (side == other) continue;
        const int u = cone_minus(other, ridge)[0];
        const auto c = solve_unique(fan.ray_matrix(side), Vec(fan.rays[u]));
        Rational extension(0);
        for (int i = 0; i < dim_of(side); ++i)
          extension += (*c)(i)*f.values[side[i]];
        const Rational diff = f.values[u] - extension;
        if (diff < Rational(0)) return Convexity::not_convex;
        if (diff.is_zero()) strict = false;
      }
  }
  return strict ? Convexity::strictly_convex : Convexity::convex;
}

bool verify_refinement(const SubdivisionMap& map) {
  const Fan& src = map.source;
  const Fan& tgt = map.target;
  if (src.rank != tgt.rank) return false;
  if (static_cast<int>(map.ray_image.size()) != src.num_rays()) return false;
  for (int i = 0; i < src.num_rays(); ++i) {
    if (map.ray_image[i] != smallest_containing_cone(tgt, src.rays[i]))
      return false;
    if (!tgt.contains_cone(map.ray_image[i])) return false;
  }
  if (!src.complete || !tgt.complete) return false;

  // Per maximal target cone M: the source cones whose rays all lie in M must
  // tile M. With a = sum of M's dual basis rows, the cross-section
  // {x in M : <a,x> = 1} is a simplex of volume |det R_M| in the scaled ray
  // coordinates, and each full-dimensional subcone P contributes
  // |det R_P| / prod <a, ray> once its rays are rescaled onto the section.
  for (const Cone& m : tgt.maximal) {
    const Mat rm = tgt.ray_matrix(m);
    const Mat dual = inverse(rm);
    const Rational target_volume = abs(determinant(rm));
    Rational total(0);
    for (const Cone& p : src.maximal) {
      bool inside = true;
      for (int id : p)
        if (!cone_coordinates(tgt, m, src.rays[id])) {
          inside = false;
          break;
        }
      if (!inside) continue;
      const Mat rp = src.ray_matrix(p);
      Rational scale(1);
      for (int j = 0; j < rp.cols(); ++j) {
        Rational pairing(0);
        for (int i = 0; i < tgt.rank; ++i)
          pairing += dual.row(i).dot(rp.col(j));
        scale *= pairing;
      }
      total += abs(determinant(rp)) / scale;
    }
    if (total != target_volume) return false;
  }
  return true;
}

std::vector<SubdivisionMap> random_chain(std::uint64_t seed, const Fan& start,
                                         int steps) {
  if (!start.complete || !start.unimodular)
    fail(ErrorCode::NotCompleteSimplicialUnimodular,
         "chains start from complete unimodular fans");
  if (steps < 0)
    fail(ErrorCode::PreconditionViolated, "negative step count");
  std::vector<SubdivisionMap> chain;
  std::uint64_t state = seed;
  Fan current = start;
  for (int k = 0; k < steps; ++k) {
    std::vector<Cone> candidates;
    for (int d = 2; d <= current.rank; ++d)
      for (const Cone& c : current.cones_of(d)) candidates.push_back(c);
    if (candidates.empty())
      fail(ErrorCode::PreconditionViolated,
           "fan has no cones of dimension >= 2");
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const Cone& center = candidates[state % candidates.size()];
    auto [next, map] = regular_star_subdivide(current, center);
    chain.push_back(std::move(map));
    current = std::move(next);
  }
  return chain;
}

}  // namespace fansig
