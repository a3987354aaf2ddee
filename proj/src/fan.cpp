#include "fansig/fan.hpp"

#include <gmpxx.h>

#include <iterator>
#include <map>
#include <set>
#include <sstream>

namespace fansig {

namespace {

std::string cone_str(const Cone& c) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << '}';
  return os.str();
}

bool is_integral(const Vec& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!v(i).is_integer()) return false;
  return true;
}

// gcd of the (integer) coordinates; 0 for the zero vector.
mpz_class coordinate_gcd(const Vec& v) {
  mpz_class g = 0;
  for (int i = 0; i < v.size(); ++i)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v(i).num().get_mpz_t());
  return g;
}

Rational dot(const Vec& a, const Vec& b) { return a.dot(b); }

// Inclusion-maximal elements of a list of sorted id sets, duplicates merged,
// ordered by (dim, lex).
std::vector<Cone> maximal_elements(std::vector<Cone> cones) {
  std::sort(cones.begin(), cones.end(), [](const Cone& a, const Cone& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  std::vector<Cone> out;
  for (const Cone& c : cones) {
    bool absorbed = false;
    for (const Cone& m : out)
      if (cone_subset(c, m)) {
        absorbed = true;
        break;
      }
    if (!absorbed) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// Improper-overlap test for two simplicial cones with shared ray ids S:
// feasibility of { R_A a = R_B b, a >= 0, b >= 0, sum over the non-shared
// coefficients = 1 }. A common point outside cone(S) can be rescaled to meet
// the normalization, and conversely a feasible point cannot lie in cone(S).
bool cones_overlap_improperly(const Fan& fan, const Cone& a, const Cone& b) {
  Cone shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(shared));
  const int na = dim_of(a), nb = dim_of(b);
  Mat e_mat = Mat::Zero(fan.rank + 1, na + nb);
  for (int k = 0; k < na; ++k) {
    e_mat.block(0, k, fan.rank, 1) = fan.rays[a[k]];
    if (!std::binary_search(shared.begin(), shared.end(), a[k]))
      e_mat(fan.rank, k) = Rational(1);
  }
  for (int k = 0; k < nb; ++k) {
    e_mat.block(0, na + k, fan.rank, 1) = -fan.rays[b[k]];
    if (!std::binary_search(shared.begin(), shared.end(), b[k]))
      e_mat(fan.rank, na + k) = Rational(1);
  }
  Vec e_vec = Vec::Zero(fan.rank + 1);
  e_vec(fan.rank) = Rational(1);
  return nonneg_solution_exists(e_mat, e_vec);
}

}  // namespace

Cone cone_union(const Cone& a, const Cone& b) {
  Cone r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(r));
  return r;
}

Cone cone_minus(const Cone& a, const Cone& b) {
  Cone r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(r));
  return r;
}

std::vector<Cone> Fan::all_cones() const {
  std::vector<Cone> out;
  for (const auto& level : cones)
    out.insert(out.end(), level.begin(), level.end());
  return out;
}

int Fan::num_cones() const {
  int n = 0;
  for (const auto& level : cones) n += static_cast<int>(level.size());
  return n;
}

bool Fan::contains_cone(const Cone& c) const {
  const int d = dim_of(c);
  if (d >= static_cast<int>(cones.size())) return false;
  return std::binary_search(cones[d].begin(), cones[d].end(), c);
}

Mat Fan::ray_matrix(const Cone& c) const {
  Mat m(rank, dim_of(c));
  for (int j = 0; j < dim_of(c); ++j) m.col(j) = rays[c[j]];
  return m;
}

Fan build_fan(int rank, const std::vector<Vec>& rays,
              const std::vector<Cone>& max_cones) {
  if (rank < 0) fail(ErrorCode::PreconditionViolated, "rank must be >= 0");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (static_cast<int>(rays[i].size()) != rank)
      fail(ErrorCode::PreconditionViolated,
           "ray " + std::to_string(i) + " has wrong coordinate count");
    if (!is_integral(rays[i]))
      fail(ErrorCode::PreconditionViolated,
           "ray " + std::to_string(i) + " has non-integer coordinates");
  }
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (coordinate_gcd(rays[i]) != 1)
      fail(ErrorCode::NonPrimitiveRay, "ray " + std::to_string(i));
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j])
        fail(ErrorCode::DuplicateRay,
             "rays " + std::to_string(i) + " and " + std::to_string(j));

  if (max_cones.empty())
    fail(ErrorCode::PreconditionViolated, "no maximal cones given");
  std::vector<Cone> input;
  input.reserve(max_cones.size());
  for (Cone c : max_cones) {
    std::sort(c.begin(), c.end());
    for (int id : c)
      if (id < 0 || id >= static_cast<int>(rays.size()))
        fail(ErrorCode::PreconditionViolated,
             "ray id " + std::to_string(id) + " out of range");
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      fail(ErrorCode::PreconditionViolated,
           "repeated ray id in cone " + cone_str(c));
    input.push_back(std::move(c));
  }

  Fan fan;
  fan.rank = rank;
  fan.rays = rays;

  for (const Cone& c : input)
    if (dim_of(c) > rank || rank_of(fan.ray_matrix(c)) != dim_of(c))
      fail(ErrorCode::NotSimplicial,
           "generators of cone " + cone_str(c) + " are dependent");

  fan.maximal = maximal_elements(std::move(input));

  // Face closure, one sorted level per dimension.
  std::vector<std::set<Cone>> levels(rank + 1);
  for (const Cone& m : fan.maximal) {
    const int d = dim_of(m);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      Cone face;
      for (int k = 0; k < d; ++k)
        if (mask & (1u << k)) face.push_back(m[k]);
      levels[dim_of(face)].insert(std::move(face));
    }
  }
  fan.cones.assign(rank + 1, {});
  for (int d = 0; d <= rank; ++d)
    fan.cones[d].assign(levels[d].begin(), levels[d].end());

  std::vector<bool> used(rays.size(), false);
  for (const Cone& m : fan.maximal)
    for (int id : m) used[id] = true;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i])
      fail(ErrorCode::DanglingRay,
           "ray " + std::to_string(i) + " lies in no maximal cone");

  for (std::size_t i = 0; i < fan.maximal.size(); ++i)
    for (std::size_t j = i + 1; j < fan.maximal.size(); ++j)
      if (cones_overlap_improperly(fan, fan.maximal[i], fan.maximal[j]))
        fail(ErrorCode::OverlappingCones,
             "cones " + cone_str(fan.maximal[i]) + " and " +
                 cone_str(fan.maximal[j]) +
                 " intersect outside their shared face");

  const Flags flags = classify(fan);
  fan.complete = flags.complete;
  fan.simplicial = flags.simplicial;
  fan.unimodular = flags.unimodular;
  return fan;
}

Flags classify(const Fan& fan) {
  Flags f;
  f.simplicial = true;
  f.unimodular = true;
  for (const Cone& m : fan.maximal) {
    if (rank_of(fan.ray_matrix(m)) != dim_of(m)) f.simplicial = false;
    if (!unimodular_complement(fan.ray_matrix(m)).has_value())
      f.unimodular = false;
  }
  if (fan.rank == 0) {
    f.complete = !fan.maximal.empty();
    return f;
  }
  // Pure of top dimension, and every ridge interior: a closed support whose
  // ridges all have two cofacets has no boundary, hence is all of V.
  bool pure = !fan.maximal.empty();
  for (const Cone& m : fan.maximal)
    if (dim_of(m) != fan.rank) pure = false;
  if (!pure) {
    f.complete = false;
    return f;
  }
  std::map<Cone, int> ridge_count;
  for (const Cone& m : fan.maximal)
    for (int k = 0; k < dim_of(m); ++k) {
      Cone ridge = m;
      ridge.erase(ridge.begin() + k);
      ++ridge_count[ridge];
    }
  f.complete = true;
  for (const auto& [ridge, count] : ridge_count)
    if (count != 2) f.complete = false;
  return f;
}

StarSets star_sets(const Fan& fan, const Cone& tau) {
  if (!fan.contains_cone(tau))
    fail(ErrorCode::ConeNotInFan, cone_str(tau));
  std::vector<Cone> star_max;
  for (const Cone& m : fan.maximal)
    if (cone_subset(tau, m)) star_max.push_back(m);
  StarSets s;
  for (const Cone& c : fan.all_cones()) {
    const bool in_star = cone_subset(tau, c);
    bool in_closed = in_star;
    for (const Cone& m : star_max) {
      if (in_closed) break;
      in_closed = cone_subset(c, m);
    }
    if (in_star) s.star.push_back(c);
    if (in_closed) s.closed_star.push_back(c);
    if (in_closed && !in_star) s.boundary.push_back(c);
  }
  return s;
}

std::vector<Cone> spanned_subfan(const Fan& fan, const std::vector<int>& s) {
  std::vector<int> ids = s;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int id : ids)
    if (id < 0 || id >= fan.num_rays())
      fail(ErrorCode::PreconditionViolated,
           "ray id " + std::to_string(id) + " out of range");
  std::vector<Cone> out;
  for (const Cone& c : fan.all_cones())
    if (cone_subset(c, ids)) out.push_back(c);
  return out;
}

QuotientStar quotient_star_fan(const Fan& fan, const Cone& tau) {
  return quotient_star_fan(fan, tau, fan.all_cones());
}

QuotientStar quotient_star_fan(const Fan& fan, const Cone& tau,
                               const std::vector<Cone>& subfan) {
  if (!fan.contains_cone(tau))
    fail(ErrorCode::ConeNotInFan, cone_str(tau));
  if (std::find(subfan.begin(), subfan.end(), tau) == subfan.end())
    fail(ErrorCode::ConeNotInFan, cone_str(tau) + " not in the subfan");
  if (!fan.unimodular)
    fail(ErrorCode::NonUnimodular, "quotient stars need a unimodular fan");
  const int n = fan.rank;
  const int d = dim_of(tau);

  Mat proj;
  if (d == 0) {
    proj = Mat::Identity(n, n);
  } else {
    const auto u = unimodular_complement(fan.ray_matrix(tau));
    if (!u)
      fail(ErrorCode::NonUnimodular,
           "rays of " + cone_str(tau) + " are not part of a lattice basis");
    proj = u->bottomRows(n - d);
  }

  std::vector<Cone> star;
  for (const Cone& c : subfan)
    if (cone_subset(tau, c)) star.push_back(c);

  std::vector<int> transverse;
  for (const Cone& c : star)
    for (int id : c)
      if (!std::binary_search(tau.begin(), tau.end(), id))
        transverse.push_back(id);
  std::sort(transverse.begin(), transverse.end());
  transverse.erase(std::unique(transverse.begin(), transverse.end()),
                   transverse.end());

  QuotientStar out;
  out.ray_image.assign(fan.num_rays(), -1);
  std::vector<Vec> q_rays;
  for (std::size_t k = 0; k < transverse.size(); ++k) {
    const Vec w = proj * fan.rays[transverse[k]];
    if (coordinate_gcd(w) != 1)
      fail(ErrorCode::ImagePrimitivityViolation,
           "image of ray " + std::to_string(transverse[k]) +
               " is not primitive");
    for (const Vec& prev : q_rays)
      if (prev == w)
        fail(ErrorCode::ImagePrimitivityViolation,
             "two star rays share the image of ray " +
                 std::to_string(transverse[k]));
    out.ray_image[transverse[k]] = static_cast<int>(k);
    q_rays.push_back(w);
  }

  std::vector<Cone> q_max;
  for (const Cone& c : maximal_elements(star)) {
    Cone image;
    for (int id : cone_minus(c, tau)) image.push_back(out.ray_image[id]);
    std::sort(image.begin(), image.end());
    q_max.push_back(std::move(image));
  }
  out.fan = build_fan(n - d, q_rays, q_max);
  return out;
}

int incidence_sign(const Fan& fan, const Cone& sigma, const Cone& tau) {
  if (!fan.contains_cone(sigma))
    fail(ErrorCode::ConeNotInFan, cone_str(sigma));
  if (!fan.contains_cone(tau)) fail(ErrorCode::ConeNotInFan, cone_str(tau));
  if (dim_of(sigma) != dim_of(tau) + 1 || !cone_subset(tau, sigma))
    fail(ErrorCode::NotAFacet,
         cone_str(tau) + " is not a facet of " + cone_str(sigma));
  const Cone dropped = cone_minus(sigma, tau);
  const auto it = std::find(sigma.begin(), sigma.end(), dropped[0]);
  const int k = static_cast<int>(it - sigma.begin());
  return (k % 2 == 0) ? 1 : -1;
}

std::vector<Cone> cofacets(const Fan& fan, const Cone& tau) {
  if (!fan.contains_cone(tau)) fail(ErrorCode::ConeNotInFan, cone_str(tau));
  std::vector<Cone> out;
  const int d = dim_of(tau);
  if (d + 1 >= static_cast<int>(fan.cones.size())) return out;
  for (const Cone& c : fan.cones[d + 1])
    if (cone_subset(tau, c)) out.push_back(c);
  return out;
}

bool is_star_support_convex(const Fan& fan, const Cone& sigma) {
  if (!fan.contains_cone(sigma))
    fail(ErrorCode::ConeNotInFan, cone_str(sigma));
  if (!fan.complete)
    fail(ErrorCode::NotComplete, "star convexity needs a complete fan");

  std::vector<Cone> star_max;
  for (const Cone& m : fan.maximal)
    if (cone_subset(sigma, m)) star_max.push_back(m);

  std::vector<int> closed_star_rays;
  for (const Cone& m : star_max)
    closed_star_rays.insert(closed_star_rays.end(), m.begin(), m.end());
  std::sort(closed_star_rays.begin(), closed_star_rays.end());
  closed_star_rays.erase(
      std::unique(closed_star_rays.begin(), closed_star_rays.end()),
      closed_star_rays.end());

  // Facet -> (cofacet count within the star, a dropped ray for orientation).
  std::map<Cone, std::pair<int, int>> facets;
  for (const Cone& m : star_max)
    for (int k = 0; k < dim_of(m); ++k) {
      Cone facet = m;
      facet.erase(facet.begin() + k);
      auto& entry = facets.try_emplace(std::move(facet), 0, m[k]).first->second;
      ++entry.first;
    }

  for (const auto& [facet, entry] : facets) {
    if (entry.first != 1) continue;  // interior wall of the star
    const Mat k = kernel_basis(Mat(fan.ray_matrix(facet).transpose()));
    if (k.cols() != 1)
      fail(ErrorCode::PreconditionViolated,
           "boundary facet " + cone_str(facet) + " does not span a hyperplane");
    Vec normal = k.col(0);
    const Rational inner = dot(normal, fan.rays[entry.second]);
    if (inner.is_zero())
      fail(ErrorCode::PreconditionViolated,
           "degenerate supporting hyperplane at " + cone_str(facet));
    if (inner < Rational(0)) normal = -normal;
    for (int id : closed_star_rays)
      if (dot(normal, fan.rays[id]) < Rational(0)) return false;
  }
  return true;
}

bool is_locally_convex(const Fan& fan) {
  for (const Cone& c : fan.all_cones())
    if (!is_star_support_convex(fan, c)) return false;
  return true;
}

PLFunction courant(const Fan& fan, int ray) {
  if (ray < 0 || ray >= fan.num_rays())
    fail(ErrorCode::PreconditionViolated,
         "ray id " + std::to_string(ray) + " out of range");
  PLFunction f;
  f.values.assign(fan.num_rays(), Rational(0));
  f.values[ray] = Rational(1);
  return f;
}

PLFunction linear_functional(const Fan& fan, const Vec& functional) {
  if (functional.size() != fan.rank)
    fail(ErrorCode::PreconditionViolated, "functional has wrong length");
  PLFunction f;
  f.values.reserve(fan.num_rays());
  for (const Vec& v : fan.rays) f.values.push_back(dot(functional, v));
  return f;
}

Rational pl_evaluate(const Fan& fan, const PLFunction& f, const Vec& p) {
  if (static_cast<int>(f.values.size()) != fan.num_rays())
    fail(ErrorCode::PreconditionViolated,
         "value count does not match the ray count");
  for (const Cone& m : fan.maximal) {
    const auto coords = cone_coordinates(fan, m, p);
    if (!coords) continue;
    Rational value(0);
    for (int i = 0; i < dim_of(m); ++i) value += (*coords)(i)*f.values[m[i]];
    return value;
  }
  fail(ErrorCode::PointOutsideSupport, "");
}

std::optional<Vec> cone_coordinates(const Fan& fan, const Cone& c,
                                    const Vec& p) {
  if (!fan.contains_cone(c)) fail(ErrorCode::ConeNotInFan, cone_str(c));
  if (p.size() != fan.rank)
    fail(ErrorCode::PreconditionViolated, "point has wrong length");
  if (dim_of(c) == 0) {
    if (p.isZero()) return Vec(0);
    return std::nullopt;
  }
  const auto x = solve_unique(fan.ray_matrix(c), Vec(p));
  if (!x) return std::nullopt;
  for (int i = 0; i < x->size(); ++i)
    if ((*x)(i) < Rational(0)) return std::nullopt;
  return x;
}

Cone smallest_containing_cone(const Fan& fan, const Vec& p) {
  for (const Cone& m : fan.maximal) {
    const auto coords = cone_coordinates(fan, m, p);
    if (!coords) continue;
    Cone out;
    for (int i = 0; i < dim_of(m); ++i)
      if (!(*coords)(i).is_zero()) out.push_back(m[i]);
    return out;
  }
  fail(ErrorCode::PointOutsideSupport, "");
}

Fan product_fan(const Fan& a, const Fan& b) {
  const int rank = a.rank + b.rank;
  std::vector<Vec> rays;
  rays.reserve(a.num_rays() + b.num_rays());
  for (const Vec& v : a.rays) {
    Vec w = Vec::Zero(rank);
    w.head(a.rank) = v;
    rays.push_back(w);
  }
  for (const Vec& v : b.rays) {
    Vec w = Vec::Zero(rank);
    w.tail(b.rank) = v;
    rays.push_back(w);
  }
  std::vector<Cone> max_cones;
  for (const Cone& ca : a.maximal)
    for (const Cone& cb : b.maximal) {
      Cone c = ca;
      for (int id : cb) c.push_back(id + a.num_rays());
      max_cones.push_back(std::move(c));
    }
  return build_fan(rank, rays, max_cones);
}

namespace {

Fan make_projective(int n) {
  if (n == 0) return build_fan(0, {}, {Cone{}});
  std::vector<Vec> rays;
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = Rational(1);
    rays.push_back(e);
  }
  rays.push_back(Vec::Constant(n, Rational(-1)));
  std::vector<Cone> max_cones;
  for (int drop = 0; drop <= n; ++drop) {
    Cone c;
    for (int i = 0; i <= n; ++i)
      if (i != drop) c.push_back(i);
    max_cones.push_back(std::move(c));
  }
  return build_fan(n, rays, max_cones);
}

std::vector<Vec> int_rays(int rank, std::initializer_list<std::vector<long>> rows) {
  std::vector<Vec> out;
  for (const auto& row : rows) {
    Vec v(rank);
    for (int i = 0; i < rank; ++i) v(i) = Rational(row[i]);
    out.push_back(v);
  }
  return out;
}

// Splits "A,B" at the single top-level comma (parenthesis depth 0).
std::pair<std::string, std::string> split_pair(const std::string& args) {
  int depth = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == '(') ++depth;
    if (args[i] == ')') --depth;
    if (args[i] == ',' && depth == 0)
      return {args.substr(0, i), args.substr(i + 1)};
  }
  fail(ErrorCode::UnknownName, "product needs two arguments");
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

Fan catalog(const std::string& raw_name) {
  const std::string name = trimmed(raw_name);
  if (name == "P0") return make_projective(0);
  if (name == "P1") return make_projective(1);
  if (name == "P2") return make_projective(2);
  if (name == "P3") return make_projective(3);
  if (name == "P4") return make_projective(4);
  if (name == "P1xP1") return product_fan(make_projective(1), make_projective(1));
  if (name == "P1xP2") return product_fan(make_projective(1), make_projective(2));
  if (name == "P2xP2") return product_fan(make_projective(2), make_projective(2));
  if (name == "BlP2") {
    // P2 star-subdivided at cone(e1,e2) along e1+e2 (blowup at a point).
    return build_fan(2, int_rays(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}),
                     {{1, 2}, {0, 2}, {0, 3}, {1, 3}});
  }
  if (name == "BlP1xP1") {
    // P1xP1 star-subdivided at cone(e1,e2) along e1+e2.
    return build_fan(
        2, int_rays(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}}),
        {{0, 3}, {1, 2}, {1, 3}, {0, 4}, {2, 4}});
  }
  if (name == "BlP1xP1xBlP1xP1")
    return product_fan(catalog("BlP1xP1"), catalog("BlP1xP1"));
  if (name.rfind("projective(", 0) == 0 && name.back() == ')') {
    const std::string arg = trimmed(name.substr(11, name.size() - 12));
    if (arg.empty() ||
        arg.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorCode::UnknownName, name);
    return make_projective(std::stoi(arg));
  }
  if (name.rfind("product(", 0) == 0 && name.back() == ')') {
    const auto [a, b] = split_pair(name.substr(8, name.size() - 9));
    return product_fan(catalog(a), catalog(b));
  }
  fail(ErrorCode::UnknownName, name);
}

bool same_fan(const Fan& a, const Fan& b) {
  if (a.rank != b.rank || a.num_rays() != b.num_rays()) return false;
  // Rays are distinct within a fan, so exact coordinates determine the
  // matching; cone sets are then compared through it.
  std::vector<int> to_b(a.num_rays(), -1);
  for (int i = 0; i < a.num_rays(); ++i) {
    for (int j = 0; j < b.num_rays(); ++j)
      if (a.rays[i] == b.rays[j]) {
        to_b[i] = j;
        break;
      }
    if (to_b[i] < 0) return false;
  }
  std::vector<Cone> mapped;
  for (const Cone& c : a.maximal) {
    Cone m;
    for (int id : c) m.push_back(to_b[id]);
    std::sort(m.begin(), m.end());
    mapped.push_back(std::move(m));
  }
  std::vector<Cone> expected = b.maximal;
  std::sort(mapped.begin(), mapped.end());
  std::sort(expected.begin(), expected.end());
  return mapped == expected;
}

std::vector<int> f_vector(const Fan& fan) {
  std::vector<int> f;
  for (const auto& level : fan.cones)
    f.push_back(static_cast<int>(level.size()));
  return f;
}

Vec make_vec(std::initializer_list<long> coords) {
  Vec v(static_cast<int>(coords.size()));
  int i = 0;
  for (long c : coords) v(i++) = Rational(c);
  return v;
}

}  // namespace fansig
