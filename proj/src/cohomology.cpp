#include "fansig/cohomology.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>

namespace fansig {

namespace {

void require_ccsu(const Fan& fan) {
  if (!fan.complete || !fan.simplicial || !fan.unimodular)
    fail(ErrorCode::NotCompleteSimplicialUnimodular,
         "operation needs a complete simplicial unimodular fan");
}

Monomial multiset_union(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

void add_term(SRElement& e, const Monomial& m, const Rational& c) {
  if (c == Rational(0)) return;
  const auto [it, inserted] = e.terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Rational(0)) e.terms.erase(it);
  }
}

// All weakly increasing multisets of size k from {0,...,m-1}, lex order.
std::vector<Monomial> monomials_of_degree(int m, int k) {
  std::vector<Monomial> out;
  Monomial cur;
  const auto rec = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int r = start; r < m; ++r) {
      cur.push_back(r);
      self(self, r, remaining - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, k);
  return out;
}

bool divisible_by_any(const Monomial& mono, const std::vector<Cone>& nonfaces) {
  for (const Cone& nf : nonfaces)
    if (cone_subset(nf, mono)) return true;
  return false;
}

using SparseRow = std::map<int, Rational>;

void add_entry(SparseRow& row, int col, const Rational& c) {
  if (c == Rational(0)) return;
  const auto [it, inserted] = row.try_emplace(col, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Rational(0)) row.erase(it);
  }
}

// Echelon insertion: reduce against existing pivot rows, then store with a
// monic pivot. Pivot columns are canonical for a fixed column order, so the
// surviving basis does not depend on insertion order.
void insert_row(GradedBasis::Level& lv, SparseRow row) {
  while (!row.empty()) {
    const int lead = row.begin()->first;
    const auto it = lv.rows.find(lead);
    if (it == lv.rows.end()) {
      const Rational inv = Rational(1) / row.begin()->second;
      for (auto& [c, v] : row) v *= inv;
      lv.rows.emplace(lead, std::move(row));
      return;
    }
    const Rational f = row.begin()->second;
    row.erase(row.begin());
    for (const auto& [c, v] : it->second) {
      if (c == lead) continue;
      add_entry(row, c, -f * v);
    }
  }
}

// Kills every pivot coordinate; only columns above the pivot are touched, so
// one ascending sweep suffices.
void reduce_vector(const GradedBasis::Level& lv, SparseRow& v) {
  auto it = v.begin();
  while (it != v.end()) {
    const auto rit = lv.rows.find(it->first);
    if (rit == lv.rows.end()) {
      ++it;
      continue;
    }
    const int pivot = it->first;
    const Rational f = it->second;
    v.erase(it);
    for (const auto& [c, w] : rit->second) {
      if (c == pivot) continue;
      add_entry(v, c, -f * w);
    }
    it = v.upper_bound(pivot);
  }
}

struct Lcg {
  std::uint64_t state;
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }
};

}  // namespace

SRElement sr_one() { return sr_monomial({}); }

SRElement sr_var(int rho) { return sr_monomial({rho}); }

SRElement sr_monomial(Monomial m, const Rational& c) {
  std::sort(m.begin(), m.end());
  SRElement e;
  if (c != Rational(0)) e.terms.emplace(std::move(m), c);
  return e;
}

SRElement operator+(const SRElement& a, const SRElement& b) {
  SRElement out = a;
  for (const auto& [m, c] : b.terms) add_term(out, m, c);
  return out;
}

SRElement operator-(const SRElement& a, const SRElement& b) {
  SRElement out = a;
  for (const auto& [m, c] : b.terms) add_term(out, m, -c);
  return out;
}

SRElement operator*(const SRElement& a, const SRElement& b) {
  SRElement out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms)
      add_term(out, multiset_union(ma, mb), ca * cb);
  return out;
}

SRElement operator*(const Rational& c, const SRElement& a) {
  SRElement out;
  if (c == Rational(0)) return out;
  for (const auto& [m, v] : a.terms) out.terms.emplace(m, c * v);
  return out;
}

std::optional<int> sr_degree(const SRElement& a) {
  if (a.terms.empty()) return 0;
  const int d = dim_of(a.terms.begin()->first);
  for (const auto& [m, c] : a.terms)
    if (dim_of(m) != d) return std::nullopt;
  return d;
}

SRPresentation sr_presentation(const Fan& fan) {
  require_ccsu(fan);
  SRPresentation pres;
  const int m = fan.num_rays();

  // Minimal non-faces: ray sets spanning no cone all of whose maximal proper
  // subsets span cones. Sizes 0 and 1 never qualify.
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    Cone s;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(i);
    if (dim_of(s) < 2 || fan.contains_cone(s)) continue;
    bool minimal = true;
    for (int drop = 0; drop < dim_of(s) && minimal; ++drop) {
      Cone t = s;
      t.erase(t.begin() + drop);
      if (!fan.contains_cone(t)) minimal = false;
    }
    if (minimal) pres.nonfaces.push_back(std::move(s));
  }
  std::sort(pres.nonfaces.begin(), pres.nonfaces.end(),
            [](const Cone& a, const Cone& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  for (int j = 0; j < fan.rank; ++j) {
    SRElement theta;
    for (int rho = 0; rho < m; ++rho) add_term(theta, {rho}, fan.rays[rho](j));
    pres.linear.push_back(std::move(theta));
  }
  return pres;
}

GradedBasis graded_basis(const Fan& fan) {
  const SRPresentation pres = sr_presentation(fan);
  const int n = fan.rank;
  const int m = fan.num_rays();
  GradedBasis gb;
  gb.levels.resize(n + 1);
  gb.h.assign(n + 1, 0);

  for (int k = 0; k <= n; ++k) {
    GradedBasis::Level& lv = gb.levels[k];
    lv.monomials = monomials_of_degree(m, k);
    for (int i = 0; i < static_cast<int>(lv.monomials.size()); ++i)
      lv.index.emplace(lv.monomials[i], i);

    for (int i = 0; i < static_cast<int>(lv.monomials.size()); ++i)
      if (divisible_by_any(lv.monomials[i], pres.nonfaces))
        insert_row(lv, SparseRow{{i, Rational(1)}});

    if (k >= 1)
      for (const SRElement& theta : pres.linear)
        for (const Monomial& mu : gb.levels[k - 1].monomials) {
          SparseRow row;
          for (const auto& [var, c] : theta.terms)
            add_entry(row, lv.index.at(multiset_union(mu, var)), c);
          insert_row(lv, std::move(row));
        }

    for (int i = 0; i < static_cast<int>(lv.monomials.size()); ++i)
      if (lv.rows.find(i) == lv.rows.end()) lv.basis.push_back(lv.monomials[i]);
    gb.h[k] = static_cast<int>(lv.basis.size());
  }
  return gb;
}

std::vector<int> h_vector(const Fan& fan) { return graded_basis(fan).h; }

SRElement normal_form(const GradedBasis& gb, const SRElement& a) {
  // Split by degree, reduce each homogeneous piece.
  std::map<int, SparseRow> by_degree;
  for (const auto& [m, c] : a.terms) {
    const int k = dim_of(m);
    if (k >= static_cast<int>(gb.levels.size()))
      fail(ErrorCode::DegreeMismatch,
           "degree " + std::to_string(k) + " exceeds the fan rank");
    add_entry(by_degree[k], gb.levels[k].index.at(m), c);
  }
  SRElement out;
  for (auto& [k, v] : by_degree) {
    reduce_vector(gb.levels[k], v);
    for (const auto& [col, c] : v) add_term(out, gb.levels[k].monomials[col], c);
  }
  return out;
}

Rational zeta_evaluate(const Fan& fan, const SRElement& f, const Vec& p) {
  require_ccsu(fan);
  if (static_cast<int>(p.size()) != fan.rank)
    fail(ErrorCode::PreconditionViolated, "point has the wrong dimension");
  Rational total(0);
  for (const Cone& sigma : fan.cones_of(fan.rank)) {
    const Mat dual = inverse(Mat(fan.ray_matrix(sigma)));
    const Vec u = dual * p;
    Rational denom(1);
    for (int i = 0; i < fan.rank; ++i) denom *= u(i);
    if (denom == Rational(0))
      fail(ErrorCode::DegeneratePoint, "point lies on a dual hyperplane");
    Rational fval(0);
    for (const auto& [mono, c] : f.terms) {
      Rational t = c;
      for (const int rho : mono) {
        const auto it =
            std::lower_bound(sigma.begin(), sigma.end(), rho);
        if (it == sigma.end() || *it != rho) {
          t = Rational(0);
          break;
        }
        t *= u(static_cast<int>(it - sigma.begin()));
      }
      fval += t;
    }
    total += fval / denom;
  }
  return total;
}

Rational integrate(const Fan& fan, const SRElement& f) {
  require_ccsu(fan);
  if (f.terms.empty()) return Rational(0);
  const std::optional<int> deg = sr_degree(f);
  if (!deg || *deg != fan.rank)
    fail(ErrorCode::DegreeMismatch,
         "integration needs a homogeneous element of top degree");
  if (fan.rank == 0) return zeta_evaluate(fan, f, Vec(0));

  Lcg rng{0x0fa2b9c15eed317bULL};
  std::vector<Vec> points;
  std::vector<Rational> values;
  int attempt = 0;
  while (static_cast<int>(values.size()) < 2) {
    if (++attempt > 200)
      throw std::logic_error("integrate: could not find generic points");
    const std::uint64_t range = 2 + attempt;
    Vec p(fan.rank);
    for (int i = 0; i < fan.rank; ++i)
      p(i) = Rational(static_cast<long>(rng.next() % (2 * range + 1)) -
                      static_cast<long>(range));
    if (!points.empty() && p == points.front()) continue;
    try {
      const Rational v = zeta_evaluate(fan, f, p);
      points.push_back(p);
      values.push_back(v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegeneratePoint) throw;
    }
  }
  if (values[0] != values[1])
    throw std::logic_error("integrate: zeta differs between generic points");
  return values[0];
}

bool h_equal(const Fan& fan, const SRElement& a, const SRElement& b) {
  require_ccsu(fan);
  const std::optional<int> da = sr_degree(a);
  const std::optional<int> db = sr_degree(b);
  if (!da || !db) fail(ErrorCode::DegreeMismatch, "elements must be homogeneous");
  if (!a.terms.empty() && !b.terms.empty() && *da != *db)
    fail(ErrorCode::DegreeMismatch, "elements have different degrees");
  const SRElement diff = a - b;
  if (diff.terms.empty()) return true;
  const int k = *sr_degree(diff);
  if (k > fan.rank) return true;  // everything above top degree vanishes
  for (const Monomial& m : monomials_of_degree(fan.num_rays(), fan.rank - k))
    if (integrate(fan, diff * sr_monomial(m)) != Rational(0)) return false;
  return true;
}

SignatureReport signature_report(const Fan& fan) {
  require_ccsu(fan);
  const GradedBasis gb = graded_basis(fan);
  SignatureReport report;
  report.h = gb.h;
  for (int i = 0; i <= fan.rank; ++i)
    report.epsilon += (i % 2 == 0) ? gb.h[i] : -gb.h[i];
  if (fan.rank % 2 != 0) {
    report.signature = 0;
    report.gram = Mat(0, 0);
    return report;
  }
  const std::vector<Monomial>& mid = gb.levels[fan.rank / 2].basis;
  const int s = static_cast<int>(mid.size());
  Mat gram(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      gram(i, j) = integrate(fan, sr_monomial(mid[i]) * sr_monomial(mid[j]));
      gram(j, i) = gram(i, j);
    }
  const Inertia inertia = congruence_inertia(gram);
  report.gram = std::move(gram);
  report.signature = inertia.signature();
  return report;
}

SRElement pullback_sr(const SubdivisionMap& map, const SRElement& a) {
  const Fan& fine = map.source;
  const Fan& coarse = map.target;
  std::vector<SRElement> image(coarse.num_rays());
  for (int eta = 0; eta < coarse.num_rays(); ++eta) {
    const PLFunction phi = courant(coarse, eta);
    SRElement s;
    for (int nu = 0; nu < fine.num_rays(); ++nu)
      add_term(s, {nu}, pl_evaluate(coarse, phi, fine.rays[nu]));
    image[eta] = std::move(s);
  }
  SRElement out;
  for (const auto& [mono, c] : a.terms) {
    SRElement t = sr_monomial({}, c);
    for (const int eta : mono) t = t * image[eta];
    out = out + t;
  }
  return out;
}

bool verify_star_integral(const Fan& fan, const Cone& tau, const Monomial& m) {
  require_ccsu(fan);
  if (!fan.contains_cone(tau))
    fail(ErrorCode::ConeNotInFan, "star integral base cone");
  Monomial mono = m;
  std::sort(mono.begin(), mono.end());
  for (const int rho : mono) {
    if (std::binary_search(tau.begin(), tau.end(), rho))
      fail(ErrorCode::PreconditionViolated,
           "monomial ray " + std::to_string(rho) + " lies in the base cone");
    if (!fan.contains_cone(cone_union(tau, {rho})))
      fail(ErrorCode::PreconditionViolated,
           "monomial ray " + std::to_string(rho) +
               " does not join the base cone");
  }
  if (dim_of(mono) + dim_of(tau) != fan.rank)
    fail(ErrorCode::PreconditionViolated,
         "monomial degree plus cone dimension must equal the rank");

  const Rational lhs = integrate(fan, sr_monomial(multiset_union(mono, tau)));
  const QuotientStar q = quotient_star_fan(fan, tau);
  Monomial bar;
  for (const int rho : mono) {
    const int img = q.ray_image[rho];
    if (img < 0)
      throw std::logic_error("verify_star_integral: ray outside the star");
    bar.push_back(img);
  }
  const Rational rhs = integrate(q.fan, sr_monomial(std::move(bar)));
  return lhs == rhs;
}

}  // namespace fansig
