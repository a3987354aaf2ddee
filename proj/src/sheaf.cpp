#include "fansig/sheaf.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fansig {

namespace {

std::string cone_str(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "}";
}

bool rays_disjoint(const Cone& a, const Cone& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

void check_spec(const Fan& fan, const SheafSpec& spec) {
  switch (spec.kind) {
    case SheafKind::Constant:
      if (spec.amount < 0)
        fail(ErrorCode::PreconditionViolated,
             "constant sheaf of negative dimension");
      return;
    case SheafKind::Forms:
      if (spec.amount < 0)
        fail(ErrorCode::PreconditionViolated, "negative exterior power");
      return;
    default:
      if (!fan.contains_cone(spec.cone))
        fail(ErrorCode::ConeNotInFan, "sheaf base cone " + cone_str(spec.cone));
  }
}

void add_coeff(KClass& k, const Cone& c, const Rational& v) {
  if (v == Rational(0)) return;
  const auto [it, inserted] = k.coeff.try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second == Rational(0)) k.coeff.erase(it);
  }
}

// Expansion of the squarefree product prod over rho in s of [O(rho)]: the
// coefficient at a cone tau of the subfan spanned by s is (-1)^(quotient
// rank) times the Euler characteristic of the constant rank-1 sheaf on the
// quotient star of tau inside that subfan.
KClass ray_product(const Fan& fan, const Cone& s) {
  KClass out;
  if (s.empty()) {
    out.coeff[{}] = Rational(1);
    return out;
  }
  const std::vector<Cone> sub = spanned_subfan(fan, s);
  for (const Cone& tau : sub) {
    const QuotientStar q = quotient_star_fan(fan, tau, sub);
    long chi = euler_char(q.fan, SheafSpec::constant(1));
    if (q.fan.rank % 2 != 0) chi = -chi;
    add_coeff(out, tau, Rational(chi));
  }
  return out;
}

}  // namespace

int stalk_dimension(const Fan& fan, const SheafSpec& spec, const Cone& c) {
  check_spec(fan, spec);
  switch (spec.kind) {
    case SheafKind::Constant:
      return spec.amount;
    case SheafKind::IndicatorStar:
      return cone_subset(spec.cone, c) ? 1 : 0;
    case SheafKind::Skyscraper:
      return c == spec.cone ? 1 : 0;
    case SheafKind::LineO:
      return rays_disjoint(spec.cone, c) ? 1 : 0;
    case SheafKind::Forms: {
      const int codim = fan.rank - dim_of(c);
      if (spec.amount > codim) return 0;
      return static_cast<int>(binomial(codim, spec.amount).to_long());
    }
  }
  throw std::logic_error("stalk_dimension: unhandled sheaf kind");
}

LinearSheaf stalk_model(const Fan& fan, const SheafSpec& spec) {
  check_spec(fan, spec);
  LinearSheaf sheaf;
  const std::vector<Cone> cones = fan.all_cones();

  // Forms: fixed basis of each cone's annihilator, so that the restriction
  // from sigma to a facet tau is the change of basis K_tau * M = K_sigma
  // followed by the q-th compound.
  std::map<Cone, Mat> perp;
  if (spec.kind == SheafKind::Forms)
    for (const Cone& c : cones)
      perp.emplace(c, kernel_basis(Mat(fan.ray_matrix(c).transpose())));

  for (const Cone& c : cones) sheaf.stalk_dim[c] = stalk_dimension(fan, spec, c);

  for (const Cone& sigma : cones) {
    for (int k = 0; k < dim_of(sigma); ++k) {
      Cone tau = sigma;
      tau.erase(tau.begin() + k);
      const int rows = sheaf.stalk_dim.at(tau);
      const int cols = sheaf.stalk_dim.at(sigma);
      Mat r;
      if (rows == 0 || cols == 0) {
        r = Mat::Zero(rows, cols);
      } else if (spec.kind == SheafKind::Forms) {
        const Mat& kt = perp.at(tau);
        const Mat& ks = perp.at(sigma);
        Mat m(kt.cols(), ks.cols());
        for (int j = 0; j < static_cast<int>(ks.cols()); ++j) {
          const auto x = solve_unique<Rational>(kt, Vec(ks.col(j)));
          if (!x)
            throw std::logic_error(
                "stalk_model: face annihilator does not contain the cone's");
          m.col(j) = *x;
        }
        r = compound_matrix(m, spec.amount);
      } else {
        // Constant, and the rank-1 kinds on the cones where both stalks
        // survive: the restriction is the identity.
        r = Mat::Identity(rows, cols);
      }
      sheaf.restriction.emplace(std::make_pair(sigma, tau), std::move(r));
    }
  }
  return sheaf;
}

long euler_char(const Fan& fan, const SheafSpec& spec) {
  check_spec(fan, spec);
  long total = 0;
  for (const Cone& c : fan.all_cones()) {
    const int d = stalk_dimension(fan, spec, c);
    total += ((fan.rank - dim_of(c)) % 2 == 0) ? d : -d;
  }
  return total;
}

std::vector<Mat> cellular_differentials(const Fan& fan,
                                        const LinearSheaf& sheaf) {
  if (!fan.complete)
    fail(ErrorCode::NotComplete, "the cellular complex needs a complete fan");
  const int n = fan.rank;

  const auto res = [&](const Cone& sigma, const Cone& tau) -> Mat {
    const int rows = sheaf.dim_at(tau);
    const int cols = sheaf.dim_at(sigma);
    if (rows == 0 || cols == 0) return Mat::Zero(rows, cols);
    const auto it = sheaf.restriction.find({sigma, tau});
    if (it == sheaf.restriction.end())
      fail(ErrorCode::IncompatibleRestrictions,
           "missing restriction " + cone_str(sigma) + " -> " + cone_str(tau));
    if (static_cast<int>(it->second.rows()) != rows ||
        static_cast<int>(it->second.cols()) != cols)
      fail(ErrorCode::IncompatibleRestrictions,
           "restriction " + cone_str(sigma) + " -> " + cone_str(tau) +
               " has the wrong shape");
    return it->second;
  };

  // Codimension-2 diamonds must commute; together with the incidence signs
  // this is exactly d composed with d being zero.
  for (const Cone& sigma : fan.all_cones()) {
    const int d = dim_of(sigma);
    if (d < 2) continue;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Cone t1 = sigma;
        t1.erase(t1.begin() + j);
        Cone t2 = sigma;
        t2.erase(t2.begin() + i);
        Cone mu = sigma;
        mu.erase(mu.begin() + j);
        mu.erase(mu.begin() + i);
        const Mat p1 = res(t1, mu) * res(sigma, t1);
        const Mat p2 = res(t2, mu) * res(sigma, t2);
        if (p1 != p2)
          fail(ErrorCode::IncompatibleRestrictions,
               "diamond below " + cone_str(sigma) + " does not commute");
      }
  }

  std::vector<std::map<Cone, int>> offset(n + 1);
  std::vector<int> total(n + 1, 0);
  for (int i = 0; i <= n; ++i)
    for (const Cone& c : fan.cones_of(n - i)) {
      offset[i][c] = total[i];
      total[i] += sheaf.dim_at(c);
    }

  std::vector<Mat> ds;
  ds.reserve(n);
  for (int i = 0; i < n; ++i) {
    Mat d = Mat::Zero(total[i + 1], total[i]);
    for (const Cone& sigma : fan.cones_of(n - i)) {
      const int cols = sheaf.dim_at(sigma);
      if (cols == 0) continue;
      for (int k = 0; k < dim_of(sigma); ++k) {
        Cone tau = sigma;
        tau.erase(tau.begin() + k);
        const int rows = sheaf.dim_at(tau);
        if (rows == 0) continue;
        const Rational sign(incidence_sign(fan, sigma, tau));
        d.block(offset[i + 1].at(tau), offset[i].at(sigma), rows, cols) =
            sign * res(sigma, tau);
      }
    }
    ds.push_back(std::move(d));
  }
  return ds;
}

std::vector<int> cellular_cohomology(const Fan& fan, const LinearSheaf& sheaf) {
  const std::vector<Mat> ds = cellular_differentials(fan, sheaf);
  const int n = fan.rank;
  std::vector<int> dims(n + 1, 0);
  for (int i = 0; i <= n; ++i)
    for (const Cone& c : fan.cones_of(n - i)) dims[i] += sheaf.dim_at(c);
  std::vector<int> ranks(n, 0);
  for (int i = 0; i < n; ++i) ranks[i] = rank_of(ds[i]);
  std::vector<int> h(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    h[i] = dims[i];
    if (i < n) h[i] -= ranks[i];
    if (i > 0) h[i] -= ranks[i - 1];
  }
  return h;
}

KClass k_add(const KClass& a, const KClass& b) {
  KClass out = a;
  for (const auto& [c, v] : b.coeff) add_coeff(out, c, v);
  return out;
}

KClass k_scale(const Rational& r, const KClass& a) {
  KClass out;
  if (r == Rational(0)) return out;
  for (const auto& [c, v] : a.coeff) out.coeff.emplace(c, r * v);
  return out;
}

KClass kclass_of(const Fan& fan, const SheafSpec& spec) {
  check_spec(fan, spec);
  KClass out;
  switch (spec.kind) {
    case SheafKind::Constant:
      if (spec.amount != 0) out.coeff[{}] = Rational(spec.amount);
      return out;
    case SheafKind::LineO:
      out.coeff[spec.cone] = Rational(1);
      return out;
    case SheafKind::IndicatorStar: {
      // Inclusion-exclusion over the faces of the base cone.
      const int d = dim_of(spec.cone);
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Cone tau;
        for (int i = 0; i < d; ++i)
          if (mask & (1u << i)) tau.push_back(spec.cone[i]);
        add_coeff(out, tau, Rational(dim_of(tau) % 2 == 0 ? 1 : -1));
      }
      return out;
    }
    case SheafKind::Skyscraper: {
      // Moebius inversion of [indicator of Star(sigma)] = sum over tau in
      // Star(sigma) of [skyscraper at tau], over the star's face poset
      // (processed in increasing dimension, so every summand is ready).
      const StarSets star = star_sets(fan, spec.cone);
      std::map<Cone, Rational> mu;
      for (const Cone& tau : star.star) {
        Rational m = (tau == spec.cone) ? Rational(1) : Rational(0);
        for (const auto& [eta, me] : mu)
          if (cone_subset(eta, tau)) m -= me;
        mu[tau] = m;
        if (m != Rational(0)) {
          const KClass ind = kclass_of(fan, SheafSpec::indicator_star(tau));
          for (const auto& [c, v] : ind.coeff) add_coeff(out, c, m * v);
        }
      }
      return out;
    }
    case SheafKind::Forms:
      fail(ErrorCode::UnsupportedSpec,
           "no single class for the form sheaves; use forms_sum_kclass");
  }
  throw std::logic_error("kclass_of: unhandled sheaf kind");
}

KClass k_product(const Fan& fan, const KClass& a, const KClass& b) {
  KClass out;
  std::map<Cone, KClass> memo;
  for (const auto& [ca, va] : a.coeff)
    for (const auto& [cb, vb] : b.coeff) {
      const Cone s = cone_union(ca, cb);
      auto it = memo.find(s);
      if (it == memo.end()) it = memo.emplace(s, ray_product(fan, s)).first;
      const Rational w = va * vb;
      for (const auto& [c, v] : it->second.coeff) add_coeff(out, c, w * v);
    }
  return out;
}

Rational chi_k(const Fan& fan, const KClass& a) {
  Rational total(0);
  for (const auto& [c, v] : a.coeff)
    total += v * Rational(euler_char(fan, SheafSpec::line_o(c)));
  return total;
}

KClass forms_sum_kclass(const Fan& fan) {
  const int h1 = fan.num_rays() - fan.rank;
  if (h1 < 0)
    fail(ErrorCode::PreconditionViolated,
         "fewer rays than the rank; not a complete fan");
  KClass acc;
  acc.coeff[{}] = Rational(1);
  for (int rho = 0; rho < fan.num_rays(); ++rho) {
    KClass factor;
    factor.coeff[{}] = Rational(1);
    factor.coeff[Cone{rho}] = Rational(1);
    acc = k_product(fan, acc, factor);
  }
  return k_scale(Rational(1) / pow(Rational(2), h1), acc);
}

}  // namespace fansig
