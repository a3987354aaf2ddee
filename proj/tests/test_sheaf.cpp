#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fansig/sheaf.hpp"

using namespace fansig;

namespace {

KClass basis_class(const Cone& c) {
  KClass k;
  k.coeff[c] = Rational(1);
  return k;
}

bool rays_meet(const Cone& a, const Cone& b) {
  for (int r : a)
    for (int s : b)
      if (r == s) return true;
  return false;
}

// chi of the tensor product of the [O(rho)] over rho in s, straight from the
// stalk description: the tensor stalk is 1 exactly at cones sharing no ray
// with s.
long tensor_chi(const Fan& fan, const Cone& s) {
  long total = 0;
  for (const Cone& c : fan.all_cones()) {
    if (rays_meet(c, s)) continue;
    total += ((fan.rank - dim_of(c)) % 2 == 0) ? 1 : -1;
  }
  return total;
}

KClass fold_ray_product(const Fan& fan, const Cone& s) {
  KClass acc;
  acc.coeff[{}] = Rational(1);
  for (int rho : s) acc = k_product(fan, acc, basis_class({rho}));
  return acc;
}

}  // namespace

TEST_CASE("stalk dimensions of the five sheaf kinds") {
  const Fan p2 = catalog("P2");
  SUBCASE("one-forms on the projective plane") {
    CHECK(stalk_dimension(p2, SheafSpec::forms(1), {}) == 2);
    CHECK(stalk_dimension(p2, SheafSpec::forms(1), {0}) == 1);
    CHECK(stalk_dimension(p2, SheafSpec::forms(1), {2}) == 1);
    CHECK(stalk_dimension(p2, SheafSpec::forms(1), {0, 1}) == 0);
    CHECK(stalk_dimension(p2, SheafSpec::forms(2), {}) == 1);
    CHECK(stalk_dimension(p2, SheafSpec::forms(2), {0}) == 0);
    CHECK(stalk_dimension(p2, SheafSpec::forms(0), {0, 1}) == 1);
  }
  SUBCASE("line sheaf support avoids shared rays") {
    const Fan p1 = catalog("P1");
    CHECK(stalk_dimension(p1, SheafSpec::line_o({0}), {}) == 1);
    CHECK(stalk_dimension(p1, SheafSpec::line_o({0}), {0}) == 0);
    CHECK(stalk_dimension(p1, SheafSpec::line_o({0}), {1}) == 1);
    CHECK(stalk_dimension(p2, SheafSpec::line_o({0, 1}), {2}) == 1);
    CHECK(stalk_dimension(p2, SheafSpec::line_o({0, 1}), {1, 2}) == 0);
  }
  SUBCASE("indicator, skyscraper, constant") {
    CHECK(stalk_dimension(p2, SheafSpec::indicator_star({0}), {0, 1}) == 1);
    CHECK(stalk_dimension(p2, SheafSpec::indicator_star({0}), {1}) == 0);
    CHECK(stalk_dimension(p2, SheafSpec::indicator_star({0}), {}) == 0);
    CHECK(stalk_dimension(p2, SheafSpec::skyscraper({0}), {0}) == 1);
    CHECK(stalk_dimension(p2, SheafSpec::skyscraper({0}), {0, 1}) == 0);
    CHECK(stalk_dimension(p2, SheafSpec::constant(3), {1, 2}) == 3);
  }
  SUBCASE("base cone must belong to the fan") {
    try {
      stalk_dimension(p2, SheafSpec::line_o({0, 3}), {});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConeNotInFan);
    }
  }
}

TEST_CASE("euler characteristics from stalks") {
  const Fan p1 = catalog("P1");
  const Fan p2 = catalog("P2");
  CHECK(euler_char(p1, SheafSpec::constant(1)) == 1);
  CHECK(euler_char(p1, SheafSpec::line_o({0})) == 0);
  CHECK(euler_char(p2, SheafSpec::skyscraper({0, 1})) == 1);
  CHECK(euler_char(p2, SheafSpec::skyscraper({0})) == -1);

  SUBCASE("the Euler relation on complete fans") {
    for (const char* name :
         {"P1", "P2", "P3", "P4", "P1xP1", "P1xP2", "BlP2", "BlP1xP1"})
      CHECK(euler_char(catalog(name), SheafSpec::constant(1)) == 1);
  }
  SUBCASE("an incomplete fan misses the relation") {
    const Fan half = build_fan(2, {make_vec({1, 0}), make_vec({0, 1})},
                               {Cone{0, 1}});
    CHECK(euler_char(half, SheafSpec::constant(1)) == 0);
  }
}

TEST_CASE("cellular cohomology of the form sheaves") {
  SUBCASE("projective line") {
    const Fan p1 = catalog("P1");
    CHECK(cellular_cohomology(p1, stalk_model(p1, SheafSpec::forms(0))) ==
          std::vector<int>{1, 0});
    CHECK(cellular_cohomology(p1, stalk_model(p1, SheafSpec::forms(1))) ==
          std::vector<int>{0, 1});
  }
  SUBCASE("projective plane") {
    const Fan p2 = catalog("P2");
    CHECK(cellular_cohomology(p2, stalk_model(p2, SheafSpec::forms(0))) ==
          std::vector<int>{1, 0, 0});
    CHECK(cellular_cohomology(p2, stalk_model(p2, SheafSpec::forms(1))) ==
          std::vector<int>{0, 1, 0});
    CHECK(cellular_cohomology(p2, stalk_model(p2, SheafSpec::forms(2))) ==
          std::vector<int>{0, 0, 1});
  }
  SUBCASE("products and blowups match their h-vectors") {
    const Fan p1p1 = catalog("P1xP1");
    CHECK(cellular_cohomology(p1p1, stalk_model(p1p1, SheafSpec::forms(1))) ==
          std::vector<int>{0, 2, 0});
    const Fan blp2 = catalog("BlP2");
    CHECK(cellular_cohomology(blp2, stalk_model(blp2, SheafSpec::forms(1))) ==
          std::vector<int>{0, 2, 0});
    const Fan blp1p1 = catalog("BlP1xP1");
    CHECK(cellular_cohomology(blp1p1,
                              stalk_model(blp1p1, SheafSpec::forms(1))) ==
          std::vector<int>{0, 3, 0});
    const Fan p1p2 = catalog("P1xP2");
    CHECK(cellular_cohomology(p1p2, stalk_model(p1p2, SheafSpec::forms(1))) ==
          std::vector<int>{0, 2, 0, 0});
    CHECK(cellular_cohomology(p1p2, stalk_model(p1p2, SheafSpec::forms(2))) ==
          std::vector<int>{0, 0, 2, 0});
  }
  SUBCASE("three-space") {
    const Fan p3 = catalog("P3");
    CHECK(cellular_cohomology(p3, stalk_model(p3, SheafSpec::forms(2))) ==
          std::vector<int>{0, 0, 1, 0});
  }
}

TEST_CASE("cellular cohomology of the rank-one sheaves") {
  const Fan p2 = catalog("P2");
  SUBCASE("constant sheaf on a complete fan is globally constant") {
    for (const char* name : {"P1", "P2", "P3", "P1xP1", "BlP1xP1"}) {
      const Fan fan = catalog(name);
      std::vector<int> expect(fan.rank + 1, 0);
      expect[0] = 1;
      CHECK(cellular_cohomology(fan, stalk_model(fan, SheafSpec::constant(1))) ==
            expect);
    }
  }
  SUBCASE("skyscrapers concentrate in one degree") {
    CHECK(cellular_cohomology(p2, stalk_model(p2, SheafSpec::skyscraper({0, 1}))) ==
          std::vector<int>{1, 0, 0});
    CHECK(cellular_cohomology(p2, stalk_model(p2, SheafSpec::skyscraper({0}))) ==
          std::vector<int>{0, 1, 0});
    CHECK(cellular_cohomology(p2, stalk_model(p2, SheafSpec::skyscraper({}))) ==
          std::vector<int>{0, 0, 1});
  }
  SUBCASE("star indicators are acyclic") {
    CHECK(cellular_cohomology(p2, stalk_model(p2, SheafSpec::indicator_star({0}))) ==
          std::vector<int>{1, 0, 0});
  }
  SUBCASE("a line sheaf with vanishing cohomology") {
    const Fan p1 = catalog("P1");
    CHECK(cellular_cohomology(p1, stalk_model(p1, SheafSpec::line_o({0}))) ==
          std::vector<int>{0, 0});
  }
  SUBCASE("euler characteristic equals the alternating cohomology sum") {
    const Fan blp1p1 = catalog("BlP1xP1");
    for (const SheafSpec& spec :
         {SheafSpec::forms(1), SheafSpec::line_o({0, 3}),
          SheafSpec::indicator_star({4}), SheafSpec::skyscraper({1})}) {
      const auto h = cellular_cohomology(blp1p1, stalk_model(blp1p1, spec));
      long alt = 0;
      for (int i = 0; i <= blp1p1.rank; ++i) alt += (i % 2 == 0) ? h[i] : -h[i];
      CHECK(alt == euler_char(blp1p1, spec));
    }
  }
}

TEST_CASE("assembled differentials square to zero") {
  for (const char* name : {"P2", "P3", "P1xP1"}) {
    const Fan fan = catalog(name);
    for (const SheafSpec& spec : {SheafSpec::forms(1), SheafSpec::constant(2),
                                  SheafSpec::indicator_star({0})}) {
      const auto ds = cellular_differentials(fan, stalk_model(fan, spec));
      REQUIRE(static_cast<int>(ds.size()) == fan.rank);
      for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
        const Mat prod = ds[i + 1] * ds[i];
        CHECK(prod == Mat::Zero(prod.rows(), prod.cols()));
      }
    }
  }
}

TEST_CASE("broken restriction data is rejected") {
  const Fan p2 = catalog("P2");
  SUBCASE("wrong shape") {
    LinearSheaf sheaf = stalk_model(p2, SheafSpec::forms(1));
    sheaf.restriction[{Cone{0}, Cone{}}] = Mat::Zero(3, 1);
    try {
      cellular_cohomology(p2, sheaf);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IncompatibleRestrictions);
    }
  }
  SUBCASE("non-commuting diamond") {
    LinearSheaf sheaf = stalk_model(p2, SheafSpec::constant(1));
    sheaf.restriction[{Cone{0, 1}, Cone{0}}] = -Mat::Identity(1, 1);
    try {
      cellular_cohomology(p2, sheaf);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IncompatibleRestrictions);
    }
  }
  SUBCASE("incomplete fans have no cellular complex") {
    const Fan half = build_fan(2, {make_vec({1, 0}), make_vec({0, 1})},
                               {Cone{0, 1}});
    try {
      cellular_cohomology(half, stalk_model(half, SheafSpec::constant(1)));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotComplete);
    }
  }
}

TEST_CASE("classes of the basic sheaves") {
  const Fan p2 = catalog("P2");
  SUBCASE("constant and line classes") {
    CHECK(kclass_of(p2, SheafSpec::constant(1)) == basis_class({}));
    CHECK(kclass_of(p2, SheafSpec::constant(3)) ==
          k_scale(Rational(3), basis_class({})));
    CHECK(kclass_of(p2, SheafSpec::constant(0)) == KClass{});
    CHECK(kclass_of(p2, SheafSpec::line_o({0, 2})) == basis_class({0, 2}));
  }
  SUBCASE("star indicators by inclusion-exclusion") {
    CHECK(kclass_of(p2, SheafSpec::indicator_star({0})) ==
          k_add(basis_class({}), k_scale(Rational(-1), basis_class({0}))));
    KClass expect;
    expect.coeff[{}] = Rational(1);
    expect.coeff[{0}] = Rational(-1);
    expect.coeff[{1}] = Rational(-1);
    expect.coeff[{0, 1}] = Rational(1);
    CHECK(kclass_of(p2, SheafSpec::indicator_star({0, 1})) == expect);
  }
  SUBCASE("skyscraper at a maximal cone is its star indicator") {
    CHECK(kclass_of(p2, SheafSpec::skyscraper({0, 1})) ==
          kclass_of(p2, SheafSpec::indicator_star({0, 1})));
  }
  SUBCASE("form sheaves have no single class") {
    try {
      kclass_of(p2, SheafSpec::forms(1));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedSpec);
    }
  }
}

TEST_CASE("skyscraper expansion inverts the star-sum identity") {
  for (const char* name : {"P2", "P1xP1", "BlP1xP1"}) {
    const Fan fan = catalog(name);
    for (const Cone& sigma : fan.all_cones()) {
      KClass star_sum;
      const StarSets star = star_sets(fan, sigma);
      for (const Cone& tau : star.star)
        star_sum = k_add(star_sum, kclass_of(fan, SheafSpec::skyscraper(tau)));
      CHECK(star_sum == kclass_of(fan, SheafSpec::indicator_star(sigma)));

      // Moebius coefficients in closed form: the interval between two cones
      // of a simplicial fan is boolean.
      KClass closed_form;
      for (const Cone& tau : star.star) {
        const int k = dim_of(tau) - dim_of(sigma);
        closed_form = k_add(
            closed_form,
            k_scale(Rational(k % 2 == 0 ? 1 : -1),
                    kclass_of(fan, SheafSpec::indicator_star(tau))));
      }
      CHECK(closed_form == kclass_of(fan, SheafSpec::skyscraper(sigma)));
    }
  }
}

TEST_CASE("basis round trip through star indicators") {
  for (const char* name : {"P2", "P3", "BlP1xP1"}) {
    const Fan fan = catalog(name);
    for (const Cone& sigma : fan.all_cones()) {
      KClass sum;
      const int d = dim_of(sigma);
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Cone tau;
        for (int i = 0; i < d; ++i)
          if (mask & (1u << i)) tau.push_back(sigma[i]);
        sum = k_add(sum, k_scale(Rational(dim_of(tau) % 2 == 0 ? 1 : -1),
                                 kclass_of(fan, SheafSpec::indicator_star(tau))));
      }
      CHECK(sum == basis_class(sigma));
    }
  }
}

TEST_CASE("chi on classes matches chi on stalks") {
  for (const char* name : {"P1", "P2", "P1xP1", "P1xP2", "BlP1xP1"}) {
    const Fan fan = catalog(name);
    for (const Cone& sigma : fan.all_cones()) {
      for (const SheafSpec& spec :
           {SheafSpec::line_o(sigma), SheafSpec::indicator_star(sigma),
            SheafSpec::skyscraper(sigma)}) {
        CHECK(chi_k(fan, kclass_of(fan, spec)) ==
              Rational(euler_char(fan, spec)));
      }
    }
    CHECK(chi_k(fan, kclass_of(fan, SheafSpec::constant(1))) == Rational(1));
  }
}

TEST_CASE("products in the Grothendieck group") {
  const Fan p1 = catalog("P1");
  const Fan p2 = catalog("P2");
  SUBCASE("opposite rays on the line") {
    const KClass prod = k_product(p1, basis_class({0}), basis_class({1}));
    KClass expect;
    expect.coeff[{0}] = Rational(1);
    expect.coeff[{1}] = Rational(1);
    expect.coeff[{}] = Rational(-1);
    CHECK(prod == expect);
    CHECK(chi_k(p1, prod) == Rational(-1));
  }
  SUBCASE("adjacent rays multiply to their cone") {
    CHECK(k_product(p2, basis_class({0}), basis_class({1})) ==
          basis_class({0, 1}));
  }
  SUBCASE("idempotence") {
    CHECK(k_product(p2, basis_class({2}), basis_class({2})) ==
          basis_class({2}));
    CHECK(k_product(p2, basis_class({1, 2}), basis_class({1, 2})) ==
          basis_class({1, 2}));
    CHECK(k_product(p2, basis_class({1, 2}), basis_class({2})) ==
          basis_class({1, 2}));
  }
  SUBCASE("the full ray product alternates over all cones") {
    for (const char* name : {"P2", "P3"}) {
      const Fan fan = catalog(name);
      Cone all_rays;
      for (int r = 0; r < fan.num_rays(); ++r) all_rays.push_back(r);
      KClass expect;
      for (const Cone& tau : fan.all_cones()) {
        const int s = fan.rank - dim_of(tau);
        expect.coeff[tau] = Rational(s % 2 == 0 ? 1 : -1);
      }
      CHECK(fold_ray_product(fan, all_rays) == expect);
    }
  }
  SUBCASE("unit, commutativity, bilinearity") {
    const KClass unit = basis_class({});
    const KClass a = k_add(basis_class({0}), k_scale(Rational(2), basis_class({1, 2})));
    const KClass b = k_add(basis_class({2}), k_scale(Rational(-1), unit));
    CHECK(k_product(p2, unit, a) == a);
    CHECK(k_product(p2, a, b) == k_product(p2, b, a));
    const KClass lhs = k_product(p2, k_add(a, k_scale(Rational(3), b)),
                                 basis_class({1}));
    const KClass rhs = k_add(k_product(p2, a, basis_class({1})),
                             k_scale(Rational(3), k_product(p2, b, basis_class({1}))));
    CHECK(lhs == rhs);
  }
  SUBCASE("associativity across non-cone ray sets") {
    const Fan fan = catalog("BlP1xP1");
    const KClass x = basis_class({0});
    const KClass y = basis_class({1});
    const KClass z = k_add(basis_class({4}), basis_class({}));
    CHECK(k_product(fan, k_product(fan, x, y), z) ==
          k_product(fan, x, k_product(fan, y, z)));
  }
}

TEST_CASE("chi is multiplicative against the stalk tensor description") {
  for (const char* name : {"P2", "P1xP1", "P1xP2", "BlP1xP1"}) {
    const Fan fan = catalog(name);
    const int m = fan.num_rays();
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      Cone s;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) s.push_back(i);
      if (dim_of(s) > 4) continue;
      CHECK(chi_k(fan, fold_ray_product(fan, s)) ==
            Rational(tensor_chi(fan, s)));
    }
  }
}

TEST_CASE("the summed form class") {
  SUBCASE("frozen on the line") {
    const Fan p1 = catalog("P1");
    KClass expect;
    expect.coeff[{0}] = Rational(1);
    expect.coeff[{1}] = Rational(1);
    CHECK(forms_sum_kclass(p1) == expect);
  }
  SUBCASE("chi matches the stalkwise form sum and the signed h-sum") {
    struct Row {
      const char* name;
      long epsilon;
    };
    for (const Row& row : {Row{"P1", 0}, Row{"P2", 1}, Row{"P3", 0},
                           Row{"P1xP1", 0}, Row{"BlP2", 0}, Row{"BlP1xP1", -1}}) {
      const Fan fan = catalog(row.name);
      const KClass total = forms_sum_kclass(fan);
      long stalkwise = 0;
      for (int q = 0; q <= fan.rank; ++q)
        stalkwise += euler_char(fan, SheafSpec::forms(q));
      CHECK(chi_k(fan, total) == Rational(stalkwise));
      CHECK(chi_k(fan, total) == Rational(row.epsilon));
    }
  }
}
