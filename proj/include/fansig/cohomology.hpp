#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fansig/fan.hpp"
#include "fansig/subdivision.hpp"

// The cohomology ring of a complete simplicial unimodular fan through a
// Stanley-Reisner presentation in the Courant classes x_rho, the Brion zeta
// functional, exact integration, the Poincare pairing and signature, and
// pullbacks along subdivisions.

namespace fansig {

// A monomial in the Courant classes: a weakly increasing multiset of ray ids.
using Monomial = std::vector<int>;

struct SRElement {
  std::map<Monomial, Rational> terms;  // zero coefficients never stored

  bool operator==(const SRElement& other) const = default;
};

SRElement sr_one();
SRElement sr_var(int rho);
SRElement sr_monomial(Monomial m, const Rational& c = Rational(1));

SRElement operator+(const SRElement& a, const SRElement& b);
SRElement operator-(const SRElement& a, const SRElement& b);
SRElement operator*(const SRElement& a, const SRElement& b);
SRElement operator*(const Rational& c, const SRElement& a);

// Homogeneous polynomial degree (0 for the zero element); nullopt when the
// element mixes degrees. Cohomological degree is twice this.
std::optional<int> sr_degree(const SRElement& a);

// Presentation of H(fan): minimal non-faces (squarefree monomial relations)
// and the linear relations theta_j = sum over rays of (v_rho)_j x_rho.
struct SRPresentation {
  std::vector<Cone> nonfaces;
  std::vector<SRElement> linear;
};

SRPresentation sr_presentation(const Fan& fan);

// Exact degree-by-degree row reduction of the relation span. For each degree
// k <= rank: the full lex-ordered monomial list, the echelon rows of the
// relation subspace keyed by pivot column, and the surviving basis monomials.
struct GradedBasis {
  struct Level {
    std::vector<Monomial> monomials;
    std::map<Monomial, int> index;
    std::map<int, std::map<int, Rational>> rows;
    std::vector<Monomial> basis;
  };
  std::vector<Level> levels;  // degree 0 .. rank
  std::vector<int> h;         // h[k] = dim H^{2k}
};

GradedBasis graded_basis(const Fan& fan);
std::vector<int> h_vector(const Fan& fan);

// Reduction to the basis monomials. The element's degrees must not exceed
// the rank (higher degrees vanish but carry no reduction data).
SRElement normal_form(const GradedBasis& gb, const SRElement& a);

// Brion functional at a point p: sum over maximal cones of f_sigma(p) /
// F_sigma(p), substituting the dual-basis coordinates of p for the cone's
// own variables and 0 for the others.
Rational zeta_evaluate(const Fan& fan, const SRElement& f, const Vec& p);

// Integral of a top-degree element: zeta at a generic integer point, with
// deterministic resampling on hyperplane hits and a second independent
// point asserted to agree.
Rational integrate(const Fan& fan, const SRElement& f);

// Equality in H via the Poincare pairing against every complementary-degree
// monomial.
bool h_equal(const Fan& fan, const SRElement& a, const SRElement& b);

struct SignatureReport {
  std::vector<int> h;
  Mat gram;  // middle-degree pairing on the basis monomials; empty when odd
  int signature = 0;
  int epsilon = 0;  // alternating sum of the h-vector
};

SignatureReport signature_report(const Fan& fan);

// Ring pullback along a refinement: each coarse variable x_eta maps to the
// sum over fine rays nu of phi_eta(v_nu) x_nu, extended multiplicatively.
SRElement pullback_sr(const SubdivisionMap& map, const SRElement& a);

// Checks the star integral identity: for a monomial m in rays transverse to
// tau (each ray joins tau to a cone of the fan) with deg m + dim tau = rank,
// the integral of x_tau * m over the fan equals the integral of the
// projected monomial over the quotient star fan at tau.
bool verify_star_integral(const Fan& fan, const Cone& tau, const Monomial& m);

}  // namespace fansig
