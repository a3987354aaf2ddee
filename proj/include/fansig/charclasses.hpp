#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fansig/cohomology.hpp"
#include "fansig/sheaf.hpp"

// Bernoulli numbers, exact formal series, the Chern character, Todd and L
// classes, and executable checks of the Riemann-Roch, signature,
// exceptional-positivity, and Leung-Reiner theorems.

namespace fansig {

// |B_k| for even k >= 2, by the defining recurrence over exact rationals.
Rational bernoulli_abs(int k);

enum class SeriesKind { exp_neg, todd, l_factor };

struct TruncatedSeries {
  std::vector<Rational> coeff;  // coeff[k] multiplies x^k

  int order() const { return static_cast<int>(coeff.size()) - 1; }
};

// exp_neg = sum (-1)^k x^k / k!; todd = x / (1 - exp(-x)) and l_factor =
// (x/2)(e^x + 1)/(e^x - 1), both by exact series division. l_factor is
// cross-checked against the signed Bernoulli pattern of its even terms.
TruncatedSeries series(SeriesKind kind, int order);

// Linear extension over the {[O(sigma)]} basis of prod over the cone's rays
// of exp(-x_rho), truncated to polynomial degree rank, with eager per-degree
// normal-form reduction. The overloads taking a GradedBasis reuse a
// precomputed reduction.
SRElement chern_character(const Fan& fan, const GradedBasis& gb,
                          const KClass& a);
SRElement chern_character(const Fan& fan, const KClass& a);

// Product over rays of todd(x_rho), eagerly reduced, truncated at the rank.
SRElement todd_class(const Fan& fan, const GradedBasis& gb);
SRElement todd_class(const Fan& fan);

// 2^rank times the product over rays of l_factor(x_rho); even rank only.
// The top-degree component is cross-checked against the direct enumeration
// of ray tuples and exponent compositions with Bernoulli coefficients.
SRElement l_class(const Fan& fan, const GradedBasis& gb);
SRElement l_class(const Fan& fan);

// The homogeneous piece of polynomial degree k.
SRElement degree_part(const SRElement& a, int k);

// One Leung-Reiner term: distinct rays rho_1 < ... < rho_k with exponents
// 2m_1, ..., 2m_k and value (-1)^k * integral of the monomial.
struct LRTerm {
  std::vector<int> rays;
  std::vector<int> exponents;  // the m_i
  Rational value;
  bool spans_cone = false;
};

struct TheoremReport {
  std::string theorem;
  std::string fan_id;  // short structural description of the instance
  std::vector<std::pair<std::string, Rational>> quantities;
  std::string status;  // "pass", "fail", or "hypothesis_failed"
  bool pass = false;
  std::vector<LRTerm> terms;  // Leung-Reiner term table
};

// Genus-one identity: the integral of the Todd class equals 1.
TheoremReport todd_check(const Fan& fan);

// chi(a) against the integral of ch(a) * Td.
TheoremReport rr_check(const Fan& fan, const KClass& a);

// Three-way comparison of the middle-pairing signature, the alternating
// h-sum, and the integral of the L class; odd ranks pass trivially with
// signature 0.
TheoremReport signature_theorem_check(const Fan& fan);

// Regular star subdivision at tau (dimension k >= 2), transverse complement
// xi inside a maximal cone containing tau; checks
// t = (-1)^(k-1) * integral over the subdivision of x_new^k * pullback(x_xi)
// is strictly positive.
TheoremReport exceptional_positivity_check(const Fan& fan, const Cone& tau);

// Term table over all k >= 1, compositions m_1 + ... + m_k = rank/2, and
// k-subsets of distinct rays; requires local convexity (otherwise the report
// carries status "hypothesis_failed"). Passes when every term is >= 0,
// non-spanning tuples vanish, (-1)^(rank/2) * signature >= 0, and the L
// integral reconstructed from the table matches the signature check.
TheoremReport leung_reiner_certificate(const Fan& fan);

}  // namespace fansig
