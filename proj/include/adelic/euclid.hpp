#ifndef ADELIC_EUCLID_HPP
#define ADELIC_EUCLID_HPP

#include <string>
#include <vector>

#include "adelic/polyring.hpp"

namespace adelic {

// Exact quotient num/den; throws std::logic_error when den does not divide num.
MultiPoly divexact(const MultiPoly& num, const MultiPoly& den);

// Fraction-free (Bareiss) determinant; entries share a variable count.
MultiPoly det_bareiss(std::vector<std::vector<MultiPoly>> m);

// Determinant of the Sylvester matrix of g and h over R = Z[x_1..x_k]
// (k = base_nvars; k = 0 is the integer case). Convention: g's coefficient
// rows on top, h's below, coefficients descending; Res(x, x+c) = c.
// Zero iff g and h share a factor of positive x-degree over Frac(R).
MultiPoly sylvester_resultant(const UniPoly& g, const UniPoly& h);

// Convenience form for univariate integer polynomials (nvars = 1).
Int sylvester_resultant_z(const MultiPoly& g, const MultiPoly& h);

// Cofactors a_i and positive integer A with sum a_i * g_i = A identically.
struct BezoutCertificate {
    std::vector<MultiPoly> cofactors;  // univariate over Z, aligned with the input
    Int constant;                      // A >= 1
};

// Cross-multiplication elimination following the inductive construction:
// reduce the highest-degree member against another nonzero member until a
// nonzero constant (or an all-constant tuple) appears, then back-substitute.
// A is not minimal. Throws precondition_error("common-factor-detected")
// when the elimination strands a nonconstant survivor, and on all-zero input.
BezoutCertificate bezout_certificate(const std::vector<MultiPoly>& gs);

// The W_1..W_L of the resultant criterion: coefficients of the u-monomials in
// Res(Q_1, u_2 Q_2 + ... + u_m Q_m), as elements of the base ring R. All
// vanish iff the Q_i share a factor of positive x-degree (exact degrees).
// For m = 2 this is the single Sylvester resultant.
struct WitnessSet {
    std::vector<MultiPoly> ws;  // graded-lex order in (l_2..l_m); l = ws.size() >= 1
};

WitnessSet common_factor_witnesses(const std::vector<UniPoly>& qs);

// True iff fs share a common factor of positive total degree over Q.
// Univariate base case: primitive pseudo-remainder GCD. Multivariate case:
// witness sets evaluated at deterministic random points (degree-preserving
// specializations; up to 5 retries before conservatively answering true) for
// factors involving the last variable, then recursion on the coefficient
// list for factors that do not involve it.
bool has_common_factor(const std::vector<MultiPoly>& fs, std::vector<std::string>* trace = nullptr);

// Degree over Q of the GCD of univariate integer polynomials (dense
// coefficient vectors, ascending). Exact; used as the recursion base.
std::size_t univariate_gcd_degree(std::vector<std::vector<Int>> polys);

}  // namespace adelic

#endif
