#ifndef ADELIC_POLYRING_HPP
#define ADELIC_POLYRING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adelic/numeric.hpp"

namespace adelic {

// Exponent vector of a monomial; length always equals the owning polynomial's
// variable count.
using ExpVector = std::vector<std::uint32_t>;

inline std::uint64_t exp_sum(const ExpVector& e) {
    std::uint64_t s = 0;
    for (auto x : e) s += x;
    return s;
}

// Graded lexicographic order: compare total degree, then exponents left to right.
struct GrlexLess {
    bool operator()(const ExpVector& a, const ExpVector& b) const {
        const std::uint64_t da = exp_sum(a), db = exp_sum(b);
        if (da != db) return da < db;
        return a < b;  // lexicographic on equal degree
    }
};

// Sparse multivariate polynomial over the integers. Immutable in spirit: all
// operations return new values; no stored coefficient is ever zero.
class MultiPoly {
public:
    using TermMap = std::map<ExpVector, Int, GrlexLess>;

    MultiPoly() = default;  // zero polynomial in 0 variables
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, Int c);
    static MultiPoly variable(std::size_t nvars, std::size_t var);  // var in [0, nvars)

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;         // zero counts as constant
    Int constant_value() const;       // 0 for the zero polynomial; requires is_constant()

    // Total degree; nullopt is the "minus infinity" degree of the zero polynomial.
    std::optional<std::uint64_t> total_degree() const;
    std::uint64_t degree_in(std::size_t var) const;  // 0 for the zero polynomial

    const Int& coeff(const ExpVector& e) const;  // 0 if absent

    // Adds c * x^e, dropping the term if the sum vanishes.
    void add_term(const ExpVector& e, const Int& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const Int& c, const MultiPoly& a);
    MultiPoly operator-() const;
    MultiPoly pow(std::uint64_t e) const;

    bool operator==(const MultiPoly& o) const = default;

    // Exact evaluation; point.size() must equal nvars().
    Int eval(std::span<const Int> point) const;
    Int eval(std::initializer_list<Int> point) const {
        return eval(std::span<const Int>(point.begin(), point.size()));
    }

    // Sum of the terms of maximal total degree; requires a nonzero input.
    MultiPoly top_homogeneous() const;

    // Substitutes values for x_1..x_{s-1}; returns a univariate polynomial in x_s.
    MultiPoly specialize_except_last(std::span<const Int> values) const;

    // Coefficients with respect to the chosen variable, ascending power,
    // as polynomials in the remaining s-1 variables. Includes intermediate
    // zero coefficients; size is degree_in(var)+1 (one zero entry for the
    // zero polynomial).
    std::vector<MultiPoly> coeffs_as_polys(std::size_t var) const;

    // Canonical form: graded-lex order, leading term first, explicit '*',
    // '^' only for exponents >= 2. parse(print(f)) == f.
    std::string to_string() const;

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

// Parses the polynomial grammar: integer literals, variables x1..x<nvars>,
// operators + - * ^ (caret takes a nonnegative integer literal), parentheses.
// Throws parse_error with the offending position.
MultiPoly parse_poly(const std::string& text, std::size_t nvars);

// Dense univariate polynomial over MultiPoly coefficients (the ring R[x] with
// R = Z[x_1..x_k]; k = 0 makes R = Z). Coefficients ascending; the leading
// coefficient of a nonzero polynomial is nonzero.
struct UniPoly {
    std::vector<MultiPoly> c;
    std::size_t base_nvars = 0;

    bool is_zero() const { return c.empty(); }
    std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
    const MultiPoly& lead() const { return c.back(); }
    void normalize();  // strips trailing zero coefficients
};

// View of f as an element of Z[x_1..x_{s-1}][x_var].
UniPoly as_unipoly(const MultiPoly& f, std::size_t var);

// Inverse of as_unipoly: sum_k c[k] * x_var^k as an s-variable polynomial.
MultiPoly from_unipoly(const UniPoly& u, std::size_t var, std::size_t nvars);

}  // namespace adelic

#endif
