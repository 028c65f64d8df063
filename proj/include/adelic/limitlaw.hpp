#ifndef ADELIC_LIMITLAW_HPP
#define ADELIC_LIMITLAW_HPP

#include <cstdint>
#include <vector>

#include "adelic/montecarlo.hpp"
#include "adelic/polyring.hpp"

namespace adelic {

// Riemann zeta at integer s >= 2, Euler-Maclaurin with a bounded remainder;
// accurate to well beyond 50 decimal digits at these arguments.
Real zeta(unsigned s);

// P{G = j} = 1 / (zeta(s) j^s), the zeta GCD law.
Real zeta_gcd_pmf(unsigned s, std::uint64_t j);

struct PrimeFactorEntry {
    std::uint64_t p = 0;
    std::uint64_t count = 0;  // s_p
    double factor = 1.0;      // 1 - s_p / p^s
};

// Partial Euler product with a heuristic tail bracket. The true density lies
// in [partial * tail_lo, partial * tail_hi] under the fitted tail bound
// s_p <= c p^(s-2); the bracket is labeled heuristic because the Lang-Weil
// constant is not quantified.
struct EulerProductResult {
    Real partial = 1;
    double tail_lo = 1.0;
    double tail_hi = 1.0;
    std::uint64_t pmax = 0;
    double tail_constant = 0.0;  // fitted c
    std::vector<PrimeFactorEntry> factors;

    double bracket_lo() const { return to_double(partial) * tail_lo; }
    double bracket_hi() const { return to_double(partial) * tail_hi; }
};

struct DensityOptions {
    std::uint64_t pmax = 10'000;
    std::uint64_t budget = 0;  // 0: use default_count_budget()
    unsigned threads = 1;
    double safety = 4.0;  // multiplier on the fitted tail constant
};

// prod_{p <= pmax} (1 - s_p / p^s), the Ekedahl-Poonen density of the set
// where the f_i values are jointly coprime. Requires no common factor and,
// for a single nonconstant polynomial, rejects (the density vanishes).
EulerProductResult ekedahl_poonen_density(const std::vector<MultiPoly>& fs,
                                          const DensityOptions& opts = {});

struct SimulateOptions {
    std::uint64_t trials = 0;
    std::uint64_t pmax = 1'000;
    unsigned cap = 64;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// Samples of a limiting statistic; exact support plus censoring bookkeeping.
struct LimitSampleSet {
    EmpiricalDist dist;
    std::uint64_t censored = 0;  // censored valuations across all trials/primes
    std::uint64_t trials = 0;
    std::uint64_t pmax = 0;
    unsigned cap = 0;
    std::uint64_t seed = 0;
    double tail_estimate = 0.0;  // heuristic sum_{p > pmax} c p^-2
};

// G = prod_p p^(min_i lambda_p(f_i(V))) over p <= pmax; exact positive integers.
LimitSampleSet simulate_G(const std::vector<MultiPoly>& fs, const SimulateOptions& opts);

// L = prod_p p^(max_i lambda - sum_i lambda); exact rationals in 1/N.
LimitSampleSet simulate_L(const std::vector<MultiPoly>& fs, const SimulateOptions& opts);

// L * prod_i toppart(f_i)(U) with U uniform on [0,1]^s, independent of L.
LimitSampleSet simulate_scaled_lcm_limit(const std::vector<MultiPoly>& fs,
                                         const SimulateOptions& opts);

// Heuristic mass of sum_{p > pmax} p^-2 (prime tail), ~ 1/(P log P).
double prime_square_tail(std::uint64_t pmax);

}  // namespace adelic

#endif
