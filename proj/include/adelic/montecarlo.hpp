#ifndef ADELIC_MONTECARLO_HPP
#define ADELIC_MONTECARLO_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "adelic/polyring.hpp"

namespace adelic {

// Weighted histogram over exact values. Real-valued statistics enter as exact
// dyadic rationals, so supports always compare exactly.
struct EmpiricalDist {
    std::map<Rat, std::uint64_t> counts;
    std::uint64_t total = 0;       // sum of counts
    std::uint64_t degenerate = 0;  // all-zero trials, bucketed separately
    std::uint64_t seed = 0;

    void add(const Rat& v) {
        ++counts[v];
        ++total;
    }
    void merge(const EmpiricalDist& o);
    double mass_of(const Rat& v) const;
};

// GCD/LCM/NLCM of a multiset under the zero conventions: zeros are stripped
// for GCD and NLCM, any zero makes the LCM zero, and absolute values are used
// throughout. NLCM = LCM / prod |a_i| over the zero-stripped multiset.
struct MultisetDivisors {
    Int gcd;
    Int lcm;
    Rat nlcm;
};

// Throws precondition_error on an empty or all-zero multiset.
MultisetDivisors multiset_gcd_lcm_nlcm(const std::vector<Int>& values);

enum class Statistic { Gcd, Lcm, Nlcm, ScaledLcm };

struct ExperimentConfig {
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Statistic statistic = Statistic::Gcd;
    unsigned threads = 1;
};

// Per trial: draw U uniform on {1..n}^s, evaluate every f_i exactly, apply the
// multiset statistic. SCALED_LCM divides by n^(d_1+...+d_m) as an exact
// rational. All-zero GCD/NLCM trials land in the degenerate bucket.
EmpiricalDist sample_statistic(const std::vector<MultiPoly>& fs, const ExperimentConfig& cfg);

struct DivisibilityEstimate {
    double p_hat = 0;
    double std_error = 0;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

// Fraction of trials where f(U) divides g(U); zero divides only zero.
DivisibilityEstimate divisibility_probability(const MultiPoly& f, const MultiPoly& g,
                                              std::uint64_t n, std::uint64_t trials,
                                              std::uint64_t seed, unsigned threads = 1);

struct TailRow {
    unsigned k = 0;
    double p_hat = 0;
    double std_error = 0;
};

// Empirical P{lambda_p(U_n) >= k} for k = 0..k_max.
std::vector<TailRow> valuation_empirics(std::uint64_t p, std::uint64_t n, std::uint64_t trials,
                                        unsigned k_max, std::uint64_t seed, unsigned threads = 1);

struct DistanceReport {
    double tv = 0;  // total variation over the exact union support
    double ks = 0;  // two-sample Kolmogorov-Smirnov statistic
};

DistanceReport compare_distributions(const EmpiricalDist& a, const EmpiricalDist& b);

// TV against a reference pmf; mass outside the pmf support is compared
// against the pmf's leftover mass as a single rest class.
double tv_against_pmf(const EmpiricalDist& a, const std::vector<std::pair<Rat, double>>& pmf);

}  // namespace adelic

#endif
