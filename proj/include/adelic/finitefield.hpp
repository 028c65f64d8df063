#ifndef ADELIC_FINITEFIELD_HPP
#define ADELIC_FINITEFIELD_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "adelic/polyring.hpp"

namespace adelic {

// Polynomial over F_p; coefficients normalized to [1, p-1], zero terms dropped.
struct PolyModP {
    std::uint64_t p = 0;
    std::size_t nvars = 0;
    std::vector<std::pair<ExpVector, std::uint64_t>> terms;  // grlex ascending

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const { return terms.empty() || (terms.size() == 1 && exp_sum(terms[0].first) == 0); }
};

// Coefficient-wise reduction; throws precondition_error if p is not prime.
PolyModP reduce_mod_p(const MultiPoly& f, std::uint64_t p);

// Evaluation over F_p; point entries in [0, p).
std::uint64_t eval_mod_p(const PolyModP& f, std::span<const std::uint64_t> point);

struct CountReport {
    std::uint64_t p = 0;
    std::uint64_t count = 0;  // s_p, number of common zeros in F_p^s
    double elapsed_ms = 0.0;
    std::string method;
};

struct CountOptions {
    std::uint64_t budget = 100'000'000;  // maximum p^s admitted per call
    unsigned threads = 1;
};

std::uint64_t default_count_budget();  // 1e8, overridable via ADELIC_BUDGET

// Exact count of common zeros of fs over F_p^s by exhaustive enumeration with
// nested specialization of the first variable. Deterministic for any thread
// count. Throws budget_error when p^s exceeds the budget.
CountReport count_common_zeros(const std::vector<MultiPoly>& fs, std::uint64_t p,
                               const CountOptions& opts = {});

// (s_p - components * p^dim) / p^(dim - 1/2); diagnostic against the
// Lang-Weil normalization, bounded sequences indicate consistency.
double lang_weil_residual(const std::vector<MultiPoly>& fs, std::uint64_t p, unsigned dim,
                          std::uint64_t components, const CountOptions& opts = {});

}  // namespace adelic

#endif
