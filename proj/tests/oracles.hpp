// Independent reference implementations used only by tests. These share no
// evaluation kernels with the library: counting is a plain odometer over
// F_p^s with per-term modular powers, and distributions come from first
// principles.
#ifndef ADELIC_TESTS_ORACLES_HPP
#define ADELIC_TESTS_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "adelic/polyring.hpp"
#include "adelic/rng.hpp"

namespace oracles {

using adelic::ExpVector;
using adelic::Int;
using adelic::MultiPoly;

inline std::uint64_t powmod_naive(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    b %= p;
    while (e--) r = (unsigned __int128)(r)*b % p;
    return r;
}

// Exhaustive count of common zeros over F_p^s, term-by-term evaluation.
inline std::uint64_t naive_count_common_zeros(const std::vector<MultiPoly>& fs, std::uint64_t p) {
    const std::size_t s = fs[0].nvars();
    std::vector<std::uint64_t> x(s, 0);
    std::uint64_t count = 0;
    for (;;) {
        bool all_zero = true;
        for (const auto& f : fs) {
            std::uint64_t acc = 0;
            for (const auto& [e, c] : f.terms()) {
                Int cm = c % Int(p);
                if (cm < 0) cm += p;
                std::uint64_t t = cm.convert_to<std::uint64_t>();
                for (std::size_t i = 0; i < s; ++i)
                    t = (unsigned __int128)(t)*powmod_naive(x[i], e[i], p) % p;
                acc = (acc + t) % p;
            }
            if (acc != 0) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) ++count;
        std::size_t i = 0;
        while (i < s && ++x[i] == p) x[i++] = 0;
        if (i == s) return count;
    }
}

// Random sparse polynomial; never the zero polynomial.
inline MultiPoly random_multipoly(adelic::rng::SplitMix64& gen, std::size_t nvars,
                                  std::uint32_t max_deg, std::size_t max_terms,
                                  std::int64_t coeff_bound) {
    for (;;) {
        MultiPoly f(nvars);
        const std::size_t nterms = 1 + gen.below(max_terms);
        for (std::size_t t = 0; t < nterms; ++t) {
            ExpVector e(nvars, 0);
            std::uint32_t budget = max_deg;
            for (std::size_t i = 0; i < nvars; ++i) {
                const std::uint32_t d = static_cast<std::uint32_t>(gen.below(budget + 1));
                e[i] = d;
                budget -= d;
            }
            const std::int64_t c =
                static_cast<std::int64_t>(gen.below(2 * coeff_bound + 1)) - coeff_bound;
            f.add_term(e, Int(c));
        }
        if (!f.is_zero()) return f;
    }
}

}  // namespace oracles

#endif
