#ifndef ADELIC_PADIC_HPP
#define ADELIC_PADIC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "adelic/polyring.hpp"
#include "adelic/rng.hpp"

namespace adelic {

// Largest k with p^k | n; nullopt is the +infinity of lambda_p(0).
std::optional<std::uint64_t> valuation_int(const Int& n, std::uint64_t p);

// Haar-sampled p-adic integer, materialized lazily as a residue mod p^depth.
// Digits are uniform on {0..p-1}; extending preserves the residue mod p^k for
// every previously reached depth k (the digit filtration).
class ResidueStream {
public:
    ResidueStream(std::uint64_t p, rng::Key key, unsigned depth = 1);

    void extend(unsigned new_depth);  // no-op when new_depth <= depth()

    std::uint64_t prime() const { return p_; }
    unsigned depth() const { return static_cast<unsigned>(digits_.size()); }
    const Int& residue() const { return residue_; }
    std::uint64_t digit(unsigned k) const { return digits_.at(k); }

private:
    std::uint64_t p_;
    std::vector<std::uint64_t> digits_;
    Int residue_ = 0;
    Int scale_ = 1;  // p^depth
    rng::SplitMix64 gen_;
};

// Valuations of f_i(V_1..V_s) for one shared tuple of streams; entries are
// either exact (< cap) or censored at the cap.
struct ValuationSample {
    struct Entry {
        std::uint64_t value = 0;
        bool censored = false;
    };
    std::uint64_t p = 0;
    std::vector<Entry> vals;
};

inline constexpr unsigned kDefaultValuationCap = 64;
inline constexpr unsigned kInitialStreamDepth = 8;

// Repeated valuation sampling for a fixed (fs, p, cap). Immutable once built
// and safe to share across threads; sample() keys every digit by
// (trial_key, variable, position). Small moduli take a mulmod fast path,
// falling back to exact evaluation when a valuation does not resolve.
class ValuationSampler {
public:
    ValuationSampler(const std::vector<MultiPoly>& fs, std::uint64_t p, unsigned cap,
                     unsigned initial_depth = kInitialStreamDepth);

    ValuationSample sample(rng::Key trial_key) const;

    std::uint64_t prime() const { return p_; }

private:
    struct FastTerm {
        std::vector<std::uint32_t> exps;
        std::uint64_t coeff;  // reduced mod m_
    };

    std::vector<MultiPoly> fs_;
    std::uint64_t p_ = 0;
    unsigned cap_ = 1;
    unsigned initial_depth_ = 1;
    unsigned k_eval_ = 0;     // fast digits: m_ = p^k_eval_ <= 2^63
    std::uint64_t m_ = 0;
    std::vector<std::vector<FastTerm>> fast_terms_;
};

// Draws s independent streams keyed by trial_key.child(var) and resolves the
// valuation of every f_i, doubling the digit depth on demand up to cap.
ValuationSample sample_valuations(const std::vector<MultiPoly>& fs, std::uint64_t p, unsigned cap,
                                  rng::Key trial_key, unsigned initial_depth = kInitialStreamDepth);

}  // namespace adelic

#endif
