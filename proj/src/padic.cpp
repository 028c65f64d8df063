#include "adelic/padic.hpp"

#include <algorithm>
#include <cassert>

#include "adelic/errors.hpp"
#include "adelic/primes.hpp"

namespace adelic {

std::optional<std::uint64_t> valuation_int(const Int& n, std::uint64_t p) {
    if (!is_prime_u64(p)) throw precondition_error("valuation_int: p is not prime");
    if (n == 0) return std::nullopt;
    Int m = n < 0 ? Int(-n) : n;
    const Int ip(p);
    std::uint64_t v = 0;
    Int q, r;
    for (;;) {
        boost::multiprecision::divide_qr(m, ip, q, r);
        if (r != 0) return v;
        m = q;
        ++v;
    }
}

ResidueStream::ResidueStream(std::uint64_t p, rng::Key key, unsigned depth)
    : p_(p), gen_(rng::SplitMix64(key)) {
    assert(is_prime_u64(p));
    extend(std::max(1u, depth));
}

void ResidueStream::extend(unsigned new_depth) {
    while (digits_.size() < new_depth) {
        const std::uint64_t d = gen_.below(p_);
        digits_.push_back(d);
        if (d) residue_ += Int(d) * scale_;
        scale_ *= p_;
#ifndef NDEBUG
        // Digit filtration: the new residue reduces to the old one mod p^k.
        assert(residue_ < scale_ && residue_ >= 0);
#endif
    }
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(u128(a) * b % m);
}

// Per-thread scratch shared by every sampler; sized on demand.
struct SampleScratch {
    std::vector<rng::SplitMix64> gens;
    std::vector<std::vector<std::uint64_t>> digits;
    std::vector<std::uint64_t> fast_residues;
    std::vector<Int> exact_residues;
    std::vector<std::size_t> pending, still;
};

thread_local SampleScratch scratch;

}  // namespace

ValuationSampler::ValuationSampler(const std::vector<MultiPoly>& fs, std::uint64_t p, unsigned cap,
                                   unsigned initial_depth)
    : fs_(fs), p_(p), cap_(cap), initial_depth_(std::min(std::max(1u, initial_depth), cap)) {
    if (fs_.empty()) throw precondition_error("sample_valuations: empty polynomial list");
    const std::size_t s = fs_[0].nvars();
    for (const auto& f : fs_)
        if (f.nvars() != s) throw precondition_error("sample_valuations: mixed variable counts");
    if (cap_ < 1) throw precondition_error("sample_valuations: cap must be >= 1");
    if (!is_prime_u64(p_)) throw precondition_error("sample_valuations: p is not prime");

    // Largest k <= initial depth with p^k <= 2^63: the fast modulus.
    const std::uint64_t limit = std::uint64_t{1} << 63;
    std::uint64_t m = 1;
    unsigned k = 0;
    while (k < initial_depth_ && m <= limit / p_) {
        m *= p_;
        ++k;
    }
    k_eval_ = k;
    m_ = m;
    const Int im(m_);
    fast_terms_.resize(fs_.size());
    for (std::size_t i = 0; i < fs_.size(); ++i) {
        for (const auto& [e, c] : fs_[i].terms()) {
            Int r = c % im;
            if (r < 0) r += im;
            fast_terms_[i].push_back({e, r.convert_to<std::uint64_t>()});
        }
    }
}

ValuationSample ValuationSampler::sample(rng::Key trial_key) const {
    const std::size_t s = fs_[0].nvars();
    auto& ws = scratch;
    ws.gens.clear();
    if (ws.digits.size() < s) ws.digits.resize(s);
    ws.fast_residues.assign(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        ws.gens.emplace_back(trial_key.child(static_cast<std::uint64_t>(i)));
        ws.digits[i].clear();
    }
    unsigned depth = initial_depth_;
    for (std::size_t i = 0; i < s; ++i) {
        auto& d = ws.digits[i];
        std::uint64_t r = 0, scale = 1;
        for (unsigned j = 0; j < depth; ++j) {
            const std::uint64_t dj = ws.gens[i].below(p_);
            d.push_back(dj);
            if (j < k_eval_) {
                r += dj * scale;
                scale *= p_;
            }
        }
        ws.fast_residues[i] = r;
    }

    ValuationSample out;
    out.p = p_;
    out.vals.assign(fs_.size(), {});
    ws.pending.clear();

    // Round 1: evaluate mod p^k_eval; a nonzero residue pins the valuation.
    for (std::size_t idx = 0; idx < fs_.size(); ++idx) {
        std::uint64_t acc = 0;
        for (const auto& term : fast_terms_[idx]) {
            std::uint64_t t = term.coeff;
            for (std::size_t i = 0; i < s && t; ++i) {
                const std::uint64_t x = ws.fast_residues[i] % m_;
                for (std::uint32_t k = 0; k < term.exps[i]; ++k) t = mulmod(t, x, m_);
            }
            acc += t;
            if (acc >= m_) acc -= m_;
        }
        if (acc != 0) {
            std::uint64_t v = 0;
            while (acc % p_ == 0) {
                acc /= p_;
                ++v;
            }
            out.vals[idx] = {v, false};
        } else {
            ws.pending.push_back(idx);
        }
    }

    // Exact rounds for whatever is left (probability ~ p^-k_eval per entry).
    while (!ws.pending.empty()) {
        if (ws.exact_residues.size() < s) ws.exact_residues.resize(s);
        for (std::size_t i = 0; i < s; ++i) {
            Int r = 0;
            const auto& d = ws.digits[i];
            for (std::size_t j = d.size(); j-- > 0;) {
                r *= p_;
                r += d[j];
            }
            ws.exact_residues[i] = std::move(r);
        }
        ws.still.clear();
        for (std::size_t idx : ws.pending) {
            const Int value =
                fs_[idx].eval(std::span<const Int>(ws.exact_residues.data(), s));
            const auto v = valuation_int(value, p_);
            // f(V) = f(residue) mod p^depth: the valuation is settled only
            // when it resolves strictly below the current depth.
            if (v && *v < depth) {
                out.vals[idx] = {*v, false};
            } else {
                ws.still.push_back(idx);
            }
        }
        std::swap(ws.pending, ws.still);
        if (ws.pending.empty()) break;
        if (depth >= cap_) {
            for (std::size_t idx : ws.pending) out.vals[idx] = {cap_, true};
            break;
        }
        const unsigned new_depth = std::min(2 * depth, cap_);
        for (std::size_t i = 0; i < s; ++i) {
            auto& d = ws.digits[i];
            for (unsigned j = depth; j < new_depth; ++j) d.push_back(ws.gens[i].below(p_));
        }
        depth = new_depth;
    }
    return out;
}

ValuationSample sample_valuations(const std::vector<MultiPoly>& fs, std::uint64_t p, unsigned cap,
                                  rng::Key trial_key, unsigned initial_depth) {
    return ValuationSampler(fs, p, cap, initial_depth).sample(trial_key);
}

}  // namespace adelic
