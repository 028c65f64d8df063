#include "adelic/finitefield.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "adelic/errors.hpp"
#include "adelic/primes.hpp"

namespace adelic {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod_small(u64 base, std::uint32_t e, u64 p) {
    u64 r = 1;
    base %= p;
    while (e) {
        if (e & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return r;
}

// Substitute x_1 = a, producing a polynomial in the remaining variables.
PolyModP specialize_first(const PolyModP& f, u64 a) {
    PolyModP out;
    out.p = f.p;
    out.nvars = f.nvars - 1;
    // Powers of a up to the max exponent of x_1.
    std::uint32_t dmax = 0;
    for (const auto& [e, c] : f.terms) dmax = std::max(dmax, e[0]);
    std::vector<u64> apow(dmax + 1, 1);
    for (std::uint32_t k = 1; k <= dmax; ++k) apow[k] = mulmod(apow[k - 1], a, f.p);

    // Accumulate into a small map keyed by the truncated exponent vector; the
    // incoming terms are grlex-sorted, so equal keys need merging only.
    std::map<ExpVector, u64, GrlexLess> acc;
    ExpVector e1;
    for (const auto& [e, c] : f.terms) {
        e1.assign(e.begin() + 1, e.end());
        u64& slot = acc[e1];
        slot = (slot + mulmod(c, apow[e[0]], f.p)) % f.p;
    }
    out.terms.reserve(acc.size());
    for (auto& [e, c] : acc)
        if (c) out.terms.emplace_back(e, c);
    return out;
}

// Dense coefficient vector of a univariate PolyModP.
std::vector<u64> dense_univariate(const PolyModP& f) {
    std::uint32_t d = 0;
    for (const auto& [e, c] : f.terms) d = std::max(d, e[0]);
    std::vector<u64> coeffs(d + 1, 0);
    for (const auto& [e, c] : f.terms) coeffs[e[0]] = c;
    return coeffs;
}

u64 horner(const std::vector<u64>& coeffs, u64 x, u64 p) {
    u64 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
    return acc;
}

u64 pow_u64(u64 base, std::size_t e) {
    u64 r = 1;
    while (e--) r *= base;
    return r;
}

// Counts common zeros of a normalized system (no zero members; callers handle
// the all-zero and nonzero-constant shortcuts at each level).
u64 count_rec(const std::vector<PolyModP>& fs, u64 p) {
    assert(!fs.empty());
    if (fs[0].nvars == 1) {
        std::vector<std::vector<u64>> dense;
        dense.reserve(fs.size());
        for (const auto& f : fs) dense.push_back(dense_univariate(f));
        u64 cnt = 0;
        for (u64 x = 0; x < p; ++x) {
            bool all = true;
            for (const auto& cf : dense) {
                if (horner(cf, x, p) != 0) {
                    all = false;
                    break;
                }
            }
            if (all) ++cnt;
        }
        return cnt;
    }
    u64 cnt = 0;
    std::vector<PolyModP> spec;
    for (u64 a = 0; a < p; ++a) {
        spec.clear();
        bool impossible = false;
        for (const auto& f : fs) {
            PolyModP g = specialize_first(f, a);
            if (g.is_zero()) continue;  // vacuous constraint
            if (g.is_constant()) {      // nonzero constant: no zeros for this a
                impossible = true;
                break;
            }
            spec.push_back(std::move(g));
        }
        if (impossible) continue;
        if (spec.empty())
            cnt += pow_u64(p, fs[0].nvars - 1);
        else
            cnt += count_rec(spec, p);
    }
    return cnt;
}

}  // namespace

PolyModP reduce_mod_p(const MultiPoly& f, std::uint64_t p) {
    if (!is_prime_u64(p)) throw precondition_error("modulus is not prime: " + std::to_string(p));
    PolyModP out;
    out.p = p;
    out.nvars = f.nvars();
    const Int ip(p);
    for (const auto& [e, c] : f.terms()) {
        Int r = c % ip;
        if (r < 0) r += ip;
        if (r != 0) out.terms.emplace_back(e, r.convert_to<std::uint64_t>());
    }
    return out;
}

std::uint64_t eval_mod_p(const PolyModP& f, std::span<const std::uint64_t> point) {
    assert(point.size() == f.nvars);
    u64 acc = 0;
    for (const auto& [e, c] : f.terms) {
        u64 t = c;
        for (std::size_t i = 0; i < f.nvars; ++i)
            if (e[i]) t = mulmod(t, powmod_small(point[i], e[i], f.p), f.p);
        acc = (acc + t) % f.p;
    }
    return acc;
}

std::uint64_t default_count_budget() {
    if (const char* env = std::getenv("ADELIC_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 100'000'000;
}

CountReport count_common_zeros(const std::vector<MultiPoly>& fs, std::uint64_t p,
                               const CountOptions& opts) {
    if (fs.empty()) throw precondition_error("count_common_zeros: empty system");
    const std::size_t s = fs[0].nvars();
    if (s == 0) throw precondition_error("count_common_zeros: system has no variables");
    for (const auto& f : fs)
        if (f.nvars() != s) throw precondition_error("count_common_zeros: mixed variable counts");
    if (!is_prime_u64(p)) throw precondition_error("modulus is not prime: " + std::to_string(p));

    // Budget gate on p^s, the enumeration worst case.
    Int points = int_pow(Int(p), s);
    if (points > Int(opts.budget))
        throw budget_error("count_common_zeros: p^s = " + points.str() + " exceeds budget " +
                           std::to_string(opts.budget));

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<PolyModP> reduced;
    bool any_nonzero_constant = false;
    for (const auto& f : fs) {
        PolyModP g = reduce_mod_p(f, p);
        if (g.is_zero()) continue;
        if (g.is_constant()) {
            any_nonzero_constant = true;
            break;
        }
        reduced.push_back(std::move(g));
    }

    CountReport rep;
    rep.p = p;
    rep.method = "specialize";
    if (any_nonzero_constant) {
        rep.count = 0;
    } else if (reduced.empty()) {
        rep.count = pow_u64(p, s);  // every polynomial vanishes identically mod p
    } else if (reduced[0].nvars == 1 || opts.threads <= 1 || p < 64) {
        rep.count = count_rec(reduced, p);
    } else {
        // Partition the outermost variable range; the partial counts sum to a
        // total independent of the partitioning.
        const unsigned nt = std::min<unsigned>(opts.threads, static_cast<unsigned>(p));
        std::vector<u64> partial(nt, 0);
        std::vector<std::thread> workers;
        workers.reserve(nt);
        for (unsigned t = 0; t < nt; ++t) {
            workers.emplace_back([&, t] {
                const u64 lo = p * t / nt, hi = p * (t + 1) / nt;
                u64 cnt = 0;
                std::vector<PolyModP> spec;
                for (u64 a = lo; a < hi; ++a) {
                    spec.clear();
                    bool impossible = false;
                    for (const auto& f : reduced) {
                        PolyModP g = specialize_first(f, a);
                        if (g.is_zero()) continue;
                        if (g.is_constant()) {
                            impossible = true;
                            break;
                        }
                        spec.push_back(std::move(g));
                    }
                    if (impossible) continue;
                    if (spec.empty())
                        cnt += pow_u64(p, reduced[0].nvars - 1);
                    else
                        cnt += count_rec(spec, p);
                }
                partial[t] = cnt;
            });
        }
        for (auto& w : workers) w.join();
        rep.count = 0;
        for (u64 c : partial) rep.count += c;
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

double lang_weil_residual(const std::vector<MultiPoly>& fs, std::uint64_t p, unsigned dim,
                          std::uint64_t components, const CountOptions& opts) {
    if (components < 1) throw precondition_error("lang_weil_residual: components must be >= 1");
    if (!fs.empty() && dim > fs[0].nvars())
        throw precondition_error("lang_weil_residual: dim exceeds variable count");
    const CountReport rep = count_common_zeros(fs, p, opts);
    const double pd = std::pow(static_cast<double>(p), static_cast<double>(dim));
    const double scale = std::pow(static_cast<double>(p), static_cast<double>(dim) - 0.5);
    return (static_cast<double>(rep.count) - static_cast<double>(components) * pd) / scale;
}

}  // namespace adelic
