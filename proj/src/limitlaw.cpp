#include "adelic/limitlaw.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <mutex>
#include <thread>

#include "adelic/errors.hpp"
#include "adelic/euclid.hpp"
#include "adelic/finitefield.hpp"
#include "adelic/padic.hpp"
#include "adelic/primes.hpp"
#include "adelic/rng.hpp"

namespace adelic {

namespace {

// B_2 .. B_32 as exact fractions; enough for ~70 digits at N = 256.
struct BernoulliEntry {
    long long num;
    long long den;
};
constexpr BernoulliEntry kBernoulli[] = {
    {1, 6},           {-1, 30},         {1, 42},           {-1, 30},
    {5, 66},          {-691, 2730},     {7, 6},            {-3617, 510},
    {43867, 798},     {-174611, 330},   {854513, 138},     {-236364091, 2730},
    {8553103, 6},     {-23749461029LL, 870},               {8615841276005LL, 14322},
    {-7709321041217LL, 510},
};

}  // namespace

Real zeta(unsigned s) {
    if (s < 2) throw precondition_error("zeta: defined here for integer s >= 2 only");
    const int N = 256;
    Real sum = 0;
    for (int n = 1; n <= N; ++n) sum += Real(1) / pow(Real(n), static_cast<int>(s));
    sum += pow(Real(N), 1 - static_cast<int>(s)) / (static_cast<int>(s) - 1);
    sum -= pow(Real(N), -static_cast<int>(s)) / 2;

    Real rising = Real(s);                                  // (s)(s+1)...(s+2k-2)
    Real npow = pow(Real(N), -static_cast<int>(s) - 1);     // N^(-s-2k+1)
    Real fact = 2;                                          // (2k)!
    for (std::size_t k = 1; k <= std::size(kBernoulli); ++k) {
        const Real b = Real(kBernoulli[k - 1].num) / Real(kBernoulli[k - 1].den);
        sum += b / fact * rising * npow;
        rising *= Real(s + 2 * k - 1) * Real(s + 2 * k);
        npow /= Real(N) * Real(N);
        fact *= Real(2 * k + 1) * Real(2 * k + 2);
    }
    return sum;
}

Real zeta_gcd_pmf(unsigned s, std::uint64_t j) {
    if (j < 1) throw precondition_error("zeta_gcd_pmf: j must be positive");
    return Real(1) / (zeta(s) * pow(Real(j), static_cast<int>(s)));
}

double prime_square_tail(std::uint64_t pmax) {
    if (pmax < 2) return 0.5;  // crude bound; never used at sensible cutoffs
    const double p = static_cast<double>(pmax);
    return 1.0 / (p * std::log(p));
}

namespace {

// Counts s_p for the listed primes; parallel across primes, order preserved.
std::vector<std::uint64_t> count_for_primes(const std::vector<MultiPoly>& fs,
                                            const std::vector<std::uint64_t>& primes,
                                            std::uint64_t budget, unsigned threads) {
    std::vector<std::uint64_t> counts(primes.size(), 0);
    const unsigned nt = std::max(1u, std::min<unsigned>(threads, 64));
    CountOptions copts;
    copts.budget = budget;
    copts.threads = 1;
    if (nt == 1 || primes.size() < 2) {
        for (std::size_t i = 0; i < primes.size(); ++i)
            counts[i] = count_common_zeros(fs, primes[i], copts).count;
        return counts;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned t = 0; t < nt; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= primes.size()) return;
                try {
                    counts[i] = count_common_zeros(fs, primes[i], copts).count;
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
    return counts;
}

// Fitted heuristic constant c with s_p <= c p^(s-2) over the top decade of
// the counted primes.
double fit_tail_constant(const std::vector<std::uint64_t>& primes,
                         const std::vector<std::uint64_t>& counts, std::size_t s, double safety) {
    if (primes.empty()) return 0.0;
    const double lo = static_cast<double>(primes.back()) / 10.0;
    double cmax = 0.0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const double p = static_cast<double>(primes[i]);
        if (p <= lo && i + 1 != primes.size()) continue;
        const double scaled =
            static_cast<double>(counts[i]) * std::pow(p, 2.0 - static_cast<double>(s));
        cmax = std::max(cmax, scaled);
    }
    return safety * cmax;
}

void check_simulation_inputs(const std::vector<MultiPoly>& fs, const SimulateOptions& opts) {
    if (fs.size() < 2) throw precondition_error("simulate: at least two polynomials required");
    const std::size_t s = fs[0].nvars();
    for (const auto& f : fs) {
        if (f.is_zero()) throw precondition_error("simulate: zero polynomial in input");
        if (f.nvars() != s) throw precondition_error("simulate: mixed variable counts");
    }
    if (s < 1) throw precondition_error("simulate: at least one variable required");
    if (opts.trials < 1) throw precondition_error("simulate: trials must be >= 1");
    if (opts.cap < 1) throw precondition_error("simulate: cap must be >= 1");
    if (opts.pmax < 2) throw precondition_error("simulate: pmax must be >= 2");
}

double tail_estimate_for(const std::vector<MultiPoly>& fs, std::uint64_t pmax, unsigned threads) {
    // Diagnostic only: fit the tail constant on the top decade of primes whose
    // enumeration fits the budget; report 0 when none do.
    const std::uint64_t budget = default_count_budget();
    const std::size_t s = fs[0].nvars();
    std::vector<std::uint64_t> usable;
    for (std::uint64_t p : primes_up_to(pmax))
        if (int_pow(Int(p), s) <= Int(budget)) usable.push_back(p);
    if (usable.empty()) return 0.0;
    std::vector<std::uint64_t> decade;
    const std::uint64_t lo = usable.back() / 10;
    for (std::uint64_t p : usable)
        if (p > lo) decade.push_back(p);
    if (decade.empty()) decade.push_back(usable.back());
    const auto counts = count_for_primes(fs, decade, budget, threads);
    const double c = fit_tail_constant(decade, counts, s, 4.0);
    return c * prime_square_tail(pmax);
}

template <typename PerTrial>
LimitSampleSet run_simulation(const std::vector<MultiPoly>& fs, const SimulateOptions& opts,
                              const PerTrial& per_trial) {
    std::vector<ValuationSampler> samplers;
    for (std::uint64_t p : primes_up_to(opts.pmax)) samplers.emplace_back(fs, p, opts.cap);
    const unsigned nt = std::max(1u, std::min<unsigned>(opts.threads, 64));
    std::vector<LimitSampleSet> partial(nt);

    auto worker = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t t = lo; t < hi; ++t) per_trial(t, samplers, partial[w]);
    };
    if (nt == 1 || opts.trials < 2 * nt) {
        worker(0, 0, opts.trials);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < nt; ++t) {
            const std::uint64_t lo = opts.trials * t / nt, hi = opts.trials * (t + 1) / nt;
            workers.emplace_back(worker, t, lo, hi);
        }
        for (auto& w : workers) w.join();
    }

    LimitSampleSet out;
    out.trials = opts.trials;
    out.pmax = opts.pmax;
    out.cap = opts.cap;
    out.seed = opts.seed;
    out.dist.seed = opts.seed;
    for (const auto& p : partial) {
        out.dist.merge(p.dist);
        out.censored += p.censored;
    }
    out.tail_estimate = tail_estimate_for(fs, opts.pmax, opts.threads);
    return out;
}

}  // namespace

EulerProductResult ekedahl_poonen_density(const std::vector<MultiPoly>& fs,
                                          const DensityOptions& opts) {
    if (fs.empty()) throw precondition_error("density: empty polynomial list");
    const std::size_t s = fs[0].nvars();
    for (const auto& f : fs) {
        if (f.is_zero()) throw precondition_error("density: zero polynomial in input");
        if (f.nvars() != s) throw precondition_error("density: mixed variable counts");
    }
    if (fs.size() == 1 && !fs[0].is_constant())
        throw precondition_error(
            "density: a single nonconstant polynomial has vanishing density; m >= 2 required");
    if (has_common_factor(fs))
        throw precondition_error("density: polynomials share a common factor");
    if (opts.pmax < 2) throw precondition_error("density: pmax must be >= 2");

    const std::uint64_t budget = opts.budget ? opts.budget : default_count_budget();
    const std::vector<std::uint64_t> primes = primes_up_to(opts.pmax);
    if (!primes.empty() && int_pow(Int(primes.back()), s) > Int(budget))
        throw budget_error("density: enumeration at p = " + std::to_string(primes.back()) +
                           " exceeds the budget");

    const auto counts = count_for_primes(fs, primes, budget, opts.threads);

    EulerProductResult out;
    out.pmax = opts.pmax;
    out.partial = 1;
    out.factors.reserve(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const Real ps = pow(Real(primes[i]), static_cast<int>(s));
        const Real factor = 1 - Real(counts[i]) / ps;
        out.partial *= factor;  // ascending prime order, reproducible rounding
        out.factors.push_back({primes[i], counts[i], to_double(factor)});
    }
    out.tail_constant = fit_tail_constant(primes, counts, s, opts.safety);
    out.tail_lo = std::clamp(1.0 - out.tail_constant * prime_square_tail(opts.pmax), 0.0, 1.0);
    out.tail_hi = 1.0;
    return out;
}

LimitSampleSet simulate_G(const std::vector<MultiPoly>& fs, const SimulateOptions& opts) {
    check_simulation_inputs(fs, opts);
    if (has_common_factor(fs))
        throw precondition_error("simulate_G: polynomials share a common factor");

    const rng::Key root = rng::Key{opts.seed}.child(rng::kTagDigits);
    return run_simulation(
        fs, opts,
        [&](std::uint64_t t, const std::vector<ValuationSampler>& samplers, LimitSampleSet& acc) {
            Int g = 1;
            for (const auto& sampler : samplers) {
                const std::uint64_t p = sampler.prime();
                const ValuationSample vs = sampler.sample(root.child(p).child(t));
                std::uint64_t vmin = ~std::uint64_t{0};
                for (const auto& e : vs.vals) {
                    if (e.censored) ++acc.censored;
                    vmin = std::min(vmin, e.value);
                }
                if (vmin > 0) g *= int_pow(Int(p), vmin);
            }
            acc.dist.add(Rat(g));
        });
}

LimitSampleSet simulate_L(const std::vector<MultiPoly>& fs, const SimulateOptions& opts) {
    check_simulation_inputs(fs, opts);
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j)
            if (has_common_factor({fs[i], fs[j]}))
                throw precondition_error("simulate_L: a pair shares a common factor");

    const rng::Key root = rng::Key{opts.seed}.child(rng::kTagDigits);
    return run_simulation(
        fs, opts,
        [&](std::uint64_t t, const std::vector<ValuationSampler>& samplers, LimitSampleSet& acc) {
            Int denom = 1;
            for (const auto& sampler : samplers) {
                const std::uint64_t p = sampler.prime();
                const ValuationSample vs = sampler.sample(root.child(p).child(t));
                std::uint64_t vmax = 0, vsum = 0;
                for (const auto& e : vs.vals) {
                    if (e.censored) ++acc.censored;
                    vmax = std::max(vmax, e.value);
                    vsum += e.value;
                }
                if (vsum > vmax) denom *= int_pow(Int(p), vsum - vmax);
            }
            const Rat value(Int(1), denom);
            assert(boost::multiprecision::numerator(value) == 1);
            acc.dist.add(value);
        });
}

namespace {

long double eval_long_double(const MultiPoly& f, std::span<const long double> point) {
    long double acc = 0;
    for (const auto& [e, c] : f.terms()) {
        long double t = c.convert_to<long double>();
        for (std::size_t i = 0; i < point.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

}  // namespace

LimitSampleSet simulate_scaled_lcm_limit(const std::vector<MultiPoly>& fs,
                                         const SimulateOptions& opts) {
    check_simulation_inputs(fs, opts);
    bool any_nonconstant = false;
    for (const auto& f : fs) any_nonconstant = any_nonconstant || !f.is_constant();
    if (!any_nonconstant)
        throw precondition_error(
            "simulate_scaled_lcm_limit: all top parts are constant; scaling is degenerate");
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j)
            if (has_common_factor({fs[i], fs[j]}))
                throw precondition_error("simulate_scaled_lcm_limit: a pair shares a common factor");

    std::vector<MultiPoly> tops;
    tops.reserve(fs.size());
    for (const auto& f : fs) tops.push_back(f.top_homogeneous());

    const std::size_t s = fs[0].nvars();
    const rng::Key root = rng::Key{opts.seed}.child(rng::kTagDigits);
    const rng::Key cube = rng::Key{opts.seed}.child(rng::kTagUnitCube);
    return run_simulation(
        fs, opts,
        [&](std::uint64_t t, const std::vector<ValuationSampler>& samplers, LimitSampleSet& acc) {
            Int denom = 1;
            for (const auto& sampler : samplers) {
                const std::uint64_t p = sampler.prime();
                const ValuationSample vs = sampler.sample(root.child(p).child(t));
                std::uint64_t vmax = 0, vsum = 0;
                for (const auto& e : vs.vals) {
                    if (e.censored) ++acc.censored;
                    vmax = std::max(vmax, e.value);
                    vsum += e.value;
                }
                if (vsum > vmax) denom *= int_pow(Int(p), vsum - vmax);
            }
            rng::SplitMix64 gen(cube.child(t));
            std::vector<long double> u(s);
            for (auto& x : u) x = gen.unit_real();
            long double prod = 1;
            for (const auto& f : tops) prod *= eval_long_double(f, u);
            const long double value = prod / denom.convert_to<long double>();
            acc.dist.add(rat_from_double(static_cast<double>(value)));
        });
}

}  // namespace adelic
