#include "adelic/montecarlo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <thread>

#include "adelic/errors.hpp"
#include "adelic/padic.hpp"
#include "adelic/rng.hpp"

namespace adelic {

void EmpiricalDist::merge(const EmpiricalDist& o) {
    for (const auto& [v, c] : o.counts) counts[v] += c;
    total += o.total;
    degenerate += o.degenerate;
}

double EmpiricalDist::mass_of(const Rat& v) const {
    auto it = counts.find(v);
    if (it == counts.end() || total == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total);
}

MultisetDivisors multiset_gcd_lcm_nlcm(const std::vector<Int>& values) {
    if (values.empty()) throw precondition_error("multiset statistics: empty multiset");
    std::vector<Int> nonzero;
    nonzero.reserve(values.size());
    bool has_zero = false;
    for (const auto& v : values) {
        if (v == 0)
            has_zero = true;
        else
            nonzero.push_back(abs(v));
    }
    if (nonzero.empty())
        throw precondition_error("multiset statistics: GCD/NLCM of an all-zero multiset");

    MultisetDivisors out;
    out.gcd = 0;
    Int lcm_nz = 1, prod = 1;
    for (const auto& v : nonzero) {
        out.gcd = boost::multiprecision::gcd(out.gcd, v);
        lcm_nz = boost::multiprecision::lcm(lcm_nz, v);
        prod *= v;
    }
    out.lcm = has_zero ? Int(0) : lcm_nz;
    out.nlcm = Rat(lcm_nz, prod);
#ifndef NDEBUG
    if (nonzero.size() == 2) assert(out.gcd * lcm_nz == nonzero[0] * nonzero[1]);
    assert(prod % lcm_nz == 0);  // the NLCM reciprocal is an integer
#endif
    return out;
}

namespace {

std::pair<std::uint64_t, std::uint64_t> trial_range(std::uint64_t trials, unsigned t, unsigned nt) {
    return {trials * t / nt, trials * (t + 1) / nt};
}

template <typename Body>
void run_trials(std::uint64_t trials, unsigned threads, const Body& body) {
    const unsigned nt = std::max(1u, std::min<unsigned>(threads, 64));
    if (nt == 1 || trials < 2 * nt) {
        body(0, 0, trials);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        auto [lo, hi] = trial_range(trials, t, nt);
        workers.emplace_back([&body, t, lo, hi] { body(t, lo, hi); });
    }
    for (auto& w : workers) w.join();
}

}  // namespace

EmpiricalDist sample_statistic(const std::vector<MultiPoly>& fs, const ExperimentConfig& cfg) {
    if (fs.empty()) throw precondition_error("sample_statistic: empty polynomial list");
    if (cfg.n < 1 || cfg.trials < 1)
        throw precondition_error("sample_statistic: n and trials must be >= 1");
    const std::size_t s = fs[0].nvars();
    for (const auto& f : fs)
        if (f.nvars() != s) throw precondition_error("sample_statistic: mixed variable counts");

    Int scale = 1;
    if (cfg.statistic == Statistic::ScaledLcm) {
        std::uint64_t dsum = 0;
        for (const auto& f : fs) {
            if (f.is_zero())
                throw precondition_error("sample_statistic: SCALED_LCM requires nonzero polynomials");
            dsum += *f.total_degree();
        }
        scale = int_pow(Int(cfg.n), dsum);
    }

    const unsigned nt = std::max(1u, cfg.threads);
    std::vector<EmpiricalDist> partial(std::max<unsigned>(nt, 1));
    const rng::Key root = rng::Key{cfg.seed}.child(rng::kTagUniform);

    run_trials(cfg.trials, nt, [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
        EmpiricalDist& dist = partial[worker];
        std::vector<Int> point(s);
        std::vector<Int> values(fs.size());
        for (std::uint64_t t = lo; t < hi; ++t) {
            rng::SplitMix64 gen(root.child(t));
            for (auto& x : point) x = Int(gen.one_to(cfg.n));
            bool all_zero = true;
            for (std::size_t i = 0; i < fs.size(); ++i) {
                values[i] = fs[i].eval(point);
                all_zero = all_zero && values[i] == 0;
            }
            switch (cfg.statistic) {
                case Statistic::Gcd:
                case Statistic::Nlcm: {
                    if (all_zero) {
                        ++dist.degenerate;
                        break;
                    }
                    const MultisetDivisors d = multiset_gcd_lcm_nlcm(values);
                    dist.add(cfg.statistic == Statistic::Gcd ? Rat(d.gcd) : d.nlcm);
                    break;
                }
                case Statistic::Lcm:
                case Statistic::ScaledLcm: {
                    Int lcm_all = 1;
                    for (const auto& v : values) {
                        if (v == 0) {
                            lcm_all = 0;
                            break;
                        }
                        lcm_all = boost::multiprecision::lcm(lcm_all, abs(v));
                    }
#ifndef NDEBUG
                    if (values.size() == 2 && lcm_all != 0)
                        assert(boost::multiprecision::gcd(abs(values[0]), abs(values[1])) *
                                   lcm_all ==
                               abs(values[0] * values[1]));
#endif
                    dist.add(cfg.statistic == Statistic::Lcm ? Rat(lcm_all) : Rat(lcm_all, scale));
                    break;
                }
            }
        }
    });

    EmpiricalDist out;
    out.seed = cfg.seed;
    for (const auto& d : partial) out.merge(d);
    return out;
}

DivisibilityEstimate divisibility_probability(const MultiPoly& f, const MultiPoly& g,
                                              std::uint64_t n, std::uint64_t trials,
                                              std::uint64_t seed, unsigned threads) {
    if (f.is_zero()) throw precondition_error("divisibility_probability: f must be nonzero");
    if (f.nvars() != g.nvars())
        throw precondition_error("divisibility_probability: mixed variable counts");
    if (n < 1 || trials < 1)
        throw precondition_error("divisibility_probability: n and trials must be >= 1");

    const std::size_t s = f.nvars();
    const unsigned nt = std::max(1u, threads);
    std::vector<std::uint64_t> hits(nt, 0);
    const rng::Key root = rng::Key{seed}.child(rng::kTagUniform);

    run_trials(trials, nt, [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t h = 0;
        std::vector<Int> point(s);
        for (std::uint64_t t = lo; t < hi; ++t) {
            rng::SplitMix64 gen(root.child(t));
            for (auto& x : point) x = Int(gen.one_to(n));
            const Int a = f.eval(point);
            const Int b = g.eval(point);
            if (a == 0 ? b == 0 : b % a == 0) ++h;
        }
        hits[worker] = h;
    });

    DivisibilityEstimate est;
    est.trials = trials;
    for (auto h : hits) est.hits += h;
    est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
    return est;
}

std::vector<TailRow> valuation_empirics(std::uint64_t p, std::uint64_t n, std::uint64_t trials,
                                        unsigned k_max, std::uint64_t seed, unsigned threads) {
    if (n < 1 || trials < 1 || k_max < 1)
        throw precondition_error("valuation_empirics: n, trials, k_max must be >= 1");
    const unsigned nt = std::max(1u, threads);
    std::vector<std::vector<std::uint64_t>> ge(nt, std::vector<std::uint64_t>(k_max + 1, 0));
    const rng::Key root = rng::Key{seed}.child(rng::kTagUniform);

    run_trials(trials, nt, [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
        auto& bins = ge[worker];
        for (std::uint64_t t = lo; t < hi; ++t) {
            rng::SplitMix64 gen(root.child(t));
            const auto v = valuation_int(Int(gen.one_to(n)), p);
            assert(v.has_value());
            const std::uint64_t vv = std::min<std::uint64_t>(*v, k_max);
            for (std::uint64_t k = 0; k <= vv; ++k) ++bins[k];
        }
    });

    std::vector<TailRow> rows(k_max + 1);
    for (unsigned k = 0; k <= k_max; ++k) {
        std::uint64_t c = 0;
        for (const auto& bins : ge) c += bins[k];
        rows[k].k = k;
        rows[k].p_hat = static_cast<double>(c) / static_cast<double>(trials);
        rows[k].std_error =
            std::sqrt(rows[k].p_hat * (1.0 - rows[k].p_hat) / static_cast<double>(trials));
    }
    return rows;
}

DistanceReport compare_distributions(const EmpiricalDist& a, const EmpiricalDist& b) {
    DistanceReport rep;
    const double ta = a.total ? static_cast<double>(a.total) : 1.0;
    const double tb = b.total ? static_cast<double>(b.total) : 1.0;
    auto ia = a.counts.begin();
    auto ib = b.counts.begin();
    double tv = 0, fa = 0, fb = 0, ks = 0;
    while (ia != a.counts.end() || ib != b.counts.end()) {
        int side;  // -1: a only, 0: both, +1: b only
        if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first))
            side = -1;
        else if (ia == a.counts.end() || ib->first < ia->first)
            side = +1;
        else
            side = 0;
        double pa = 0, pb = 0;
        if (side <= 0) {
            pa = static_cast<double>(ia->second) / ta;
            ++ia;
        }
        if (side >= 0) {
            pb = static_cast<double>(ib->second) / tb;
            ++ib;
        }
        tv += std::abs(pa - pb);
        fa += pa;
        fb += pb;
        ks = std::max(ks, std::abs(fa - fb));
    }
    rep.tv = tv / 2.0;
    rep.ks = ks;
    return rep;
}

double tv_against_pmf(const EmpiricalDist& a, const std::vector<std::pair<Rat, double>>& pmf) {
    double tv = 0;
    double covered_mass = 0;  // empirical mass on the pmf support
    double q_total = 0;
    for (const auto& [v, q] : pmf) {
        const double pa = a.mass_of(v);
        tv += std::abs(pa - q);
        covered_mass += pa;
        q_total += q;
    }
    tv += std::abs((1.0 - covered_mass) - (1.0 - q_total));  // rest class
    return tv / 2.0;
}

}  // namespace adelic
