#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adelic/errors.hpp"
#include "adelic/euclid.hpp"
#include "oracles.hpp"

using namespace adelic;

namespace {

MultiPoly pp(const std::string& text, std::size_t nvars) { return parse_poly(text, nvars); }

// Random univariate integer polynomial of degree <= max_deg (possibly lower).
MultiPoly random_uni(rng::SplitMix64& gen, std::uint32_t max_deg, std::int64_t coeff_bound) {
    return oracles::random_multipoly(gen, 1, max_deg, max_deg + 1, coeff_bound);
}

}  // namespace

TEST_CASE("sylvester_resultant: examples and sign convention") {
    CHECK(sylvester_resultant_z(pp("x1 - 1", 1), pp("x1 + 1", 1)) == 2);
    CHECK(sylvester_resultant_z(pp("x1^2 - 1", 1), pp("x1 - 1", 1)) == 0);

    // Res(x, x + c) over Z[c]: with g's rows on top the determinant is +c.
    UniPoly g, h;
    g.base_nvars = h.base_nvars = 1;
    g.c = {MultiPoly(1), MultiPoly::constant(1, 1)};              // x
    h.c = {MultiPoly::variable(1, 0), MultiPoly::constant(1, 1)}; // x + c
    CHECK(sylvester_resultant(g, h) == pp("x1", 1));

    CHECK_THROWS_AS(sylvester_resultant_z(pp("0", 1), pp("x1", 1)), precondition_error);
}

TEST_CASE("resultant multiplicativity in the second argument") {
    rng::SplitMix64 gen(rng::Key{55}.child(1));
    int done = 0;
    while (done < 100) {
        const MultiPoly g = random_uni(gen, 3, 9);
        const MultiPoly h1 = random_uni(gen, 3, 9);
        const MultiPoly h2 = random_uni(gen, 3, 9);
        if (g.is_constant() || h1.is_zero() || h2.is_zero()) continue;
        CHECK(sylvester_resultant_z(g, h1 * h2) ==
              sylvester_resultant_z(g, h1) * sylvester_resultant_z(g, h2));
        ++done;
    }
}

TEST_CASE("resultant vanishes exactly on shared factors") {
    rng::SplitMix64 gen(rng::Key{56}.child(2));
    for (int it = 0; it < 50; ++it) {
        const MultiPoly common = random_uni(gen, 2, 5);
        if (common.is_constant()) continue;
        const MultiPoly a = random_uni(gen, 2, 5);
        const MultiPoly b = random_uni(gen, 2, 5);
        CHECK(sylvester_resultant_z(common * a, common * b) == 0);
    }
}

TEST_CASE("bezout_certificate: worked examples") {
    {
        const auto cert = bezout_certificate({pp("x1", 1), pp("x1 + 2", 1)});
        CHECK(cert.constant == 2);
        CHECK(cert.cofactors[0] == pp("-1", 1));
        CHECK(cert.cofactors[1] == pp("1", 1));
    }
    {
        const auto cert = bezout_certificate({pp("6", 1), pp("10", 1)});
        CHECK(cert.constant == 16);
        CHECK(cert.cofactors[0] == pp("1", 1));
        CHECK(cert.cofactors[1] == pp("1", 1));
    }
    {
        const auto cert = bezout_certificate({pp("x1^2 + 1", 1), pp("x1", 1)});
        CHECK(cert.constant == 1);
        CHECK(cert.cofactors[0] == pp("1", 1));
        CHECK(cert.cofactors[1] == pp("-x1", 1));
    }
}

TEST_CASE("bezout_certificate: errors") {
    CHECK_THROWS_AS(bezout_certificate({pp("0", 1), pp("0", 1)}), precondition_error);
    CHECK_THROWS_AS(bezout_certificate({pp("x1^2 - 1", 1), pp("x1 - 1", 1)}),
                    precondition_error);  // common factor x1 - 1
    CHECK_THROWS_AS(bezout_certificate({pp("x1", 1)}), precondition_error);  // factor x1
}

TEST_CASE("bezout_certificate: random coprime tuples verify; planted factors detected") {
    rng::SplitMix64 gen(rng::Key{57}.child(3));
    int coprime_done = 0, planted_done = 0;
    while (coprime_done < 60) {
        const std::size_t m = 2 + gen.below(3);
        std::vector<MultiPoly> gs;
        std::vector<std::vector<Int>> dense;
        for (std::size_t i = 0; i < m; ++i) {
            const MultiPoly f = random_uni(gen, 5, 100);
            gs.push_back(f);
            std::vector<Int> z(f.degree_in(0) + 1, Int(0));
            for (const auto& [e, c] : f.terms()) z[e[0]] = c;
            dense.push_back(std::move(z));
        }
        if (univariate_gcd_degree(dense) >= 1) continue;  // exact coprimality gate
        const auto cert = bezout_certificate(gs);
        CHECK(cert.constant >= 1);
        MultiPoly acc(1);
        for (std::size_t i = 0; i < m; ++i) acc += cert.cofactors[i] * gs[i];
        CHECK(acc == MultiPoly::constant(1, cert.constant));
        ++coprime_done;
    }
    while (planted_done < 30) {
        const std::size_t m = 2 + gen.below(3);
        MultiPoly h = random_uni(gen, 2, 9);
        if (h.is_constant()) continue;
        std::vector<MultiPoly> gs;
        for (std::size_t i = 0; i < m; ++i) gs.push_back(h * random_uni(gen, 3, 9));
        CHECK_THROWS_AS(bezout_certificate(gs), precondition_error);
        ++planted_done;
    }
}

TEST_CASE("bezout: large-prime divisors of all values divide A (pigeonhole)") {
    rng::SplitMix64 gen(rng::Key{58}.child(4));
    const std::uint64_t n = 12;
    int done = 0;
    while (done < 25) {
        const std::size_t m = 2 + gen.below(2);
        std::vector<MultiPoly> gs;
        std::vector<std::vector<Int>> dense;
        for (std::size_t i = 0; i < m; ++i) {
            const MultiPoly f = random_uni(gen, 3, 30);
            gs.push_back(f);
            std::vector<Int> z(f.degree_in(0) + 1, Int(0));
            for (const auto& [e, c] : f.terms()) z[e[0]] = c;
            dense.push_back(std::move(z));
        }
        if (univariate_gcd_degree(dense) >= 1) continue;
        const auto cert = bezout_certificate(gs);
        for (std::uint64_t u = 1; u <= n; ++u) {
            Int g = 0;
            for (const auto& f : gs) g = boost::multiprecision::gcd(g, f.eval({Int(u)}));
            // Factor out primes >= n by trial division; each must divide A.
            Int v = g;
            for (Int d = 2; d * d <= v; ++d)
                while (v % d == 0) {
                    if (d >= Int(n)) CHECK(cert.constant % d == 0);
                    v /= d;
                }
            if (v > 1 && v >= Int(n)) CHECK(cert.constant % v == 0);
        }
        ++done;
    }
}

TEST_CASE("bezout: certificate size grows at most polynomially in n") {
    // Fit log A <= B log n + log B on families with coefficients <= M n^M
    // (M = 2) at n in {10, 100}, then check the fitted envelope at n = 1000
    // with a factor-4 safety margin.
    rng::SplitMix64 gen(rng::Key{59}.child(5));
    auto max_log_a = [&](std::uint64_t n) {
        const double bound = 2.0 * static_cast<double>(n) * static_cast<double>(n);
        double worst = 0;
        int done = 0;
        while (done < 15) {
            std::vector<MultiPoly> gs;
            std::vector<std::vector<Int>> dense;
            for (std::size_t i = 0; i < 2; ++i) {
                const MultiPoly f =
                    random_uni(gen, 2, static_cast<std::int64_t>(std::min(bound, 1e6)));
                gs.push_back(f);
                std::vector<Int> z(f.degree_in(0) + 1, Int(0));
                for (const auto& [e, c] : f.terms()) z[e[0]] = c;
                dense.push_back(std::move(z));
            }
            if (univariate_gcd_degree(dense) >= 1) continue;
            const auto cert = bezout_certificate(gs);
            worst = std::max(worst, std::log(cert.constant.convert_to<double>()));
            ++done;
        }
        return worst;
    };
    const double a10 = max_log_a(10), a100 = max_log_a(100), a1000 = max_log_a(1000);
    const double slope = std::max(1.0, (a100 - a10) / (std::log(100.0) - std::log(10.0)));
    const double b = 4.0 * slope;  // safety factor 4 on the fitted growth rate
    CHECK(a1000 <= b * std::log(1000.0) + std::log(b));
}

TEST_CASE("common_factor_witnesses: examples") {
    // Shared factor x: every witness vanishes.
    {
        UniPoly q1, q2;  // x*c1 and x*c2 over R = Z[c1, c2]
        q1.base_nvars = q2.base_nvars = 2;
        q1.c = {MultiPoly(2), MultiPoly::variable(2, 0)};
        q2.c = {MultiPoly(2), MultiPoly::variable(2, 1)};
        const auto w = common_factor_witnesses({q1, q2});
        REQUIRE(w.ws.size() == 1);  // m = 2 reduces to the single resultant
        CHECK(w.ws[0].is_zero());
    }
    // x and x+1: a nonzero constant witness appears.
    {
        UniPoly q1, q2;
        q1.base_nvars = q2.base_nvars = 0;
        q1.c = {MultiPoly(0), MultiPoly::constant(0, 1)};
        q2.c = {MultiPoly::constant(0, 1), MultiPoly::constant(0, 1)};
        const auto w = common_factor_witnesses({q1, q2});
        REQUIRE(w.ws.size() == 1);
        CHECK(w.ws[0] == MultiPoly::constant(0, 1));
    }
    // m = 3: witnesses of x, x+1, x+2 cannot all vanish.
    {
        auto mk = [](long c0) {
            UniPoly q;
            q.base_nvars = 0;
            q.c = {MultiPoly::constant(0, c0), MultiPoly::constant(0, 1)};
            return q;
        };
        const auto w = common_factor_witnesses({mk(0), mk(1), mk(2)});
        CHECK(w.ws.size() >= 2);
        bool any_nonzero = false;
        for (const auto& wk : w.ws) any_nonzero = any_nonzero || !wk.is_zero();
        CHECK(any_nonzero);
    }
    // m = 3 with the planted factor x: all witnesses vanish.
    {
        auto mkx = [](long lead) {
            UniPoly q;
            q.base_nvars = 0;
            q.c = {MultiPoly(0), MultiPoly::constant(0, lead)};
            return q;
        };
        const auto w = common_factor_witnesses({mkx(1), mkx(2), mkx(3)});
        bool all_zero = true;
        for (const auto& wk : w.ws) all_zero = all_zero && wk.is_zero();
        CHECK(all_zero);
    }
}

TEST_CASE("has_common_factor: examples") {
    CHECK(has_common_factor({pp("x1*x2", 3), pp("x1*x3 + x1", 3)}));
    CHECK_FALSE(has_common_factor({pp("x1", 2), pp("x2", 2)}));
    // The intro example is pairwise coprime.
    const MultiPoly f2 = pp("x1^2 + x2^2", 2);
    const MultiPoly f3 = pp("x1^3 + x2^3", 2);
    const MultiPoly f4 = pp("x1^4 + x2^4", 2);
    CHECK_FALSE(has_common_factor({f2, f3}));
    CHECK_FALSE(has_common_factor({f2, f4}));
    CHECK_FALSE(has_common_factor({f3, f4}));
    CHECK_FALSE(has_common_factor({f2, f3, f4}));
    CHECK_THROWS_AS(has_common_factor({pp("0", 2), pp("x1", 2)}), precondition_error);
}

TEST_CASE("has_common_factor: planted ground truth on random instances") {
    rng::SplitMix64 gen(rng::Key{60}.child(6));
    int planted = 0, coprime = 0;
    while (planted < 40) {
        const std::size_t s = 2 + gen.below(2);
        const std::size_t m = 2 + gen.below(2);
        const MultiPoly h = oracles::random_multipoly(gen, s, 2, 3, 5);
        if (h.is_constant()) continue;
        std::vector<MultiPoly> fs;
        for (std::size_t i = 0; i < m; ++i) {
            const MultiPoly r = oracles::random_multipoly(gen, s, 2, 3, 5);
            if (r.is_zero()) break;
            fs.push_back(h * r);
        }
        if (fs.size() != m) continue;
        CHECK(has_common_factor(fs));
        ++planted;
    }
    while (coprime < 40) {
        const std::size_t s = 2 + gen.below(2);
        std::vector<MultiPoly> fs{oracles::random_multipoly(gen, s, 3, 4, 7),
                                  oracles::random_multipoly(gen, s, 3, 4, 7)};
        // Certify coprimality independently: on a random line x = a t + b the
        // restrictions must have constant GCD (a common factor would survive
        // as a common univariate factor on every generic line).
        bool certified = false;
        for (int line = 0; line < 3 && !certified; ++line) {
            // One line x_i = a_i t + b_i shared by every polynomial.
            std::vector<MultiPoly> subs;
            for (std::size_t i = 0; i < s; ++i) {
                const long a = 1 + static_cast<long>(gen.below(5));
                const long b = static_cast<long>(gen.below(7));
                subs.push_back(Int(a) * MultiPoly::variable(1, 0) + MultiPoly::constant(1, b));
            }
            std::vector<std::vector<Int>> restricted;
            bool degenerate = false;
            for (const auto& f : fs) {
                MultiPoly acc(1);
                for (const auto& [e, c] : f.terms()) {
                    MultiPoly term = MultiPoly::constant(1, c);
                    for (std::size_t i = 0; i < s; ++i)
                        for (std::uint32_t k = 0; k < e[i]; ++k) term = term * subs[i];
                    acc += term;
                }
                if (acc.degree_in(0) != *f.total_degree()) degenerate = true;  // line lost degree
                std::vector<Int> z(acc.degree_in(0) + 1, Int(0));
                for (const auto& [e, c] : acc.terms()) z[e[0]] = c;
                restricted.push_back(std::move(z));
            }
            certified = !degenerate && univariate_gcd_degree(restricted) == 0;
        }
        if (!certified) continue;
        CHECK_FALSE(has_common_factor(fs));
        ++coprime;
    }
}
