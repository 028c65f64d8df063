#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adelic/errors.hpp"
#include "adelic/finitefield.hpp"
#include "adelic/primes.hpp"
#include "oracles.hpp"

using namespace adelic;

namespace {
MultiPoly pp(const std::string& text, std::size_t nvars) { return parse_poly(text, nvars); }
}  // namespace

TEST_CASE("primality: deterministic Miller-Rabin") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(9973));
    CHECK(is_prime_u64(2147483647ULL));          // 2^31 - 1
    CHECK(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));      // Carmichael
    CHECK_FALSE(is_prime_u64(3215031751ULL));
    CHECK_FALSE(is_prime_u64(25326001ULL));
    const auto primes = primes_up_to(1000);
    CHECK(primes.size() == 168);
    for (auto p : primes) CHECK(is_prime_u64(p));
}

TEST_CASE("reduce_mod_p: examples") {
    const PolyModP a = reduce_mod_p(pp("3*x1 + 7", 1), 3);
    REQUIRE(a.terms.size() == 1);  // 3*x1 vanishes
    CHECK(a.terms[0].first == ExpVector{0});
    CHECK(a.terms[0].second == 1);

    const PolyModP b = reduce_mod_p(pp("x1^2 + x2^2", 2), 5);
    REQUIRE(b.terms.size() == 2);
    CHECK(b.terms[0].second == 1);
    CHECK(b.terms[1].second == 1);

    CHECK(reduce_mod_p(pp("10*x1", 1), 2).is_zero());
    CHECK_THROWS_AS(reduce_mod_p(pp("x1", 1), 6), precondition_error);
}

TEST_CASE("reduction commutes with evaluation (homomorphism)") {
    rng::SplitMix64 gen(rng::Key{11}.child(2));
    const std::uint64_t ps[] = {2, 3, 5, 7, 13};
    for (int it = 0; it < 100; ++it) {
        const std::size_t s = 1 + gen.below(3);
        const MultiPoly f = oracles::random_multipoly(gen, s, 5, 6, 50);
        const std::uint64_t p = ps[gen.below(5)];
        const PolyModP fp = reduce_mod_p(f, p);
        std::vector<Int> x(s);
        std::vector<std::uint64_t> xm(s);
        for (std::size_t i = 0; i < s; ++i) {
            const std::int64_t v = static_cast<std::int64_t>(gen.below(2001)) - 1000;
            x[i] = Int(v);
            xm[i] = static_cast<std::uint64_t>(((v % static_cast<std::int64_t>(p)) + p) % p);
        }
        Int expected = f.eval(x) % Int(p);
        if (expected < 0) expected += p;
        CHECK(eval_mod_p(fp, xm) == expected.convert_to<std::uint64_t>());
    }
}

TEST_CASE("count_common_zeros: examples") {
    CHECK(count_common_zeros({pp("x1", 2), pp("x2", 2)}, 7).count == 1);
    CHECK(count_common_zeros({pp("x1^2 + x2^2", 2)}, 3).count == 1);
    CHECK(count_common_zeros({pp("x1*x2 - 1", 2)}, 5).count == 4);
}

TEST_CASE("count matches the independent naive oracle") {
    rng::SplitMix64 gen(rng::Key{5150}.child(1));
    const std::uint64_t ps[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    for (int it = 0; it < 60; ++it) {
        const std::size_t s = 1 + gen.below(3);
        const std::size_t m = 1 + gen.below(3);
        std::vector<MultiPoly> fs;
        for (std::size_t i = 0; i < m; ++i)
            fs.push_back(oracles::random_multipoly(gen, s, 4, 5, 20));
        const std::uint64_t p = ps[gen.below(std::size(ps))];
        CHECK(count_common_zeros(fs, p).count == oracles::naive_count_common_zeros(fs, p));
    }
}

TEST_CASE("count: parallel result is independent of thread count") {
    const std::vector<MultiPoly> fs{pp("x1^2 + x2^2 - 1", 2), pp("x1 + x2 + 1", 2)};
    CountOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const auto a = count_common_zeros(fs, 211, one);
    const auto b = count_common_zeros(fs, 211, four);
    CHECK(a.count == b.count);
}

TEST_CASE("count invariants: bounds, linear forms, monotonicity") {
    rng::SplitMix64 gen(rng::Key{5151}.child(2));
    // A single nonzero linear form has exactly p^(s-1) zeros.
    for (std::uint64_t p : {3ULL, 5ULL, 11ULL}) {
        CHECK(count_common_zeros({pp("x1 + 2*x2 - 1", 2)}, p).count == p);
        CHECK(count_common_zeros({pp("x1 + x2 + x3", 3)}, p).count == p * p);
    }
    // 0 <= s_p <= p^s and appending a polynomial never increases the count.
    for (int it = 0; it < 30; ++it) {
        const std::size_t s = 1 + gen.below(2);
        std::vector<MultiPoly> fs{oracles::random_multipoly(gen, s, 3, 4, 9)};
        const std::uint64_t p = 2 + gen.below(12);
        if (!is_prime_u64(p)) continue;
        const auto c1 = count_common_zeros(fs, p).count;
        CHECK(c1 <= int_pow(Int(p), s));
        fs.push_back(oracles::random_multipoly(gen, s, 3, 4, 9));
        CHECK(count_common_zeros(fs, p).count <= c1);
    }
}

TEST_CASE("budget: p^s over budget is rejected") {
    CountOptions opts;
    opts.budget = 1000;
    CHECK_THROWS_AS(count_common_zeros({pp("x1 + x2", 2)}, 101, opts), budget_error);
    opts.budget = 101 * 101;
    CHECK(count_common_zeros({pp("x1 + x2", 2)}, 101, opts).count == 101);
}

TEST_CASE("lang_weil_residual: examples") {
    // s_p = p - 1 for the hyperbola, so the residual is -1/sqrt(p).
    const double r101 = lang_weil_residual({pp("x1*x2 - 1", 2)}, 101, 1, 1);
    CHECK(r101 == doctest::Approx(-1.0 / std::sqrt(101.0)).epsilon(1e-12));
    CHECK(r101 == doctest::Approx(-0.0995).epsilon(1e-3));

    CHECK(lang_weil_residual({pp("x1", 2), pp("x2", 2)}, 13, 0, 1) == 0.0);

    // p = 13 = 1 mod 4: the conic splits into two lines, s_p = 2p - 1 = 25.
    CHECK(count_common_zeros({pp("x1^2 + x2^2", 2)}, 13).count == 25);
    const double conic = lang_weil_residual({pp("x1^2 + x2^2", 2)}, 13, 1, 2);
    CHECK(conic == doctest::Approx((25.0 - 26.0) / std::sqrt(13.0)).epsilon(1e-12));
}

TEST_CASE("lang_weil: residuals stay bounded for a coprime system") {
    // s_p/p^(s-2) bounded over the computed range (here s = 2, so s_p itself).
    for (std::uint64_t p : primes_up_to(200)) {
        const auto c = count_common_zeros({pp("x1", 2), pp("x2", 2)}, p).count;
        CHECK(c <= 4);  // dimension 0 system
    }
}
