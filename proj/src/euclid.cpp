#include "adelic/euclid.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "adelic/errors.hpp"
#include "adelic/rng.hpp"

namespace adelic {

MultiPoly divexact(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw std::logic_error("divexact: division by zero polynomial");
    MultiPoly rem = num;
    MultiPoly quot(num.nvars());
    ExpVector diff(num.nvars());
    while (!rem.is_zero()) {
        const auto& [er, cr] = *rem.terms().rbegin();
        const auto& [ed, cd] = *den.terms().rbegin();
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (er[i] < ed[i]) throw std::logic_error("divexact: inexact monomial division");
            diff[i] = er[i] - ed[i];
        }
        Int q, r;
        boost::multiprecision::divide_qr(cr, cd, q, r);
        if (r != 0) throw std::logic_error("divexact: inexact coefficient division");
        MultiPoly t(num.nvars());
        t.add_term(diff, q);
        quot += t;
        rem -= t * den;
    }
    return quot;
}

MultiPoly det_bareiss(std::vector<std::vector<MultiPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) throw std::logic_error("det_bareiss: empty matrix has no variable count");
    const std::size_t nv = m[0][0].nvars();
    MultiPoly prev = MultiPoly::constant(nv, 1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return MultiPoly(nv);  // singular
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divexact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = MultiPoly(nv);
        }
        prev = m[k][k];
    }
    return sign == 1 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

MultiPoly sylvester_resultant(const UniPoly& g, const UniPoly& h) {
    if (g.is_zero() || h.is_zero())
        throw precondition_error("sylvester_resultant: zero polynomial input");
    if (g.base_nvars != h.base_nvars)
        throw precondition_error("sylvester_resultant: mixed coefficient rings");
    const std::size_t dg = g.degree(), dh = h.degree(), n = dg + dh;
    const std::size_t nv = g.base_nvars;
    if (n == 0) return MultiPoly::constant(nv, 1);
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(nv)));
    for (std::size_t i = 0; i < dh; ++i)  // rows of g coefficients, descending
        for (std::size_t j = 0; j <= dg; ++j) m[i][i + j] = g.c[dg - j];
    for (std::size_t i = 0; i < dg; ++i)  // rows of h coefficients
        for (std::size_t j = 0; j <= dh; ++j) m[dh + i][i + j] = h.c[dh - j];
    return det_bareiss(std::move(m));
}

Int sylvester_resultant_z(const MultiPoly& g, const MultiPoly& h) {
    assert(g.nvars() == 1 && h.nvars() == 1);
    const MultiPoly r = sylvester_resultant(as_unipoly(g, 0), as_unipoly(h, 0));
    return r.constant_value();
}

// ---------------------------------------------------------------------------
// Bezout certificates over Z[x].

namespace {

using ZPoly = std::vector<Int>;  // dense, ascending, normalized (no zero lead)

void znormalize(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

bool zis_zero(const ZPoly& f) { return f.empty(); }
std::size_t zdeg(const ZPoly& f) { return f.empty() ? 0 : f.size() - 1; }

ZPoly zscale(const ZPoly& f, const Int& c) {
    if (c == 0) return {};
    ZPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i] * c;
    return r;
}

// c * x^k * f
ZPoly zshift_scale(const ZPoly& f, const Int& c, std::size_t k) {
    if (c == 0 || f.empty()) return {};
    ZPoly r(f.size() + k, Int(0));
    for (std::size_t i = 0; i < f.size(); ++i) r[i + k] = f[i] * c;
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    znormalize(r);
    return r;
}

MultiPoly zpoly_to_multipoly(const ZPoly& f) {
    MultiPoly out(1);
    ExpVector e(1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        e[0] = static_cast<std::uint32_t>(i);
        out.add_term(e, f[i]);
    }
    return out;
}

struct BezoutZ {
    std::vector<ZPoly> cofactors;
    Int constant;
};

BezoutZ bezout_rec(std::vector<ZPoly> gs) {
    const std::size_t m = gs.size();
    // All constant: signed sum, the inductive base.
    bool all_const = true;
    for (const auto& g : gs)
        if (zdeg(g) >= 1) {
            all_const = false;
            break;
        }
    if (all_const) {
        BezoutZ out;
        out.cofactors.assign(m, ZPoly{});
        out.constant = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Int v = zis_zero(gs[i]) ? Int(0) : gs[i][0];
            out.cofactors[i] = {v >= 0 ? Int(1) : Int(-1)};
            out.constant += abs(v);
        }
        return out;  // constant >= 1: an all-zero tuple never reaches here
    }
    // Early exit: a nonzero constant member certifies on its own.
    for (std::size_t i = 0; i < m; ++i) {
        if (!zis_zero(gs[i]) && zdeg(gs[i]) == 0) {
            BezoutZ out;
            out.cofactors.assign(m, ZPoly{});
            out.cofactors[i] = {gs[i][0] >= 0 ? Int(1) : Int(-1)};
            out.constant = abs(gs[i][0]);
            return out;
        }
    }
    // Eliminate the top-degree member against the lowest-degree other member.
    std::size_t hi = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (zdeg(gs[i]) > zdeg(gs[hi]) || (zis_zero(gs[hi]) && !zis_zero(gs[i]))) hi = i;
    std::size_t lo = m;
    for (std::size_t i = 0; i < m; ++i) {
        if (i == hi || zis_zero(gs[i])) continue;
        if (lo == m || zdeg(gs[i]) < zdeg(gs[lo])) lo = i;
    }
    if (lo == m)
        throw precondition_error(
            "common-factor-detected: elimination stranded a nonconstant survivor");
    const Int c = gs[hi].back();   // leading coefficient of the top member
    const Int d = gs[lo].back();   // leading coefficient of the pivot
    const std::size_t delta = zdeg(gs[hi]) - zdeg(gs[lo]);
    ZPoly reduced = zsub(zscale(gs[hi], d), zshift_scale(gs[lo], c, delta));
    assert(zdeg(reduced) < zdeg(gs[hi]) || zis_zero(reduced));
    std::vector<ZPoly> next = std::move(gs);
    next[hi] = std::move(reduced);
    BezoutZ sub = bezout_rec(std::move(next));
    // sub.cofactors[hi]*(d*g_hi - c*x^delta*g_lo) + sum_{k != hi} ... = A
    BezoutZ out;
    out.constant = std::move(sub.constant);
    out.cofactors = std::move(sub.cofactors);
    ZPoly tilde_hi = out.cofactors[hi];
    out.cofactors[hi] = zscale(tilde_hi, d);
    out.cofactors[lo] = zsub(out.cofactors[lo], zshift_scale(tilde_hi, c, delta));
    return out;
}

}  // namespace

BezoutCertificate bezout_certificate(const std::vector<MultiPoly>& gs) {
    if (gs.empty()) throw precondition_error("bezout_certificate: empty input");
    std::vector<ZPoly> zs;
    zs.reserve(gs.size());
    bool any_nonzero = false;
    for (const auto& g : gs) {
        if (g.nvars() != 1)
            throw precondition_error("bezout_certificate: univariate input required");
        ZPoly z(g.degree_in(0) + 1, Int(0));
        for (const auto& [e, c] : g.terms()) z[e[0]] = c;
        znormalize(z);
        any_nonzero = any_nonzero || !z.empty();
        zs.push_back(std::move(z));
    }
    if (!any_nonzero) throw precondition_error("bezout_certificate: all polynomials are zero");

    BezoutZ raw = bezout_rec(std::move(zs));
    BezoutCertificate cert;
    cert.constant = std::move(raw.constant);
    cert.cofactors.reserve(gs.size());
    for (auto& z : raw.cofactors) cert.cofactors.push_back(zpoly_to_multipoly(z));

    // The identity is checked before the certificate leaves the module.
    MultiPoly acc(1);
    for (std::size_t i = 0; i < gs.size(); ++i) acc += cert.cofactors[i] * gs[i];
    if (acc != MultiPoly::constant(1, cert.constant) || cert.constant < 1)
        throw std::logic_error("bezout_certificate: internal identity check failed");
    return cert;
}

// ---------------------------------------------------------------------------
// Witness sets and the recursive common-factor test.

WitnessSet common_factor_witnesses(const std::vector<UniPoly>& qs) {
    if (qs.size() < 2)
        throw precondition_error("common_factor_witnesses: need at least two polynomials");
    const std::size_t base = qs[0].base_nvars;
    std::size_t maxdeg = 0;
    for (const auto& q : qs) {
        if (q.is_zero()) throw precondition_error("common_factor_witnesses: zero polynomial");
        if (q.base_nvars != base)
            throw precondition_error("common_factor_witnesses: mixed coefficient rings");
        maxdeg = std::max(maxdeg, q.degree());
    }
    if (maxdeg == 0)
        throw precondition_error("common_factor_witnesses: all inputs constant in x");

    const std::size_t m = qs.size();
    if (m == 2) {
        WitnessSet w;
        w.ws.push_back(sylvester_resultant(qs[0], qs[1]));
        return w;
    }
    // Lift to R' = R[u_2..u_m] and take Res(Q_1, sum u_j Q_j).
    const std::size_t ext = base + (m - 1);
    auto lift = [&](const MultiPoly& f) {
        MultiPoly out(ext);
        ExpVector e(ext, 0);
        for (const auto& [eb, c] : f.terms()) {
            std::copy(eb.begin(), eb.end(), e.begin());
            out.add_term(e, c);
        }
        return out;
    };
    UniPoly q1;
    q1.base_nvars = ext;
    for (const auto& c : qs[0].c) q1.c.push_back(lift(c));
    q1.normalize();

    UniPoly mix;
    mix.base_nvars = ext;
    std::size_t dmix = 0;
    for (std::size_t j = 1; j < m; ++j) dmix = std::max(dmix, qs[j].degree());
    mix.c.assign(dmix + 1, MultiPoly(ext));
    for (std::size_t j = 1; j < m; ++j) {
        MultiPoly uj = MultiPoly::variable(ext, base + (j - 1));
        for (std::size_t k = 0; k < qs[j].c.size(); ++k) mix.c[k] += uj * lift(qs[j].c[k]);
    }
    mix.normalize();

    const MultiPoly res = sylvester_resultant(q1, mix);

    // Group the terms of the resultant by their u-monomial.
    std::map<ExpVector, MultiPoly, GrlexLess> groups;
    ExpVector ue(m - 1), be(base);
    for (const auto& [e, c] : res.terms()) {
        std::copy(e.begin(), e.begin() + base, be.begin());
        std::copy(e.begin() + base, e.end(), ue.begin());
        auto it = groups.find(ue);
        if (it == groups.end()) it = groups.emplace(ue, MultiPoly(base)).first;
        it->second.add_term(be, c);
    }
    WitnessSet w;
    if (groups.empty()) {
        w.ws.push_back(MultiPoly(base));  // identically zero resultant: L = 1, W_1 = 0
    } else {
        for (auto& [ue2, poly] : groups) w.ws.push_back(std::move(poly));
    }
    return w;
}

std::size_t univariate_gcd_degree(std::vector<std::vector<Int>> polys) {
    auto deg = [](const std::vector<Int>& f) { return f.empty() ? 0 : f.size() - 1; };
    auto normalize = [](std::vector<Int>& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    // Primitive pseudo-remainder sequence for a pair: cross-multiplication
    // reduction changes remainders by integer content only, which the
    // primitive-part normalization strips, so the GCD degree is exact.
    auto prim = [&](std::vector<Int> f) {
        Int g = 0;
        for (const auto& c : f) g = boost::multiprecision::gcd(g, c);
        if (g > 1)
            for (auto& c : f) c /= g;
        return f;
    };
    auto pair_gcd = [&](std::vector<Int> a, std::vector<Int> b) {
        normalize(a);
        normalize(b);
        while (!b.empty()) {
            while (!a.empty() && deg(a) >= deg(b)) {
                const std::size_t k = deg(a) - deg(b);
                const Int la = a.back(), lb = b.back();
                for (auto& c : a) c *= lb;
                for (std::size_t i = 0; i < b.size(); ++i) a[i + k] -= la * b[i];
                normalize(a);
                a = prim(std::move(a));
            }
            std::swap(a, b);
        }
        return prim(std::move(a));
    };
    std::vector<Int> g;
    for (auto& f : polys) {
        normalize(f);
        if (f.empty()) continue;
        g = g.empty() ? prim(std::move(f)) : pair_gcd(std::move(g), std::move(f));
        if (deg(g) == 0 && !g.empty()) return 0;
    }
    return g.empty() ? 0 : deg(g);
}

namespace {

bool witnesses_all_zero_at_point(const std::vector<MultiPoly>& fs, std::size_t var,
                                 std::span<const Int> point, bool& degree_dropped) {
    const std::size_t m = fs.size();
    std::vector<MultiPoly> spec;
    spec.reserve(m);
    degree_dropped = false;
    for (const auto& f : fs) {
        MultiPoly g = f.specialize_except_last(point);
        if (g.degree_in(0) != f.degree_in(var)) {
            degree_dropped = true;
            return false;
        }
        spec.push_back(std::move(g));
    }
    if (m == 2) return sylvester_resultant_z(spec[0], spec[1]) == 0;
    std::vector<UniPoly> qs;
    qs.reserve(m);
    for (const auto& g : spec) qs.push_back(as_unipoly(g, 0));
    for (const auto& w : common_factor_witnesses(qs).ws)
        if (!w.is_zero()) return false;
    return true;
}

void trace_note(std::vector<std::string>* trace, std::string msg) {
    if (trace) trace->push_back(std::move(msg));
}

}  // namespace

bool has_common_factor(const std::vector<MultiPoly>& fs, std::vector<std::string>* trace) {
    if (fs.empty()) throw precondition_error("has_common_factor: empty input");
    const std::size_t s = fs[0].nvars();
    for (const auto& f : fs) {
        if (f.is_zero()) throw precondition_error("has_common_factor: zero polynomial in input");
        if (f.nvars() != s) throw precondition_error("has_common_factor: mixed variable counts");
    }
    if (fs.size() == 1) {
        const bool r = *fs[0].total_degree() >= 1;
        trace_note(trace, std::string("single polynomial, degree ") + (r ? ">= 1" : "0"));
        return r;
    }
    for (const auto& f : fs) {
        if (f.is_constant()) {
            trace_note(trace, "nonzero constant member: no positive-degree factor");
            return false;
        }
    }
    if (s == 1) {
        std::vector<std::vector<Int>> dense;
        dense.reserve(fs.size());
        for (const auto& f : fs) {
            std::vector<Int> z(f.degree_in(0) + 1, Int(0));
            for (const auto& [e, c] : f.terms()) z[e[0]] = c;
            dense.push_back(std::move(z));
        }
        const std::size_t d = univariate_gcd_degree(std::move(dense));
        trace_note(trace, "univariate GCD degree " + std::to_string(d));
        return d >= 1;
    }

    const std::size_t var = s - 1;
    bool all_involve_var = true;
    for (const auto& f : fs)
        if (f.degree_in(var) == 0) {
            all_involve_var = false;
            break;
        }

    if (all_involve_var) {
        // A factor involving x_s must survive every degree-preserving
        // specialization of the other variables.
        const rng::Key base_key = rng::Key{0x636f6d666163ULL};
        bool resolved_no_factor = false;
        for (int attempt = 1; attempt <= 5; ++attempt) {
            rng::SplitMix64 gen(base_key.child(static_cast<std::uint64_t>(attempt)));
            std::vector<Int> point(s - 1);
            for (auto& x : point) x = Int(gen.one_to(1'000'000));
            bool dropped = false;
            const bool all_zero = witnesses_all_zero_at_point(fs, var, point, dropped);
            if (dropped) {
                trace_note(trace, "attempt " + std::to_string(attempt) + ": degree drop, retried");
                continue;
            }
            if (!all_zero) {
                trace_note(trace,
                           "attempt " + std::to_string(attempt) +
                               ": nonzero witness, no factor involving x" + std::to_string(s));
                resolved_no_factor = true;
                break;
            }
            trace_note(trace, "attempt " + std::to_string(attempt) + ": witness set vanished");
        }
        if (!resolved_no_factor) {
            // Common factor or persistent degeneration; resolved conservatively.
            trace_note(trace, "witness test vanished on all attempts: common factor");
            return true;
        }
    } else {
        trace_note(trace, "some member is free of x" + std::to_string(s) +
                              ": skipping the witness test");
    }

    // Factors not involving x_s divide every coefficient of every member.
    std::vector<MultiPoly> qs;
    for (const auto& f : fs)
        for (auto& q : f.coeffs_as_polys(var))
            if (!q.is_zero()) {
                if (q.is_constant()) {
                    trace_note(trace, "constant coefficient: no x-free factor");
                    return false;
                }
                qs.push_back(std::move(q));
            }
    trace_note(trace, "recursing on " + std::to_string(qs.size()) + " coefficients in " +
                          std::to_string(s - 1) + " variables");
    return has_common_factor(qs, trace);
}

}  // namespace adelic
