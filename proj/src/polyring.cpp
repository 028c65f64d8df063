#include "adelic/polyring.hpp"

#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "adelic/errors.hpp"

namespace adelic {

MultiPoly MultiPoly::constant(std::size_t nvars, Int c) {
    MultiPoly f(nvars);
    if (c != 0) f.terms_.emplace(ExpVector(nvars, 0), std::move(c));
    return f;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t var) {
    assert(var < nvars);
    MultiPoly f(nvars);
    ExpVector e(nvars, 0);
    e[var] = 1;
    f.terms_.emplace(std::move(e), Int(1));
    return f;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && exp_sum(terms_.begin()->first) == 0;
}

Int MultiPoly::constant_value() const {
    assert(is_constant());
    return terms_.empty() ? Int(0) : terms_.begin()->second;
}

std::optional<std::uint64_t> MultiPoly::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    return exp_sum(terms_.rbegin()->first);  // grlex maximum carries the degree
}

std::uint64_t MultiPoly::degree_in(std::size_t var) const {
    assert(var < nvars_ || terms_.empty());
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_)
        if (e[var] > d) d = e[var];
    return d;
}

const Int& MultiPoly::coeff(const ExpVector& e) const {
    static const Int zero = 0;
    auto it = terms_.find(e);
    return it == terms_.end() ? zero : it->second;
}

void MultiPoly::add_term(const ExpVector& e, const Int& c) {
    assert(e.size() == nvars_);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    assert(nvars_ == o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    assert(nvars_ == o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    assert(a.nvars_ == b.nvars_);
    MultiPoly r(a.nvars_);
    ExpVector e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                if (e[i] < ea[i]) throw std::overflow_error("polynomial exponent overflow");
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly operator*(const Int& c, const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    if (c == 0) return r;
    for (const auto& [e, ca] : a.terms_) r.terms_.emplace(e, c * ca);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
    MultiPoly r = constant(nvars_, 1);
    MultiPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

Int MultiPoly::eval(std::span<const Int> point) const {
    if (point.size() != nvars_)
        throw precondition_error("eval: point dimension does not match variable count");
    Int acc = 0, t;
    for (const auto& [e, c] : terms_) {
        t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::top_homogeneous() const {
    if (terms_.empty())
        throw precondition_error("top_homogeneous: zero polynomial has no top part");
    const std::uint64_t d = *total_degree();
    MultiPoly r(nvars_);
    for (auto it = terms_.rbegin(); it != terms_.rend() && exp_sum(it->first) == d; ++it)
        r.terms_.emplace(it->first, it->second);
    return r;
}

MultiPoly MultiPoly::specialize_except_last(std::span<const Int> values) const {
    if (nvars_ == 0 || values.size() != nvars_ - 1)
        throw precondition_error("specialize_except_last: expected s-1 values");
    std::vector<std::vector<Int>> pows(nvars_ - 1);
    for (auto& p : pows) p.push_back(1);
    MultiPoly r(1);
    ExpVector e1(1);
    for (const auto& [e, c] : terms_) {
        Int t = c;
        for (std::size_t i = 0; i + 1 < nvars_; ++i) {
            auto& pi = pows[i];
            while (pi.size() <= e[i]) pi.push_back(pi.back() * values[i]);
            if (e[i]) t *= pi[e[i]];
        }
        e1[0] = e[nvars_ - 1];
        r.add_term(e1, t);
    }
    return r;
}

std::vector<MultiPoly> MultiPoly::coeffs_as_polys(std::size_t var) const {
    assert(var < nvars_);
    const std::uint64_t d = degree_in(var);
    std::vector<MultiPoly> out(static_cast<std::size_t>(d) + 1, MultiPoly(nvars_ - 1));
    ExpVector e(nvars_ ? nvars_ - 1 : 0);
    for (const auto& [full, c] : terms_) {
        std::size_t j = 0;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (i != var) e[j++] = full[i];
        out[full[var]].add_term(e, c);
    }
    return out;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        Int mag = negative ? Int(-c) : c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const bool has_vars = exp_sum(e) > 0;
        bool printed = false;
        if (mag != 1 || !has_vars) {
            os << mag;
            printed = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << "x" << (i + 1);
            if (e[i] >= 2) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

namespace {

// Recursive-descent parser for the polynomial grammar.
class PolyParser {
public:
    PolyParser(const std::string& text, std::size_t nvars) : text_(text), nvars_(nvars) {}

    MultiPoly parse() {
        MultiPoly f = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    MultiPoly expression() {
        MultiPoly acc = term();
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    MultiPoly factor() {
        bool neg = false;
        for (;;) {  // fold unary signs
            if (eat('-'))
                neg = !neg;
            else if (!eat('+'))
                break;
        }
        MultiPoly base = primary();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("exponent must be a nonnegative integer literal");
            base = base.pow(natural());
        }
        return neg ? -base : base;
    }

    MultiPoly primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expression();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly::constant(nvars_, integer());
        if (c == 'x') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected variable index after 'x'");
            const std::uint64_t idx = natural();
            if (idx < 1 || idx > nvars_) fail("variable index out of range");
            return MultiPoly::variable(nvars_, static_cast<std::size_t>(idx - 1));
        }
        fail("expected integer, variable or '('");
    }

    std::uint64_t natural() {
        skip_ws();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > 1'000'000) fail("exponent or index too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected digits");
        return v;
    }

    Int integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected integer literal");
        return Int(text_.substr(start, pos_ - start));
    }

    const std::string& text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, std::size_t nvars) {
    return PolyParser(text, nvars).parse();
}

void UniPoly::normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

UniPoly as_unipoly(const MultiPoly& f, std::size_t var) {
    UniPoly u;
    u.base_nvars = f.nvars() ? f.nvars() - 1 : 0;
    u.c = f.coeffs_as_polys(var);
    u.normalize();
    return u;
}

MultiPoly from_unipoly(const UniPoly& u, std::size_t var, std::size_t nvars) {
    assert(u.base_nvars + 1 == nvars && var < nvars);
    MultiPoly f(nvars);
    ExpVector e(nvars);
    for (std::size_t k = 0; k < u.c.size(); ++k) {
        for (const auto& [eb, c] : u.c[k].terms()) {
            std::size_t j = 0;
            for (std::size_t i = 0; i < nvars; ++i) e[i] = (i == var) ? static_cast<std::uint32_t>(k) : eb[j++];
            f.add_term(e, c);
        }
    }
    return f;
}

}  // namespace adelic
