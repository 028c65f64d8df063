#include "adelic/numeric.hpp"

#include <cassert>
#include <cmath>

namespace adelic {

Rat rat_from_double(double x) {
    assert(std::isfinite(x));
    if (x == 0.0) return Rat(0);
    int exp = 0;
    // 53-bit integer mantissa m with x = m * 2^exp, exactly.
    double m = std::frexp(x, &exp);
    for (int i = 0; i < 53 && m != std::floor(m); ++i) {
        m *= 2.0;
        --exp;
    }
    Rat r(Int(static_cast<long long>(m)));
    if (exp > 0)
        r *= Rat(Int(1) << exp);
    else if (exp < 0)
        r /= Rat(Int(1) << -exp);
    return r;
}

std::string rat_to_string(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace adelic
