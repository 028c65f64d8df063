#ifndef ADELIC_NUMERIC_HPP
#define ADELIC_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace adelic {

inline constexpr const char* kVersion = "0.1.0";

// Exact integers and rationals; all polynomial and divisor arithmetic is exact.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// High-precision reals for zeta values and Euler products (~166 bits).
using Real = boost::multiprecision::cpp_bin_float_50;

inline double to_double(const Real& x) { return x.convert_to<double>(); }
inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline Int int_pow(Int base, std::uint64_t e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// Exact dyadic rational equal to the given double. Finite inputs only.
Rat rat_from_double(double x);

inline bool is_integer(const Rat& x) { return boost::multiprecision::denominator(x) == 1; }

std::string rat_to_string(const Rat& x);  // "7" or "3/4"

}  // namespace adelic

#endif
