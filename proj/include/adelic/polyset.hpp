#ifndef ADELIC_POLYSET_HPP
#define ADELIC_POLYSET_HPP

#include <string>
#include <vector>

#include "adelic/polyring.hpp"

namespace adelic {

// A polynomial input file: first effective line "vars=<s>", one polynomial
// per following line, '#' starts a comment, blank lines ignored.
struct PolySet {
    std::size_t nvars = 0;
    std::vector<MultiPoly> polys;
    std::vector<std::string> sources;  // the original text lines
};

PolySet parse_poly_set(const std::string& text);
PolySet load_poly_set(const std::string& path);

}  // namespace adelic

#endif
