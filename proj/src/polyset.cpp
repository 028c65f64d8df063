#include "adelic/polyset.hpp"

#include <fstream>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

std::string strip(const std::string& line) {
    std::string s = line;
    if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

PolySet parse_poly_set(const std::string& text) {
    PolySet set;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_vars = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = strip(line);
        if (body.empty()) continue;
        if (!have_vars) {
            if (body.rfind("vars=", 0) != 0)
                throw parse_error("polynomial file must start with 'vars=<s>'", lineno);
            try {
                const long v = std::stol(body.substr(5));
                if (v < 1) throw std::invalid_argument("nonpositive");
                set.nvars = static_cast<std::size_t>(v);
            } catch (const std::exception&) {
                throw parse_error("invalid variable count in 'vars=' line", lineno);
            }
            have_vars = true;
            continue;
        }
        try {
            set.polys.push_back(parse_poly(body, set.nvars));
            set.sources.push_back(body);
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what(), lineno);
        }
    }
    if (!have_vars) throw parse_error("empty polynomial file", lineno);
    if (set.polys.empty()) throw parse_error("no polynomials in file", lineno);
    return set;
}

PolySet load_poly_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open polynomial file: " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_poly_set(buf.str());
}

}  // namespace adelic
