#ifndef MFKIT_EXACTALG_PARSE_HPP
#define MFKIT_EXACTALG_PARSE_HPP

#include <string>
#include <vector>

#include "mfkit/exactalg/poly.hpp"

namespace mfkit {

struct ParseOptions {
    Field field;
    // Variables placed first, in this order. Others follow in order of appearance.
    std::vector<std::string> vars;
    // When false, any variable outside `vars` is an error.
    bool allow_new_vars = true;
};

// Grammar: identifiers [a-zA-Z][a-zA-Z0-9_]*, integer and a/b literals,
// + - * ^ (non-negative integer exponents) and parentheses.
// Syntax errors throw Error(ErrorCode::Parse) carrying line and column.
MultiPoly parse_poly(const std::string& src, const ParseOptions& opts = {});

// Parses several polynomials into one shared ring.
std::vector<MultiPoly> parse_polys(const std::vector<std::string>& srcs, const ParseOptions& opts = {});

// Parses into an existing ring; unknown variables are errors.
MultiPoly parse_poly_in(const std::string& src, const RingPtr& ring);

} // namespace mfkit

#endif
