#pragma once

#include <string>

#include "skewfold/poly.hpp"

namespace skewfold {

// Text grammar for input polynomials: terms `c*z^i*w^j` joined by `+`/`-`,
// complex literals `(a+bi)`, whitespace insensitive, exponents non-negative
// integers. The `*` between factors may be omitted.
Poly parse_polynomial(const std::string& text);

// Map files assign both coordinates, e.g. "p = z^3; q = z^3*w^2 + z^5".
// Statements are separated by `;` or newlines; `#` starts a comment.
SkewProduct parse_map(const std::string& text);

SkewProduct parse_map_file(const std::string& path);

}  // namespace skewfold
