#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace skewfold {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Map-file / polynomial grammar errors, with 1-based position info.
struct parse_error : error {
    parse_error(const std::string& msg, int line, int column)
        : error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line(line), column(column) {}
    int line = 0;
    int column = 0;
};

// A stated hypothesis of the theory does not hold (degree condition,
// substitution/case mismatch, parameter out of range, ...).
struct hypothesis_error : error {
    using error::error;
};

// Non-integer power requested on the branch cut of the principal log.
struct branch_ambiguity_error : error {
    using error::error;
};

// Iteration failed to converge; carries the last iterate.
struct convergence_error : error {
    convergence_error(const std::string& msg, std::complex<double> z, std::complex<double> w)
        : error(msg), last_z(z), last_w(w) {}
    std::complex<double> last_z{0.0, 0.0};
    std::complex<double> last_w{0.0, 0.0};
};

}  // namespace skewfold
