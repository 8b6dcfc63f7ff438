#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rr/rr_engine.hpp"

namespace rr {

// Contents of a curve file:
//   field <p>
//   polynomial <f in t, x>   or   polynomial <F in X0, X1, X2>
// Blank lines and lines starting with '#' are ignored; "key: value" is accepted too.
struct CurveInput {
    Model model;
    std::optional<PreparedCurve> prepared;  // set for projective input
    std::string source;                     // polynomial as written
};

CurveInput parse_curve_text(const std::string& text);
CurveInput read_curve_file(const std::string& path);

// Base prime from "inf" or a polynomial in t (made monic, must be irreducible).
BasePrime parse_center(uint32_t p, const std::string& text);

// Entry point of rrcli. Returns the exit status: 0 success, 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rr
