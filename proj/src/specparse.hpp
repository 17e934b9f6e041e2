#pragma once

#include <string>

#include "cpoly.hpp"
#include "scalarfn.hpp"

namespace pqhyp {

// Function mini-language:
//   power(p) | exp | plog(p) | hariya(<fn>, r) | linear(a,b) | linlog(a)
// and the pair-level generator form gen(h=<fn>, phi=<fn>).
ScalarFn parse_fn(const std::string& spec);

// Builds the pair from textual specs. A gen(...) spec defines both halves and
// must appear as P with Q left empty; otherwise an empty Q means Q = P.
FnPair parse_pair(const std::string& p_spec, const std::string& q_spec);

// Polynomial literals: terms joined by +/-, each a product of numeric or
// (re,im) coefficients and at most one basis atom. Atoms: H3, H{2}, H{1,2}
// (Hermite) or x, x^3, x2^4 products (monomial). The basis is inferred from
// the atoms; the hint only disambiguates constant-only input and conflicts
// with inferred atoms are errors.
enum class BasisHint { Auto, Monomial, Hermite };
CPoly parse_poly(const std::string& text, BasisHint hint = BasisHint::Auto);

}  // namespace pqhyp
