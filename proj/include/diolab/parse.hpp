#pragma once

#include <string>
#include <vector>

#include "diolab/contfrac.hpp"
#include "diolab/psi.hpp"

namespace dio {

// Number literals: rat:p/q, cf:[a0;a1,...], cf:[a0;a1,(b1,...,bm)],
// dec:<midpoint>~<radius>. Bare integers, fractions, and decimals are also
// accepted where a number is expected (they denote exact rationals).
Real parse_number(const std::string& s);

// Exact rational from p/q, an integer, or a decimal string.
mpq_class parse_rational(const std::string& s);

// cf:[...] literal (finite or eventually periodic).
ContinuedFraction parse_cf_literal(const std::string& s);

// A vector is either "(lit,lit,...)" or a single number literal.
std::vector<Real> parse_vector(const std::string& s);
TorusVector parse_torus(const std::string& s);

// psi literals: pow:c,alpha | const:c | recip:[k1,k2,...] |
// killer:x;y;ell | powof:<psi>^t
PsiSpec parse_psi(const std::string& s, const PrecisionContext& ctx = {});

// Comma-separated increasing positive integers, optionally bracketed.
std::vector<mpz_class> parse_schedule(const std::string& s);

mpz_class parse_integer(const std::string& s);

}  // namespace dio
