#pragma once

#include <optional>
#include <vector>

#include "diolab/torus.hpp"

namespace dio {

// A pair of rational vectors, entries in lowest terms.
struct RationalPair {
    std::vector<mpq_class> x, y;

    RationalPair(std::vector<mpq_class> xv, std::vector<mpq_class> yv);
    static RationalPair from_torus(const TorusVector& x, const TorusVector& y);
    int dim() const { return (int)x.size(); }
};

// Does some n in Z make every coordinate n x_i + y_i integral? Decided by
// solving the per-coordinate linear congruences and combining with CRT.
// When solvable the solutions form the arithmetic progression
// n == least_n (mod modulus), with least_n the least positive solution.
struct IntegerPointResult {
    bool exists = false;
    mpz_class least_n, modulus;
};

IntegerPointResult contains_integer_point(const RationalPair& pair);

// The orbit {n x + y (mod 1)} is periodic; period is the lcm of the
// x-denominators and the minimum distance is realized within one period.
struct OrbitSummary {
    mpz_class period;
    bool hit_zero = false;
    std::optional<mpz_class> first_zero_n;
    mpq_class min_dist;  // min over one period; 0 iff hit_zero

    // min_{n >= ell} ||n x + y||: equal to min_dist for every ell, since
    // the zero/minimum recurs along an arithmetic progression.
    mpq_class min_dist_from(const mpz_class& ell) const;
};

OrbitSummary orbit_summary(const RationalPair& pair);

// true iff S_ell(x, y) is finite, which for rational input holds iff the
// orbit hits zero (independent of ell).
bool s_finite(const RationalPair& pair, const mpz_class& ell);

enum class PhiMembership {
    Member,
    NonMember,       // exact, d = 1 only
    Unresolved,      // d > 1 and the integer-point condition fails: the
                     // converse is only conjectured, so no verdict
};

PhiMembership phi_membership_rational(const RationalPair& pair);

}  // namespace dio
