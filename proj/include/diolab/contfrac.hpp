#pragma once

#include <functional>
#include <vector>

#include "diolab/real.hpp"

namespace dio {

// [a0; a1, a2, ...] with a_n >= 1 for n >= 1. Finite expansions denote
// rationals (canonical form: last quotient >= 2 unless the expansion is a
// single term); eventually periodic ones denote quadratic irrationals;
// rule-generated ones are arbitrary infinite expansions.
class ContinuedFraction {
public:
    enum class Kind { Finite, Periodic, Generated };
    using Rule = std::function<mpz_class(long)>;  // n >= 1 -> a_n

    static ContinuedFraction finite(std::vector<mpz_class> terms);
    // prefix holds a0..a_{m}; period is repeated from index m+1 on.
    static ContinuedFraction periodic(std::vector<mpz_class> prefix,
                                      std::vector<mpz_class> period);
    static ContinuedFraction generated(mpz_class a0, Rule rule);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    long length() const;           // finite only
    mpz_class quotient(long n) const;  // n >= 0

    // The real number this expansion denotes: exact for finite, refinable
    // via convergents otherwise.
    Real value() const;

    std::string to_literal() const;  // cf:[...] form

private:
    Kind kind_ = Kind::Finite;
    std::vector<mpz_class> prefix_;  // finite terms, or the pre-period
    std::vector<mpz_class> period_;
    Rule rule_;
};

struct Convergent {
    mpz_class p, q;
    long index;
};

// First `count` convergents p_n/q_n via the standard recurrence.
std::vector<Convergent> convergents(const ContinuedFraction& cf, long count);

// First `count` partial quotients of x, each certified via interval
// comparison. Rational x terminates in canonical form (possibly with
// fewer than `count` quotients).
ContinuedFraction cf_expand(const Real& x, long count, const PrecisionContext& ctx = {});

// Infinite expansion [0; a_1, a_2, ...] with all a_n <= bound, following a
// deterministic schedule.
ContinuedFraction make_bounded_quotient(long bound, ContinuedFraction::Rule rule);
ContinuedFraction::Rule constant_rule(long a);
ContinuedFraction::Rule alternating_rule(long bound);  // 1, bound, 1, bound, ...

ContinuedFraction golden_ratio_cf();  // [1; (1)]
ContinuedFraction sqrt2_cf();         // [1; (2)]

// x = sum_j 2^{-g(j)} together with its designated good denominators
// n_j = 2^{g(j)}. Requires g strictly increasing with g(j+1) >= 2 g(j), so
// the designated approximations decay geometrically.
struct LiouvilleNumber {
    Real value;
    std::function<long(long)> gap;  // g(j), j >= 0

    mpz_class denominator(long j) const;  // 2^{g(j)}
    // Certified bound ||n_j x|| <= 2^{g(j) - g(j+1) + 1}.
    mpq_class dist_bound(long j) const;
    // Certified enclosure of ||n_j x|| itself.
    Real dist(long j) const;
};

LiouvilleNumber make_liouville(std::function<long(long)> gap_schedule, long check_depth = 12);
LiouvilleNumber liouville_factorial();  // g(j) = (j+1)!
LiouvilleNumber liouville_pow2();       // g(j) = 2^{j+1}

}  // namespace dio
