#pragma once

#include <gmpxx.h>

#include <string>

#include "diolab/errors.hpp"

namespace dio {

// Closed interval with exact rational endpoints. All operations round
// outward, so the true value of a computation is always contained in the
// reported interval.
struct Interval {
    mpq_class lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(mpq_class l, mpq_class h);
    static Interval point(const mpq_class& v) { return Interval(v, v); }

    mpq_class width() const { return hi - lo; }
    mpq_class mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const mpq_class& c, const Interval& a);

Interval hull(const Interval& a, const Interval& b);
Interval imin(const Interval& a, const Interval& b);
Interval imax(const Interval& a, const Interval& b);

// Reciprocal; requires 0 not in [lo, hi].
Interval inv(const Interval& a);

// Integer power, e >= 0; exact.
Interval pow_int(const Interval& a, unsigned long e);

// a^e for a >= 0 (lo clamped to 0) and a rational exponent range
// [e_lo, e_hi] with e_lo > 0. Bounds are computed with MPFR directed
// rounding at `bits` precision and are therefore certified enclosures.
Interval pow_frac(const Interval& a, const mpq_class& e_lo, const mpq_class& e_hi,
                  long bits);
inline Interval pow_frac(const Interval& a, const mpq_class& e, long bits) {
    return pow_frac(a, e, e, bits);
}

// Enclosure of the sup-norm distance from any point of [lo, hi] to the
// nearest integer. Result lies in [0, 1/2].
Interval dist_to_nearest_int(const Interval& a);

// Exact distance from a rational to the nearest integer.
mpq_class rat_dist_to_int(const mpq_class& v);

// Floor / nearest integer of a rational. Nearest rounds half to even.
mpz_class rat_floor(const mpq_class& v);
mpz_class rat_nearest(const mpq_class& v);

// Exact e-th root of a rational, if it exists.
bool exact_root(const mpq_class& v, unsigned long e, mpq_class& out);

std::string to_decimal_string(const mpq_class& v, int digits);

}  // namespace dio
