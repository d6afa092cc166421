#include "diolab/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace dio {

Interval::Interval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw DomainError("interval endpoints out of order");
}

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

Interval operator*(const Interval& a, const Interval& b) {
    mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    mpq_class lo = std::min(std::min(p1, p2), std::min(p3, p4));
    mpq_class hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return Interval(lo, hi);
}

Interval operator*(const mpq_class& c, const Interval& a) {
    if (c >= 0) return Interval(c * a.lo, c * a.hi);
    return Interval(c * a.hi, c * a.lo);
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval imin(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}

Interval imax(const Interval& a, const Interval& b) {
    return Interval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval inv(const Interval& a) {
    if (a.contains_zero()) throw DomainError("reciprocal of interval containing zero");
    return Interval(mpq_class(1) / a.hi, mpq_class(1) / a.lo);
}

Interval pow_int(const Interval& a, unsigned long e) {
    if (e == 0) return Interval::point(1);
    auto qpow = [](const mpq_class& v, unsigned long k) {
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), v.get_num_mpz_t(), k);
        mpz_pow_ui(r.get_den_mpz_t(), v.get_den_mpz_t(), k);
        r.canonicalize();
        return r;
    };
    mpq_class p1 = qpow(a.lo, e), p2 = qpow(a.hi, e);
    if (e % 2 == 1 || a.lo >= 0) return Interval(std::min(p1, p2), std::max(p1, p2));
    if (a.hi <= 0) return Interval(std::min(p1, p2), std::max(p1, p2));
    // even power of an interval straddling zero
    return Interval(0, std::max(p1, p2));
}

namespace {

// One directed-rounding evaluation of base^exp.
mpq_class mpfr_pow_dir(const mpq_class& base, const mpq_class& exp, long bits,
                       mpfr_rnd_t rnd_exp, mpfr_rnd_t rnd) {
    mpfr_t b, e, r;
    mpfr_init2(b, bits);
    mpfr_init2(e, bits);
    mpfr_init2(r, bits);
    mpfr_set_q(b, base.get_mpq_t(), rnd);
    mpfr_set_q(e, exp.get_mpq_t(), rnd_exp);
    mpfr_pow(r, b, e, rnd);
    mpq_class out;
    if (mpfr_number_p(r)) {
        mpfr_get_q(out.get_mpq_t(), r);
    } else {
        out = (rnd == MPFR_RNDU) ? mpq_class(1) << 62 : mpq_class(0);
    }
    mpfr_clear(b);
    mpfr_clear(e);
    mpfr_clear(r);
    return out;
}

}  // namespace

Interval pow_frac(const Interval& a, const mpq_class& e_lo, const mpq_class& e_hi,
                  long bits) {
    if (e_lo <= 0) throw DomainError("pow_frac requires a positive exponent");
    mpq_class lo = a.lo < 0 ? mpq_class(0) : a.lo;
    mpq_class hi = a.hi < 0 ? mpq_class(0) : a.hi;
    // integer exponent point: delegate to the exact path
    if (e_lo == e_hi && e_lo.get_den() == 1 && e_lo.get_num().fits_ulong_p()) {
        return pow_int(Interval(lo, hi), e_lo.get_num().get_ui());
    }
    mpq_class rlo, rhi;
    if (lo == 0) {
        rlo = 0;
    } else {
        rlo = std::min(mpfr_pow_dir(lo, e_lo, bits, MPFR_RNDD, MPFR_RNDD),
                       mpfr_pow_dir(lo, e_hi, bits, MPFR_RNDU, MPFR_RNDD));
    }
    if (hi == 0) {
        rhi = 0;
    } else {
        rhi = std::max(mpfr_pow_dir(hi, e_lo, bits, MPFR_RNDD, MPFR_RNDU),
                       mpfr_pow_dir(hi, e_hi, bits, MPFR_RNDU, MPFR_RNDU));
    }
    if (rlo > rhi) std::swap(rlo, rhi);
    return Interval(rlo, rhi);
}

mpz_class rat_floor(const mpq_class& v) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return q;
}

mpz_class rat_nearest(const mpq_class& v) {
    mpz_class fl = rat_floor(v);
    mpq_class frac = v - mpq_class(fl);
    if (frac < mpq_class(1, 2)) return fl;
    if (frac > mpq_class(1, 2)) return fl + 1;
    // exact half: round to even
    return mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
}

mpq_class rat_dist_to_int(const mpq_class& v) {
    mpq_class frac = v - mpq_class(rat_floor(v));
    mpq_class other = mpq_class(1) - frac;
    return frac < other ? frac : other;
}

Interval dist_to_nearest_int(const Interval& a) {
    if (a.width() >= 1) return Interval(0, mpq_class(1, 2));
    mpq_class dlo = rat_dist_to_int(a.lo), dhi = rat_dist_to_int(a.hi);
    mpq_class rlo = std::min(dlo, dhi), rhi = std::max(dlo, dhi);
    // does [lo, hi] contain an integer? then the min distance is 0
    mpz_class c = rat_floor(a.hi);
    if (mpq_class(c) >= a.lo) rlo = 0;
    // does it contain a half-integer k + 1/2? then the max distance is 1/2
    mpz_class k = rat_floor(a.hi - mpq_class(1, 2));
    if (mpq_class(k) + mpq_class(1, 2) >= a.lo && mpq_class(k) + mpq_class(1, 2) <= a.hi)
        rhi = mpq_class(1, 2);
    return Interval(rlo, rhi);
}

bool exact_root(const mpq_class& v, unsigned long e, mpq_class& out) {
    if (v < 0) return false;
    if (e == 1) {
        out = v;
        return true;
    }
    mpz_class num_r, den_r;
    int exact_n = mpz_root(num_r.get_mpz_t(), v.get_num_mpz_t(), e);
    int exact_d = mpz_root(den_r.get_mpz_t(), v.get_den_mpz_t(), e);
    if (!exact_n || !exact_d) return false;
    out = mpq_class(num_r) / mpq_class(den_r);
    return true;
}

std::string to_decimal_string(const mpq_class& v, int digits) {
    mpq_class a = v;
    bool neg = a < 0;
    if (neg) a = -a;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpq_class scaled = a * mpq_class(scale);
    mpz_class rounded = rat_nearest(scaled);
    std::string s = rounded.get_str();
    if ((int)s.size() <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
    s.insert(s.size() - digits, ".");
    if (neg) s = "-" + s;
    return s;
}

}  // namespace dio
