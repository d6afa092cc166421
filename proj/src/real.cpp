#include "diolab/real.hpp"

#include <sstream>

namespace dio {

Real::Real(mpq_class v) : rep_(std::make_shared<Rep>()) {
    v.canonicalize();
    rep_->exact = std::move(v);
}

Real Real::from_refiner(Refiner fn, std::string label) {
    Real r((mpq_class(0)));
    r.rep_ = std::make_shared<Rep>();
    r.rep_->refine = std::move(fn);
    r.rep_->label = std::move(label);
    return r;
}

Real Real::from_interval(Interval iv, std::string label) {
    if (iv.is_point()) {
        Real r(iv.lo);
        return r;
    }
    return from_refiner([iv](long) { return iv; }, std::move(label));
}

const mpq_class& Real::exact() const {
    if (!rep_->exact) throw DomainError("Real is not exact: " + rep_->label);
    return *rep_->exact;
}

Interval Real::enclosure(long bits) const {
    if (rep_->exact) return Interval::point(*rep_->exact);
    std::lock_guard<std::mutex> lock(rep_->mu);
    if (rep_->cached_bits >= bits) return rep_->cache;
    Interval iv = rep_->refine(bits);
    if (rep_->cached_bits >= 0) {
        // enclosures of the same value must intersect; keep the tighter one
        iv = Interval(std::max(iv.lo, rep_->cache.lo), std::min(iv.hi, rep_->cache.hi));
    }
    rep_->cache = iv;
    rep_->cached_bits = bits;
    return iv;
}

Real Real::operator-() const {
    if (is_exact()) return Real(mpq_class(-exact()));
    Real self = *this;
    return from_refiner([self](long bits) { return -self.enclosure(bits); },
                        "-(" + label() + ")");
}

Real Real::abs() const {
    if (is_exact()) {
        mpq_class v = exact();
        if (v < 0) v = -v;
        return Real(v);
    }
    Real self = *this;
    return from_refiner(
        [self](long bits) {
            Interval iv = self.enclosure(bits);
            if (iv.lo >= 0) return iv;
            if (iv.hi <= 0) return -iv;
            return Interval(0, std::max(mpq_class(-iv.lo), iv.hi));
        },
        "abs");
}

Real operator+(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Real(mpq_class(a.exact() + b.exact()));
    return Real::from_refiner(
        [a, b](long bits) { return a.enclosure(bits + 2) + b.enclosure(bits + 2); },
        "sum");
}

Real operator-(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Real(mpq_class(a.exact() - b.exact()));
    return Real::from_refiner(
        [a, b](long bits) { return a.enclosure(bits + 2) - b.enclosure(bits + 2); },
        "diff");
}

Real operator*(const Real& a, const Real& b) {
    if (a.is_exact() && b.is_exact()) return Real(mpq_class(a.exact() * b.exact()));
    return Real::from_refiner(
        [a, b](long bits) { return a.enclosure(2 * bits + 4) * b.enclosure(2 * bits + 4); },
        "prod");
}

Real operator*(const mpz_class& c, const Real& a) {
    if (a.is_exact()) return Real(mpq_class(c * a.exact()));
    long shift = mpz_sizeinbase(c.get_mpz_t(), 2);
    return Real::from_refiner(
        [c, a, shift](long bits) { return mpq_class(c) * a.enclosure(bits + shift + 2); },
        "scaled");
}

Real Real::inverse() const {
    if (is_exact()) {
        if (exact() == 0) throw DomainError("division by zero");
        return Real(mpq_class(1 / exact()));
    }
    Real self = *this;
    return from_refiner(
        [self](long bits) {
            long b = bits;
            for (;;) {
                Interval iv = self.enclosure(b);
                if (!iv.contains_zero()) return inv(iv);
                if (b > (1L << 22)) throw PrecisionError("reciprocal: operand not separated from zero");
                b *= 2;
            }
        },
        "inv");
}

Real Real::pow(const mpq_class& e) const {
    if (e <= 0) throw DomainError("pow requires a positive exponent");
    if (e.get_den() == 1 && e.get_num().fits_ulong_p()) {
        unsigned long k = e.get_num().get_ui();
        if (is_exact()) {
            Interval r = pow_int(Interval::point(exact()), k);
            return Real(r.lo);
        }
        Real self = *this;
        return from_refiner([self, k](long bits) { return pow_int(self.enclosure(bits + 2), k); },
                            "pow_int");
    }
    if (is_exact() && e.get_num().fits_ulong_p() && e.get_den().fits_ulong_p()) {
        // x^(p/q): exact when the q-th root of x^p is rational
        Interval xp = pow_int(Interval::point(exact()), e.get_num().get_ui());
        mpq_class root;
        if (exact_root(xp.lo, e.get_den().get_ui(), root)) return Real(root);
    }
    Real self = *this;
    return from_refiner(
        [self, e](long bits) { return pow_frac(self.enclosure(bits + 4), e, bits + 8); },
        "pow");
}

Real Real::pow(const Real& e) const {
    if (e.is_exact()) return pow(e.exact());
    Real self = *this;
    return from_refiner(
        [self, e](long bits) {
            Interval ei = e.enclosure(bits + 4);
            if (ei.lo <= 0) throw DomainError("pow requires a positive exponent");
            return pow_frac(self.enclosure(bits + 4), ei.lo, ei.hi, bits + 8);
        },
        "pow");
}

Real Real::dist_to_int() const {
    if (is_exact()) return Real(rat_dist_to_int(exact()));
    Real self = *this;
    return from_refiner(
        [self](long bits) { return dist_to_nearest_int(self.enclosure(bits + 2)); },
        "dist");
}

std::string Real::describe(int digits) const {
    if (is_exact()) {
        std::ostringstream os;
        os << exact();
        return os.str();
    }
    Interval iv = enclosure(64 + 4 * digits);
    return to_decimal_string(iv.mid(), digits) + "~" + to_decimal_string(iv.width(), digits);
}

Cmp compare(const Real& a, const Real& b, const PrecisionContext& ctx) {
    if (a.is_exact() && b.is_exact()) {
        int c = cmp(a.exact(), b.exact());
        return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
    }
    for (long bits = ctx.initial_bits; bits <= ctx.max_bits; bits *= 2) {
        Interval ia = a.enclosure(bits), ib = b.enclosure(bits);
        if (ia.hi < ib.lo) return Cmp::Less;
        if (ia.lo > ib.hi) return Cmp::Greater;
        if (ia.is_point() && ib.is_point() && ia.lo == ib.lo) return Cmp::Equal;
    }
    return Cmp::Undecided;
}

bool certified_less(const Real& a, const Real& b, const PrecisionContext& ctx,
                    const std::string& what) {
    switch (compare(a, b, ctx)) {
        case Cmp::Less: return true;
        case Cmp::Greater:
        case Cmp::Equal: return false;
        default:
            throw PrecisionError("comparison undecided at precision ceiling" +
                                 (what.empty() ? "" : ": " + what));
    }
}

bool certified_leq(const Real& a, const Real& b, const PrecisionContext& ctx,
                   const std::string& what) {
    switch (compare(a, b, ctx)) {
        case Cmp::Less:
        case Cmp::Equal: return true;
        case Cmp::Greater: return false;
        default:
            throw PrecisionError("comparison undecided at precision ceiling" +
                                 (what.empty() ? "" : ": " + what));
    }
}

mpz_class certified_floor(const Real& a, const PrecisionContext& ctx) {
    if (a.is_exact()) return rat_floor(a.exact());
    for (long bits = ctx.initial_bits; bits <= ctx.max_bits; bits *= 2) {
        Interval iv = a.enclosure(bits);
        mpz_class flo = rat_floor(iv.lo), fhi = rat_floor(iv.hi);
        if (flo == fhi) return flo;
    }
    throw PrecisionError("floor undecided at precision ceiling: " + a.label());
}

mpz_class certified_ceil(const Real& a, const PrecisionContext& ctx) {
    if (a.is_exact()) {
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), a.exact().get_num_mpz_t(), a.exact().get_den_mpz_t());
        return c;
    }
    for (long bits = ctx.initial_bits; bits <= ctx.max_bits; bits *= 2) {
        Interval iv = a.enclosure(bits);
        mpz_class clo, chi;
        mpz_cdiv_q(clo.get_mpz_t(), iv.lo.get_num_mpz_t(), iv.lo.get_den_mpz_t());
        mpz_cdiv_q(chi.get_mpz_t(), iv.hi.get_num_mpz_t(), iv.hi.get_den_mpz_t());
        if (clo == chi) return clo;
    }
    throw PrecisionError("ceil undecided at precision ceiling: " + a.label());
}

bool is_exact_zero(const Real& a) { return a.is_exact() && a.exact() == 0; }

}  // namespace dio
