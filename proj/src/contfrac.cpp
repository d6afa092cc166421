#include "diolab/contfrac.hpp"

#include <sstream>

namespace dio {

ContinuedFraction ContinuedFraction::finite(std::vector<mpz_class> terms) {
    if (terms.empty()) throw DomainError("continued fraction needs at least a0");
    for (size_t i = 1; i < terms.size(); ++i)
        if (terms[i] < 1) throw DomainError("partial quotients must be >= 1");
    ContinuedFraction cf;
    cf.kind_ = Kind::Finite;
    cf.prefix_ = std::move(terms);
    return cf;
}

ContinuedFraction ContinuedFraction::periodic(std::vector<mpz_class> prefix,
                                              std::vector<mpz_class> period) {
    if (prefix.empty()) throw DomainError("continued fraction needs at least a0");
    if (period.empty()) throw DomainError("periodic continued fraction needs a period");
    for (size_t i = 1; i < prefix.size(); ++i)
        if (prefix[i] < 1) throw DomainError("partial quotients must be >= 1");
    for (const auto& a : period)
        if (a < 1) throw DomainError("partial quotients must be >= 1");
    ContinuedFraction cf;
    cf.kind_ = Kind::Periodic;
    cf.prefix_ = std::move(prefix);
    cf.period_ = std::move(period);
    return cf;
}

ContinuedFraction ContinuedFraction::generated(mpz_class a0, Rule rule) {
    ContinuedFraction cf;
    cf.kind_ = Kind::Generated;
    cf.prefix_ = {std::move(a0)};
    cf.rule_ = std::move(rule);
    return cf;
}

long ContinuedFraction::length() const {
    if (kind_ != Kind::Finite) throw DomainError("length of an infinite expansion");
    return (long)prefix_.size();
}

mpz_class ContinuedFraction::quotient(long n) const {
    if (n < 0) throw DomainError("quotient index must be >= 0");
    switch (kind_) {
        case Kind::Finite:
            if (n >= (long)prefix_.size()) throw DomainError("quotient index beyond finite expansion");
            return prefix_[n];
        case Kind::Periodic:
            if (n < (long)prefix_.size()) return prefix_[n];
            return period_[(n - prefix_.size()) % period_.size()];
        case Kind::Generated: {
            if (n == 0) return prefix_[0];
            mpz_class a = rule_(n);
            if (a < 1) throw DomainError("generated partial quotient < 1");
            return a;
        }
    }
    throw DomainError("unreachable");
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, long count) {
    if (count < 1) throw DomainError("convergent count must be >= 1");
    if (cf.is_finite() && count > cf.length()) count = cf.length();
    std::vector<Convergent> out;
    out.reserve(count);
    mpz_class pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;  // p_{-2}/q_{-2}, p_{-1}/q_{-1}
    for (long n = 0; n < count; ++n) {
        mpz_class a = cf.quotient(n);
        mpz_class p = a * pm1 + pm2;
        mpz_class q = a * qm1 + qm2;
        out.push_back({p, q, n});
        pm2 = pm1; pm1 = p;
        qm2 = qm1; qm1 = q;
    }
    return out;
}

Real ContinuedFraction::value() const {
    if (kind_ == Kind::Finite) {
        mpq_class v = mpq_class(prefix_.back());
        for (long i = (long)prefix_.size() - 2; i >= 0; --i)
            v = mpq_class(prefix_[i]) + 1 / v;
        return Real(v);
    }
    ContinuedFraction self = *this;
    return Real::from_refiner(
        [self](long bits) {
            mpz_class pm2 = 0, pm1 = 1, qm2 = 1, qm1 = 0;
            mpq_class prev, cur;
            mpz_class bound = mpz_class(1) << (bits + 1);
            for (long n = 0;; ++n) {
                mpz_class a = self.quotient(n);
                mpz_class p = a * pm1 + pm2;
                mpz_class q = a * qm1 + qm2;
                prev = cur;
                cur = mpq_class(p) / mpq_class(q);
                pm2 = pm1; pm1 = p;
                qm2 = qm1; qm1 = q;
                // |x - p_n/q_n| < 1/(q_n q_{n+1}) <= 1/q_n^2
                if (n >= 1 && qm1 * qm2 >= bound) break;
            }
            return Interval(std::min(prev, cur), std::max(prev, cur));
        },
        to_literal());
}

std::string ContinuedFraction::to_literal() const {
    std::ostringstream os;
    os << "cf:[" << prefix_[0];
    if (prefix_.size() > 1 || kind_ != Kind::Finite) os << ";";
    for (size_t i = 1; i < prefix_.size(); ++i) {
        os << prefix_[i];
        if (i + 1 < prefix_.size()) os << ",";
    }
    if (kind_ == Kind::Periodic) {
        if (prefix_.size() > 1) os << ",";
        os << "(";
        for (size_t i = 0; i < period_.size(); ++i) {
            os << period_[i];
            if (i + 1 < period_.size()) os << ",";
        }
        os << ")";
    } else if (kind_ == Kind::Generated) {
        if (prefix_.size() > 1) os << ",";
        os << "...";
    }
    os << "]";
    return os.str();
}

ContinuedFraction cf_expand(const Real& x, long count, const PrecisionContext& ctx) {
    if (count < 1) throw DomainError("cf_expand: count must be >= 1");
    std::vector<mpz_class> terms;
    if (x.is_exact()) {
        // Euclidean algorithm; yields the canonical form (no trailing 1)
        mpz_class n = x.exact().get_num(), d = x.exact().get_den();
        while (terms.size() < (size_t)count) {
            mpz_class q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
            terms.push_back(q);
            if (r == 0) break;
            n = d;
            d = r;
        }
        return ContinuedFraction::finite(std::move(terms));
    }
    Real cur = x;
    for (long i = 0; i < count; ++i) {
        mpz_class a;
        try {
            a = certified_floor(cur, ctx);
        } catch (const PrecisionError&) {
            throw PrecisionError("cf_expand: quotient " + std::to_string(i) +
                                 " undecided at precision ceiling");
        }
        terms.push_back(a);
        if (i + 1 < count) cur = (cur - Real(mpq_class(a))).inverse();
    }
    return ContinuedFraction::finite(std::move(terms));
}

ContinuedFraction make_bounded_quotient(long bound, ContinuedFraction::Rule rule) {
    if (bound < 1) throw DomainError("quotient bound must be >= 1");
    mpz_class cap(bound);
    return ContinuedFraction::generated(0, [rule, cap](long n) {
        mpz_class a = rule(n);
        if (a < 1 || a > cap) throw DomainError("rule produced a quotient outside [1, bound]");
        return a;
    });
}

ContinuedFraction::Rule constant_rule(long a) {
    return [a](long) { return mpz_class(a); };
}

ContinuedFraction::Rule alternating_rule(long bound) {
    return [bound](long n) { return mpz_class(n % 2 == 1 ? 1 : bound); };
}

ContinuedFraction golden_ratio_cf() { return ContinuedFraction::periodic({1}, {1}); }
ContinuedFraction sqrt2_cf() { return ContinuedFraction::periodic({1}, {2}); }

mpz_class LiouvilleNumber::denominator(long j) const {
    mpz_class n;
    mpz_ui_pow_ui(n.get_mpz_t(), 2, (unsigned long)gap(j));
    return n;
}

mpq_class LiouvilleNumber::dist_bound(long j) const {
    long e = gap(j + 1) - gap(j) - 1;
    if (e <= 0) return mpq_class(1);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 2, (unsigned long)e);
    return mpq_class(1) / mpq_class(d);
}

Real LiouvilleNumber::dist(long j) const {
    return (denominator(j) * value).dist_to_int();
}

LiouvilleNumber make_liouville(std::function<long(long)> gap_schedule, long check_depth) {
    for (long j = 0; j < check_depth; ++j) {
        long g = gap_schedule(j), gn = gap_schedule(j + 1);
        if (g < 1 || gn <= g || gn < 2 * g)
            throw DomainError(
                "gap schedule too slow: need g(j+1) >= 2 g(j) to certify "
                "well-approximability (failed at j=" + std::to_string(j) + ")");
    }
    auto gap = gap_schedule;
    Real value = Real::from_refiner(
        [gap](long bits) {
            long J = 0;
            while (gap(J) < bits + 2) ++J;
            mpq_class partial = 0;
            for (long j = 0; j <= J; ++j) {
                mpz_class d;
                mpz_ui_pow_ui(d.get_mpz_t(), 2, (unsigned long)gap(j));
                partial += mpq_class(1) / mpq_class(d);
            }
            // tail is in (0, 2^{1 - g(J+1)}]
            long gt = gap(J + 1);
            mpz_class dt;
            mpz_ui_pow_ui(dt.get_mpz_t(), 2, (unsigned long)(gt - 1));
            return Interval(partial, partial + mpq_class(1) / mpq_class(dt));
        },
        "liouville");
    return LiouvilleNumber{value, gap_schedule};
}

LiouvilleNumber liouville_factorial() {
    return make_liouville([](long j) {
        long g = 1;
        for (long i = 2; i <= j + 1; ++i) g *= i;
        return g;
    });
}

LiouvilleNumber liouville_pow2() {
    return make_liouville([](long j) { return 1L << (j + 1); });
}

}  // namespace dio
