#include "diolab/torus.hpp"

namespace dio {

namespace {

Real reduce_mod1(const Real& v, const PrecisionContext& ctx) {
    if (v.is_exact()) {
        mpq_class q = v.exact();
        return Real(q - mpq_class(rat_floor(q)));
    }
    // pick the representative determined by the midpoint at context precision
    Interval iv = v.enclosure(ctx.initial_bits);
    mpz_class fl = rat_floor(iv.mid());
    if (fl == 0) return v;
    Real off((mpq_class(-fl)));
    return v + off;
}

}  // namespace

TorusVector::TorusVector(std::vector<Real> coords, const PrecisionContext& ctx) {
    if (coords.empty()) throw DomainError("TorusVector requires dimension >= 1");
    coords_.reserve(coords.size());
    for (auto& c : coords) coords_.push_back(reduce_mod1(c, ctx));
}

bool TorusVector::all_exact() const {
    for (const auto& c : coords_)
        if (!c.is_exact()) return false;
    return true;
}

Weights::Weights(int dim, std::vector<Real> r) : dim_(dim), r_(std::move(r)) {
    if ((int)r_.size() != dim_ || dim_ < 1) throw DomainError("Weights: dimension mismatch");
    mpq_class exact_sum = 0;
    bool exact = true;
    Interval sum = Interval::point(0);
    for (const auto& w : r_) {
        if (w.is_exact()) {
            if (w.exact() < 0) throw DomainError("Weights: negative entry");
            exact_sum += w.exact();
        } else {
            exact = false;
        }
        Interval iv = w.enclosure(96);
        if (iv.hi < 0) throw DomainError("Weights: negative entry");
        sum = sum + iv;
    }
    if (exact) {
        if (exact_sum != 1) throw DomainError("Weights: entries must sum to 1 exactly");
    } else if (!sum.contains(mpq_class(1))) {
        throw DomainError("Weights: entries do not sum to 1");
    }
}

Weights Weights::uniform(int dim) {
    std::vector<Real> r(dim, Real(mpq_class(1, dim)));
    return Weights(dim, std::move(r));
}

bool Weights::is_uniform() const {
    for (const auto& w : r_) {
        if (!w.is_exact() || w.exact() != mpq_class(1, dim_)) return false;
    }
    return true;
}

bool Weights::all_exact() const {
    for (const auto& w : r_)
        if (!w.is_exact()) return false;
    return true;
}

mpq_class Weights::inv_exact(int i) const {
    if (!r_[i].is_exact() || r_[i].exact() == 0)
        throw DomainError("weight reciprocal requires an exact positive entry");
    return 1 / r_[i].exact();
}

Exponent::Exponent(Real sigma, int dim, const PrecisionContext& ctx) : sigma_(std::move(sigma)) {
    Real bound((mpq_class(1, dim)));
    if (certified_less(sigma_, bound, ctx, "sigma >= 1/d"))
        throw DomainError("Exponent: sigma must be >= 1/d");
}

Real torus_dist(const TorusVector& v) {
    Real best = v[0].dist_to_int();
    for (int i = 1; i < v.dim(); ++i) {
        Real di = v[i].dist_to_int();
        if (best.is_exact() && di.is_exact()) {
            best = di.exact() > best.exact() ? di : best;
        } else {
            Real a = best, b = di;
            best = Real::from_refiner(
                [a, b](long bits) { return imax(a.enclosure(bits), b.enclosure(bits)); },
                "supdist");
        }
    }
    return best;
}

Real weighted_dist_pow_d(const TorusVector& v, const Weights& r, const PrecisionContext& ctx) {
    if (v.dim() != r.dim()) throw DomainError("weighted_dist: dimension mismatch");
    Real best;
    bool have = false;
    for (int i = 0; i < v.dim(); ++i) {
        Real di = v[i].dist_to_int();
        Real term;
        bool zero_weight = r[i].is_exact() && r[i].exact() == 0;
        if (zero_weight) {
            // limit convention: ||v_i||^{1/0} = 0 for ||v_i|| < 1; the
            // threshold case ||v_i|| = 1 cannot occur on the torus, but an
            // interval straddling it is rejected for honesty.
            Interval iv = di.enclosure(ctx.initial_bits);
            if (iv.hi >= 1) throw DomainError("weighted_dist: zero weight with distance at threshold");
            term = Real(0);
        } else if (r[i].is_exact()) {
            term = di.pow(r.inv_exact(i));
        } else {
            term = di.pow(r[i].inverse());
        }
        if (!have) {
            best = term;
            have = true;
        } else if (best.is_exact() && term.is_exact()) {
            best = term.exact() > best.exact() ? term : best;
        } else {
            Real a = best, b = term;
            best = Real::from_refiner(
                [a, b](long bits) { return imax(a.enclosure(bits), b.enclosure(bits)); },
                "wmax");
        }
    }
    return best;
}

Real weighted_dist(const TorusVector& v, const Weights& r, const PrecisionContext& ctx) {
    Real p = weighted_dist_pow_d(v, r, ctx);
    return p.pow(mpq_class(1, v.dim()));
}

TorusVector affine_orbit_point(const TorusVector& x, const TorusVector& y, const mpz_class& n) {
    if (x.dim() != y.dim()) throw DomainError("affine_orbit_point: dimension mismatch");
    if (n < 1) throw DomainError("affine_orbit_point: n must be >= 1");
    std::vector<Real> coords;
    coords.reserve(x.dim());
    for (int i = 0; i < x.dim(); ++i) coords.push_back(n * x[i] + y[i]);
    return TorusVector(std::move(coords));
}

}  // namespace dio
