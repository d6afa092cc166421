#include "diolab/orbit.hpp"

namespace dio {

ExactOrbitWalk::ExactOrbitWalk(const TorusVector& x, const TorusVector& y,
                               const mpz_class& start) {
    if (x.dim() != y.dim()) throw DomainError("orbit walk: dimension mismatch");
    if (start < 1) throw DomainError("orbit walk: start must be >= 1");
    den_ = 1;
    for (int i = 0; i < x.dim(); ++i) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), x[i].exact().get_den_mpz_t());
        mpz_lcm(den_.get_mpz_t(), l.get_mpz_t(), y[i].exact().get_den_mpz_t());
    }
    n_ = start;
    for (int i = 0; i < x.dim(); ++i) {
        mpz_class xn = x[i].exact().get_num() * (den_ / x[i].exact().get_den());
        mpz_class yn = y[i].exact().get_num() * (den_ / y[i].exact().get_den());
        xn_.push_back(xn);
        mpz_class u = (start * xn + yn) % den_;
        if (u < 0) u += den_;
        u_.push_back(u);
    }
}

void ExactOrbitWalk::step() {
    ++n_;
    for (size_t i = 0; i < u_.size(); ++i) {
        u_[i] += xn_[i];
        if (u_[i] >= den_) u_[i] -= den_;
    }
}

mpz_class ExactOrbitWalk::coord_dist_num(int i) const {
    return std::min(u_[i], mpz_class(den_ - u_[i]));
}

mpz_class ExactOrbitWalk::sup_num() const {
    mpz_class best = 0;
    for (int i = 0; i < dim(); ++i) best = std::max(best, coord_dist_num(i));
    return best;
}

bool ExactOrbitWalk::is_zero() const {
    for (const auto& u : u_)
        if (u != 0) return false;
    return true;
}

DyadicOrbitWalk::DyadicOrbitWalk(const TorusVector& x, const TorusVector& y, long bits,
                                 const mpz_class& start) {
    if (x.dim() != y.dim()) throw DomainError("orbit walk: dimension mismatch");
    if (start < 1) throw DomainError("orbit walk: start must be >= 1");
    bits_ = bits;
    scale_ = mpz_class(1) << bits;
    n_ = start;
    err_step_ = 0;
    err_ = 0;
    std::vector<mpz_class> yn;
    mpz_class yerr = 0;
    auto fixpoint = [&](const Real& c, mpz_class& out_mid, mpz_class& out_err) {
        Interval iv = c.enclosure(bits + 8);
        mpq_class mid = iv.mid() * mpq_class(scale_);
        out_mid = rat_nearest(mid);
        // rounding of the midpoint plus half the enclosure width
        mpq_class werr = iv.width() * mpq_class(scale_) / 2 + 1;
        mpz_class e;
        mpz_cdiv_q(e.get_mpz_t(), werr.get_num_mpz_t(), werr.get_den_mpz_t());
        out_err = e;
    };
    for (int i = 0; i < x.dim(); ++i) {
        mpz_class xm, xe, ym, ye;
        fixpoint(x[i], xm, xe);
        fixpoint(y[i], ym, ye);
        xn_.push_back(xm);
        yn.push_back(ym);
        err_step_ = std::max(err_step_, xe);
        yerr = std::max(yerr, ye);
    }
    for (int i = 0; i < x.dim(); ++i) {
        mpz_class u = (start * xn_[i] + yn[i]) % scale_;
        if (u < 0) u += scale_;
        u_.push_back(u);
    }
    err_ = start * err_step_ + yerr;
}

void DyadicOrbitWalk::step() {
    ++n_;
    for (size_t i = 0; i < u_.size(); ++i) {
        u_[i] += xn_[i];
        mpz_mod(u_[i].get_mpz_t(), u_[i].get_mpz_t(), scale_.get_mpz_t());
    }
    err_ += err_step_;
}

mpz_class DyadicOrbitWalk::coord_dist_num(int i) const {
    return std::min(u_[i], mpz_class(scale_ - u_[i]));
}

mpz_class DyadicOrbitWalk::sup_num() const {
    mpz_class best = 0;
    for (int i = 0; i < dim(); ++i) best = std::max(best, coord_dist_num(i));
    return best;
}

Interval DyadicOrbitWalk::coord_dist(int i) const {
    mpz_class m = coord_dist_num(i);
    mpz_class lo = m - err_, hi = m + err_;
    if (lo < 0) lo = 0;
    mpq_class half(1, 2);
    mpq_class qlo = mpq_class(lo) / mpq_class(scale_);
    mpq_class qhi = mpq_class(hi) / mpq_class(scale_);
    if (qhi > half) qhi = half;
    if (qlo > qhi) qlo = qhi;
    return Interval(qlo, qhi);
}

Interval DyadicOrbitWalk::sup_dist() const {
    mpz_class m = sup_num();
    mpz_class lo = m - err_, hi = m + err_;
    if (lo < 0) lo = 0;
    mpq_class half(1, 2);
    mpq_class qlo = mpq_class(lo) / mpq_class(scale_);
    mpq_class qhi = mpq_class(hi) / mpq_class(scale_);
    if (qhi > half) qhi = half;
    if (qlo > qhi) qlo = qhi;
    return Interval(qlo, qhi);
}

}  // namespace dio
