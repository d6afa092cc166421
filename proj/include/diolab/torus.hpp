#pragma once

#include <vector>

#include "diolab/real.hpp"

namespace dio {

// A point of R^d taken mod Z^d. Coordinates are canonically reduced to
// [0,1); for refinable coordinates the representative is fixed by the
// floor of the enclosure midpoint at context precision.
class TorusVector {
public:
    explicit TorusVector(std::vector<Real> coords, const PrecisionContext& ctx = {});
    static TorusVector single(Real v) { return TorusVector(std::vector<Real>{std::move(v)}); }

    int dim() const { return (int)coords_.size(); }
    const Real& operator[](int i) const { return coords_[i]; }
    const std::vector<Real>& coords() const { return coords_; }
    bool all_exact() const;

private:
    std::vector<Real> coords_;
};

// A weight vector r on the standard simplex: r_i >= 0, sum r_i = 1.
class Weights {
public:
    Weights(int dim, std::vector<Real> r);
    static Weights uniform(int dim);

    int dim() const { return dim_; }
    const Real& operator[](int i) const { return r_[i]; }
    bool is_uniform() const;
    // 1/r_i as an exact rational; requires r_i exact and positive.
    mpq_class inv_exact(int i) const;
    bool all_exact() const;

private:
    int dim_;
    std::vector<Real> r_;
};

// sigma >= 1/d, the irrationality-exponent parameter.
class Exponent {
public:
    Exponent(Real sigma, int dim, const PrecisionContext& ctx = {});
    const Real& sigma() const { return sigma_; }
    // The summation exponent 1/sigma.
    Real sum_exponent() const { return sigma_.inverse(); }

private:
    Real sigma_;
};

// Sup-norm distance to the nearest lattice point, in [0, 1/2].
Real torus_dist(const TorusVector& v);

// Weighted norm (max_i ||v_i||^{1/r_i})^{1/d}. A coordinate with r_i = 0
// contributes 0 when ||v_i|| < 1 at threshold; an interval-valued
// coordinate distance straddling the threshold is rejected.
Real weighted_dist(const TorusVector& v, const Weights& r,
                   const PrecisionContext& ctx = {});

// The d-th power of the weighted norm, max_i ||v_i||^{1/r_i}. This is the
// per-term quantity of the weighted sums; exact whenever the 1/r_i are
// integers and the input is exact.
Real weighted_dist_pow_d(const TorusVector& v, const Weights& r,
                         const PrecisionContext& ctx = {});

// n x + y reduced mod 1, n >= 1. No precision loss for exact inputs.
TorusVector affine_orbit_point(const TorusVector& x, const TorusVector& y,
                               const mpz_class& n);

}  // namespace dio
