#pragma once

#include <vector>

#include "diolab/torus.hpp"

namespace dio {

// Incremental evaluation of the orbit n -> n x + y (mod 1), n = start,
// start+1, ... Two engines share this interface shape:
//
//  * ExactOrbitWalk: all coordinates rational; state is kept as integer
//    numerators over a fixed common denominator. Distances are exact.
//  * DyadicOrbitWalk: coordinates are certified fixed-point integers at
//    2^P scale with a tracked additive error bound; distances are
//    certified enclosures whose width grows linearly in n.

class ExactOrbitWalk {
public:
    ExactOrbitWalk(const TorusVector& x, const TorusVector& y, const mpz_class& start = 1);

    void step();  // advance n by one
    const mpz_class& n() const { return n_; }
    const mpz_class& den() const { return den_; }
    int dim() const { return (int)u_.size(); }

    // per-coordinate numerator of the orbit point, in [0, den)
    const std::vector<mpz_class>& coord_nums() const { return u_; }
    // numerator of the per-coordinate distance min(u, den - u)
    mpz_class coord_dist_num(int i) const;
    // numerator of the sup-norm distance max_i min(u_i, den - u_i)
    mpz_class sup_num() const;
    bool is_zero() const;  // orbit point exactly 0

private:
    mpz_class den_, n_;
    std::vector<mpz_class> xn_, u_;  // x numerators and current point numerators
};

class DyadicOrbitWalk {
public:
    // bits: fixed-point scale P. Coordinate enclosures are requested at
    // P + 8 bits; the per-step error increment is recorded in err_step().
    DyadicOrbitWalk(const TorusVector& x, const TorusVector& y, long bits,
                    const mpz_class& start = 1);

    void step();
    const mpz_class& n() const { return n_; }
    long bits() const { return bits_; }
    const mpz_class& scale() const { return scale_; }  // 2^P

    // accumulated error bound, in units of 2^-P
    const mpz_class& err() const { return err_; }
    // midpoint numerator of the per-coordinate distance
    mpz_class coord_dist_num(int i) const;
    mpz_class sup_num() const;
    int dim() const { return (int)u_.size(); }

    // certified enclosure of the sup-norm distance
    Interval sup_dist() const;
    Interval coord_dist(int i) const;

private:
    long bits_;
    mpz_class scale_, n_;
    std::vector<mpz_class> xn_, u_;
    mpz_class err_, err_step_;
};

}  // namespace dio
