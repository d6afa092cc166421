#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "diolab/interval.hpp"

namespace dio {

enum class Cmp { Less, Equal, Greater, Undecided };

// Comparison protocol: refine from initial_bits, doubling until the
// comparison resolves or max_bits is exceeded.
struct PrecisionContext {
    long initial_bits = 64;
    long max_bits = 1 << 20;
};

// An exact or interval-refinable real number. Exact values are rationals
// and compare exactly; refinable values produce certified enclosures at a
// requested bit precision. Immutable after construction.
class Real {
public:
    using Refiner = std::function<Interval(long bits)>;

    Real() : Real(mpq_class(0)) {}
    Real(long v) : Real(mpq_class(v)) {}
    Real(int v) : Real(mpq_class(v)) {}
    explicit Real(mpq_class v);
    explicit Real(mpz_class v) : Real(mpq_class(std::move(v))) {}

    // A refinable real backed by an enclosure procedure.
    static Real from_refiner(Refiner fn, std::string label = "");
    // A fixed interval: refinement never shrinks it further.
    static Real from_interval(Interval iv, std::string label = "");

    bool is_exact() const { return rep_->exact.has_value(); }
    const mpq_class& exact() const;
    const std::string& label() const { return rep_->label; }

    // Certified enclosure; for exact values this is a point interval.
    Interval enclosure(long bits) const;

    Real operator-() const;
    Real abs() const;
    // Positive integer or rational power. Exact when possible (integer
    // exponent, or an exact rational root exists).
    Real pow(const mpq_class& e) const;
    // Power with a possibly-inexact positive exponent.
    Real pow(const Real& e) const;
    Real inverse() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator*(const mpz_class& c, const Real& a);

    // Distance to the nearest integer, in [0, 1/2].
    Real dist_to_int() const;

    std::string describe(int digits = 12) const;

private:
    struct Rep {
        std::optional<mpq_class> exact;
        Refiner refine;
        std::string label;
        mutable std::mutex mu;
        mutable long cached_bits = -1;
        mutable Interval cache;
    };
    std::shared_ptr<Rep> rep_;
};

// Three-valued certified comparison. Equal is only reported for two exact
// values; otherwise refinement continues until the enclosures separate or
// the precision ceiling is reached.
Cmp compare(const Real& a, const Real& b, const PrecisionContext& ctx = {});

// Decided comparison helpers; throw PrecisionError when undecided.
bool certified_less(const Real& a, const Real& b, const PrecisionContext& ctx = {},
                    const std::string& what = "");
bool certified_leq(const Real& a, const Real& b, const PrecisionContext& ctx = {},
                   const std::string& what = "");

// Certified floor; throws PrecisionError if the value cannot be separated
// from an integer boundary.
mpz_class certified_floor(const Real& a, const PrecisionContext& ctx = {});

// Smallest integer k with k >= a (certified). Used by the reciprocal
// discretization k_n - 1 < 1/psi(n) <= k_n.
mpz_class certified_ceil(const Real& a, const PrecisionContext& ctx = {});

bool is_exact_zero(const Real& a);

}  // namespace dio
