#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diolab/records.hpp"

namespace dio {

enum class Regime { Plain, Weighted, Sigma };

// Which flavor of the sum S_ell to evaluate. The per-term quantity is
//   plain:    (sup-norm window min)^d
//   weighted: max_i ||.||^{1/r_i} of the window min under the weighted norm
//   sigma:    (sup-norm window min)^{1/sigma}
// sigma = 1/d and uniform weights both reduce exactly to the plain regime.
class SumSpec {
public:
    static SumSpec plain(int d);
    static SumSpec weighted(Weights r);
    static SumSpec sigma(int d, Real sigma_value, const PrecisionContext& ctx = {});

    Regime regime() const { return regime_; }
    int dim() const { return d_; }
    const Weights& weights() const;
    // exponent applied to the sup-norm distance (plain and sigma regimes)
    const Real& exponent() const { return e_; }
    // exact nonnegative integer exponent, when the regime reduces to one
    std::optional<unsigned long> int_exponent() const;
    bool reduces_to_plain() const;

private:
    SumSpec() = default;
    Regime regime_ = Regime::Plain;
    int d_ = 1;
    std::optional<Weights> w_;
    Real e_;
};

enum class Verdict { Diverging, Converging, Inconclusive };
std::string to_string(Verdict v);

struct SumReport {
    std::vector<std::pair<mpz_class, Real>> partial_sums;      // (N, S_ell truncated at N)
    std::vector<std::pair<long, Real>> per_record_increments;  // (k, delta_k^e * gap)
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::string> certificate;
    std::optional<Real> majorant;
};

// Truncated sum: sum_{n=ell}^{N} (window min at n)^e. Exact for rational
// inputs with integer exponents; otherwise a certified enclosure.
Real partial_S(const TorusVector& x, const TorusVector& y, const mpz_class& ell,
               const mpz_class& N, const SumSpec& spec, const PrecisionContext& ctx = {});

// The same value computed from a record sequence as
// sum_k delta_k^e * (run length), truncating the final run at N.
// Requires rs.start == ell and rs.scan_bound >= N. Weighted regimes are
// supported only when they reduce to plain (records are sup-norm records).
Real partial_S_records(const RecordSequence& rs, const mpz_class& ell, const mpz_class& N,
                       const SumSpec& spec, const PrecisionContext& ctx = {});

struct DiagnosticOptions {
    mpq_class diverging_fraction{1, 2};  // of the empirical c / 2^d
    int converging_window = 5;           // R
    mpq_class converging_ratio{1, 2};    // rho
    mpq_class converging_eps{1, 1000000};
    long burn_in_records = 5;
};

// Partial sums along an increasing schedule with a heuristic verdict.
// Verdicts are hints, not proofs, except for rational inputs and exact
// zero hits, where they are exact.
SumReport divergence_diagnostic(const TorusVector& x, const TorusVector& y,
                                const mpz_class& ell, const std::vector<mpz_class>& schedule,
                                const SumSpec& spec, const DiagnosticOptions& opts = {},
                                const PrecisionContext& ctx = {});

}  // namespace dio
