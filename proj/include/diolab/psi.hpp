#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "diolab/sums.hpp"

namespace dio {

// A non-increasing function psi: N -> R_{>=0}, represented symbolically and
// evaluated lazily. Forms:
//   table       finite list of values, extended by the last value
//   power-law   c * n^(-alpha)
//   reciprocal  1/k_n for a non-decreasing integer sequence (last-value ext.)
//   killer      the running orbit minimum min_{ell<=m<=n} ||m x + y||,
//               extended below ell by the constant value at ell
//   power       base^t for t > 0
//   scaled      s * base(stride * n), the scaling transforms' closure
// Monotonicity and nonnegativity are certified at construction for the
// symbolic forms and hold by construction for killer/power/scaled.
class PsiSpec {
public:
    enum class Form { Table, PowerLaw, Reciprocal, Killer, Power, Scaled };

    static PsiSpec table(std::vector<Real> values, const PrecisionContext& ctx = {});
    static PsiSpec constant(Real c, const PrecisionContext& ctx = {});
    static PsiSpec power_law(Real c, Real alpha, const PrecisionContext& ctx = {});
    static PsiSpec reciprocal(std::vector<mpz_class> k);
    static PsiSpec power(PsiSpec base, Real t, const PrecisionContext& ctx = {});

    // psi(n), n >= 1. Killer evaluations are memoized per instance.
    Real eval(const mpz_class& n) const;
    Real operator()(const mpz_class& n) const { return eval(n); }

    Form form() const;
    std::string form_name() const;

    // c * n^(-alpha) parameters when this spec provably reduces to a power
    // law (power law itself, powers of one, scalings of one, eventually
    // constant tables/reciprocals). Used for exact divergence verdicts.
    struct PowerLawView {
        Real c;      // positive scale (0 means psi vanishes eventually)
        Real alpha;  // exponent
    };
    std::optional<PowerLawView> as_power_law() const;

    struct Rep;  // implementation detail, defined in the source file

private:
    std::shared_ptr<Rep> rep_;
    PsiSpec(std::shared_ptr<Rep> r) : rep_(std::move(r)) {}

    friend PsiSpec killer_psi(TorusVector x, TorusVector y, const mpz_class& ell,
                              const PrecisionContext& ctx);
    friend PsiSpec transform_contract(const PsiSpec& psi, const mpz_class& u);
    friend PsiSpec transform_dilate(const PsiSpec& psi, const mpz_class& v);
};

// psi(n) = min_{ell <= m <= n} ||m x + y|| for n >= ell, constant below ell.
PsiSpec killer_psi(TorusVector x, TorusVector y, const mpz_class& ell,
                   const PrecisionContext& ctx = {});

// The reciprocal-integer discretization k_n - 1 < 1/psi(n) <= k_n.
struct ReciprocalSeq {
    std::vector<mpz_class> k;  // non-decreasing, k_n >= 1
    PsiSpec to_psi() const { return PsiSpec::reciprocal(k); }
};

ReciprocalSeq discretize_reciprocal(const PsiSpec& psi, const mpz_class& prefix,
                                    const PrecisionContext& ctx = {});

// psi~(n) = psi(u n) / u  and  psi~(n) = psi(v n). Power laws stay power
// laws; other forms become scaled wrappers.
PsiSpec transform_contract(const PsiSpec& psi, const mpz_class& u);
PsiSpec transform_dilate(const PsiSpec& psi, const mpz_class& v);

// All n <= N with ||n x + y|| < psi(n), strict and certified. An undecided
// comparison raises PrecisionError naming the contested n.
std::vector<mpz_class> membership_W(const TorusVector& x, const TorusVector& y,
                                    const PsiSpec& psi, const mpz_class& N,
                                    const PrecisionContext& ctx = {});

// Partial sums of psi(n)^d along the schedule with a verdict. Exact for
// forms that reduce to a power law (alpha * d <= 1 diverges); otherwise a
// heuristic hint using the same window/ratio signatures as the orbit sums.
SumReport divergence_check_D(const PsiSpec& psi, int d,
                             const std::vector<mpz_class>& schedule,
                             const DiagnosticOptions& opts = {},
                             const PrecisionContext& ctx = {});

}  // namespace dio
