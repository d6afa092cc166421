#pragma once

#include <vector>

#include "diolab/contfrac.hpp"
#include "diolab/sums.hpp"

namespace dio {

// A subsequence n_0 < n_1 < ... of good denominators for x, with certified
// distances and the two bounds that make the witness construction work:
//   geometric tail   ||n_{k+1} x|| <= rho ||n_k x||,  rho <= 1/2
//   summability      n_k ||n_k x||^d <= C 2^{-k}
struct ApproxSequence {
    TorusVector x;
    std::vector<mpz_class> n;
    std::vector<Real> dist;         // ||n_k x||
    std::vector<Real> term_bounds;  // n_k ||n_k x||^d
    mpq_class rho, C;

    int depth() const { return (int)n.size(); }
};

// Greedy selection (smallest admissible n at each step) from an increasing
// candidate list. Fails with "no admissible n_k found within bound B" when
// the list is exhausted, which is the expected outcome for badly
// approximable x.
ApproxSequence select_subsequence(const TorusVector& x,
                                  const std::vector<mpz_class>& candidates, int K,
                                  const mpq_class& rho, const mpq_class& C,
                                  const PrecisionContext& ctx = {});

// Brute-force scan over 1..B (single orbit walk; cheap per step).
ApproxSequence select_subsequence_scan(const TorusVector& x, const mpz_class& B, int K,
                                       const mpq_class& rho, const mpq_class& C,
                                       const PrecisionContext& ctx = {});

// Designated denominators 2^{g(j)}; all coordinates share the same value
// (the product construction for d > 1).
ApproxSequence select_subsequence_liouville(const LiouvilleNumber& L, int dim, int K,
                                            const mpq_class& rho, const mpq_class& C,
                                            const PrecisionContext& ctx = {});

// y = -sum_{k<K} (n_k x - a_k) with a_k the nearest lattice point, plus the
// data needed to check it: N_K = sum_{k<K} n_k satisfies
// ||N_J x + y|| <= sum_{J<=k<K} ||n_k x|| for every J <= K, and the
// truncation radius bounds the distance to the untruncated witness.
struct WitnessCertificate {
    ApproxSequence seq;
    std::vector<std::vector<mpz_class>> a;  // nearest lattice points
    int K_used;
    TorusVector y_truncated;
    Real truncation_radius;
    std::vector<Real> tail_bounds;  // tail_bounds[J] >= ||N_J x + y|| + radius slack
    std::vector<mpz_class> N;       // N[J] = sum_{k<J} n_k, J = 0..K_used

    const TorusVector& x() const { return seq.x; }
};

WitnessCertificate build_witness(const ApproxSequence& seq, int K,
                                 const PrecisionContext& ctx = {});

// Evaluates the truncated sum for (x, y) and checks it against the
// certificate's analytic majorant. Throws DomainError ("certificate
// refuted ...") when the partial sum provably exceeds the majorant.
SumReport verify_witness(const WitnessCertificate& cert, const mpz_class& ell,
                         const mpz_class& N, const PrecisionContext& ctx = {});

}  // namespace dio
