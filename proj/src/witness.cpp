#include "diolab/witness.hpp"

#include "diolab/orbit.hpp"

namespace dio {

namespace {

// Nearest integer, certified; rounds half to even on exact ties.
mpz_class certified_nearest_int(const Real& v, const PrecisionContext& ctx) {
    if (v.is_exact()) return rat_nearest(v.exact());
    for (long bits = ctx.initial_bits; bits <= ctx.max_bits; bits *= 2) {
        Interval iv = v.enclosure(bits);
        mpz_class n = rat_nearest(iv.mid());
        if (iv.lo > mpq_class(2 * n - 1, 2) && iv.hi < mpq_class(2 * n + 1, 2)) return n;
    }
    throw PrecisionError("nearest lattice point undecided at precision ceiling");
}

Real homogeneous_dist(const TorusVector& x, const mpz_class& n) {
    std::vector<Real> zeros(x.dim(), Real(0));
    return torus_dist(affine_orbit_point(x, TorusVector(zeros), n));
}

void admit(ApproxSequence& seq, const mpz_class& n, Real dist, int d) {
    seq.term_bounds.push_back(n * dist.pow(mpq_class(d)));
    seq.n.push_back(n);
    seq.dist.push_back(std::move(dist));
}

}  // namespace

ApproxSequence select_subsequence(const TorusVector& x,
                                  const std::vector<mpz_class>& candidates, int K,
                                  const mpq_class& rho, const mpq_class& C,
                                  const PrecisionContext& ctx) {
    if (K < 1) throw DomainError("select_subsequence: K must be >= 1");
    if (rho <= 0 || rho > mpq_class(1, 2))
        throw DomainError("select_subsequence: need 0 < rho <= 1/2");
    if (C <= 0) throw DomainError("select_subsequence: C must be positive");
    const int d = x.dim();
    ApproxSequence seq{x, {}, {}, {}, rho, C};
    mpz_class last = 0;
    mpq_class thr = C;  // C * 2^{-k}
    for (const auto& n : candidates) {
        if ((int)seq.n.size() >= K) break;
        if (n <= last) {
            if (n < 1) throw DomainError("select_subsequence: candidates must be positive");
            continue;  // list must be scanned in increasing order
        }
        Real dist = homogeneous_dist(x, n);
        std::string what = "admissibility of n=" + n.get_str();
        bool ok = certified_leq(n * dist.pow(mpq_class(d)), Real(thr), ctx, what);
        if (ok && !seq.dist.empty())
            ok = certified_leq(dist, Real(rho) * seq.dist.back(), ctx, what);
        if (ok) {
            admit(seq, n, dist, d);
            last = n;
            thr /= 2;
        }
    }
    if ((int)seq.n.size() < K) {
        mpz_class B = candidates.empty() ? mpz_class(0) : candidates.back();
        throw DomainError("no admissible n_k found within bound " + B.get_str());
    }
    return seq;
}

ApproxSequence select_subsequence_scan(const TorusVector& x, const mpz_class& B, int K,
                                       const mpq_class& rho, const mpq_class& C,
                                       const PrecisionContext& ctx) {
    if (K < 1) throw DomainError("select_subsequence: K must be >= 1");
    if (rho <= 0 || rho > mpq_class(1, 2))
        throw DomainError("select_subsequence: need 0 < rho <= 1/2");
    if (C <= 0) throw DomainError("select_subsequence: C must be positive");
    if (B < 1) throw DomainError("select_subsequence: bound must be >= 1");
    const int d = x.dim();
    ApproxSequence seq{x, {}, {}, {}, rho, C};
    std::vector<Real> zeros(d, Real(0));
    TorusVector zero(zeros);
    mpq_class thr = C;

    if (x.all_exact()) {
        ExactOrbitWalk walk(x, zero, 1);
        for (mpz_class n = 1; n <= B && (int)seq.n.size() < K; walk.step(), ++n) {
            mpq_class dist(walk.sup_num(), walk.den());
            dist.canonicalize();
            mpq_class dp = dist;
            for (int i = 1; i < d; ++i) dp *= dist;
            if (mpq_class(n) * dp > thr) continue;
            if (!seq.dist.empty() && dist > rho * seq.dist.back().exact()) continue;
            admit(seq, n, Real(dist), d);
            thr /= 2;
        }
        if ((int)seq.n.size() < K)
            throw DomainError("no admissible n_k found within bound " + B.get_str());
        return seq;
    }

    long bits = std::max(ctx.initial_bits, (long)mpz_sizeinbase(B.get_mpz_t(), 2) + 16);
    DyadicOrbitWalk walk(x, zero, bits, 1);
    Interval prev;
    for (mpz_class n = 1; n <= B && (int)seq.n.size() < K; walk.step(), ++n) {
        Interval dv = walk.sup_dist();
        Interval term = mpq_class(n) * pow_int(dv, d);
        if (term.lo > thr) continue;       // certified inadmissible
        bool geo_ok = true;
        if (!seq.dist.empty()) {
            if (dv.lo > rho * prev.hi) continue;
            geo_ok = dv.hi <= rho * prev.lo;
        }
        if (term.hi > thr || !geo_ok)
            throw PrecisionError("admissibility of n=" + n.get_str() +
                                 " undecided at scan precision");
        prev = dv;
        admit(seq, n, Real::from_interval(dv, "dist"), d);
        thr /= 2;
    }
    if ((int)seq.n.size() < K)
        throw DomainError("no admissible n_k found within bound " + B.get_str());
    return seq;
}

ApproxSequence select_subsequence_liouville(const LiouvilleNumber& L, int dim, int K,
                                            const mpq_class& rho, const mpq_class& C,
                                            const PrecisionContext& ctx) {
    if (dim < 1) throw DomainError("select_subsequence: dimension must be >= 1");
    std::vector<Real> coords(dim, L.value);
    TorusVector x(coords);
    std::vector<mpz_class> candidates;
    for (long j = 0; (int)candidates.size() < K + 8; ++j) {
        if (L.gap(j) > (1L << 20)) break;  // denominators beyond the precision ceiling
        candidates.push_back(L.denominator(j));
    }
    return select_subsequence(x, candidates, K, rho, C, ctx);
}

WitnessCertificate build_witness(const ApproxSequence& seq, int K,
                                 const PrecisionContext& ctx) {
    if (K < 1) throw DomainError("build_witness: K must be >= 1");
    if (K > seq.depth()) throw DomainError("build_witness: sequence shorter than requested depth");
    const TorusVector& x = seq.x;
    const int d = x.dim();
    long bits = std::max(96L, ctx.initial_bits);

    WitnessCertificate cert{seq, {}, K, TorusVector({Real(0)}), Real(0), {}, {}};
    std::vector<Real> y(d, Real(0));
    for (int k = 0; k < K; ++k) {
        std::vector<mpz_class> ak(d);
        for (int i = 0; i < d; ++i) {
            Real v = seq.n[k] * x[i];
            ak[i] = certified_nearest_int(v, ctx);
            y[i] = y[i] - (v - Real(ak[i]));
        }
        cert.a.push_back(std::move(ak));
    }
    cert.y_truncated = TorusVector(y, ctx);

    // radius of the truncation: the untruncated witness continues the
    // geometric tail, so sum_{k>=K} ||n_k x|| <= 2 ||n_K x||
    mpq_class radius;
    if (K < seq.depth())
        radius = 2 * seq.dist[K].enclosure(bits).hi;
    else
        radius = 2 * seq.rho * seq.dist[K - 1].enclosure(bits).hi;
    cert.truncation_radius = Real(radius);

    mpz_class NJ = 0;
    std::vector<mpq_class> ub(K);
    for (int k = 0; k < K; ++k) ub[k] = seq.dist[k].enclosure(bits).hi;
    for (int J = 0; J <= K; ++J) {
        cert.N.push_back(NJ);
        mpq_class bound = radius;
        for (int k = J; k < K; ++k) bound += ub[k];
        cert.tail_bounds.push_back(Real(bound));
        Real actual = (J == 0) ? torus_dist(cert.y_truncated)
                               : torus_dist(affine_orbit_point(x, cert.y_truncated, NJ));
        if (!certified_leq(actual, cert.tail_bounds.back(), ctx,
                           "witness tail bound at K=" + std::to_string(J)))
            throw DomainError("witness construction failed its own tail bound at K=" +
                              std::to_string(J));
        if (J < K) NJ += seq.n[J];
    }
    return cert;
}

SumReport verify_witness(const WitnessCertificate& cert, const mpz_class& ell,
                         const mpz_class& N, const PrecisionContext& ctx) {
    if (ell < 1 || N < ell) throw DomainError("verify_witness: need 1 <= ell <= N");
    const TorusVector& x = cert.x();
    const int d = x.dim();
    long bits = std::max(96L, ctx.initial_bits);

    int K_ell = -1;
    for (int J = 1; J <= cert.K_used; ++J) {
        if (cert.N[J] >= ell) {
            K_ell = J;
            break;
        }
    }
    if (K_ell < 0) throw DomainError("verify_witness: ell beyond the certified range");

    // the majorant can be nearly tight (the record values sit exactly at
    // the N_J anchors), so the sum needs enough working precision for the
    // comparison to resolve against the sub-2^{-80} analytic margin
    PrecisionContext sum_ctx = ctx;
    sum_ctx.initial_bits = std::max(ctx.initial_bits, 320L);
    Real S = partial_S(x, cert.y_truncated, ell, N, SumSpec::plain(d), sum_ctx);

    // majorant: head terms bounded by the distance at ell, then runs
    // anchored at each N_J bounded by the certified tail bounds
    // each per-term bound carries an explicit 2^{-96} pad: the bounds can be
    // term-by-term tight, and the pad keeps the (still valid) majorant
    // strictly above the interval fat of the evaluated sum
    mpq_class pad(mpz_class(1), mpz_class(1) << 96);
    mpq_class maj = 0;
    mpz_class head_end = cert.N[K_ell] - 1;
    if (head_end > N) head_end = N;
    if (head_end >= ell) {
        mpq_class h = torus_dist(affine_orbit_point(x, cert.y_truncated, ell))
                          .enclosure(bits)
                          .hi;
        maj += mpq_class(head_end - ell + 1) * (pow_int(Interval::point(h), d).hi + pad);
    }
    for (int J = K_ell; J <= cert.K_used; ++J) {
        mpz_class lo = cert.N[J] < ell ? ell : cert.N[J];
        mpz_class hi = (J < cert.K_used) ? cert.N[J + 1] - 1 : N;
        if (hi > N) hi = N;
        if (lo > hi) continue;
        mpq_class b = cert.tail_bounds[J].enclosure(bits).hi;
        maj += mpq_class(hi - lo + 1) * (pow_int(Interval::point(b), d).hi + pad);
    }
    Real M{maj};

    SumReport report;
    report.partial_sums.push_back({N, S});
    report.majorant = M;
    switch (compare(S, M, ctx)) {
        case Cmp::Less:
        case Cmp::Equal:
            report.verdict = Verdict::Converging;
            report.certificate = "partial sum bounded by the certificate majorant " +
                                 to_decimal_string(maj, 12);
            break;
        case Cmp::Greater:
            throw DomainError("certificate refuted at precision " + std::to_string(bits) +
                              ": partial sum exceeds the majorant");
        default:
            report.verdict = Verdict::Inconclusive;
            report.certificate = "partial sum and majorant not separated at the precision ceiling";
            break;
    }
    return report;
}

}  // namespace dio
