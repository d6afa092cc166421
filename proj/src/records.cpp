#include "diolab/records.hpp"

#include <thread>

namespace dio {

long RecordSequence::last_record_before(const mpz_class& n) const {
    long best = -1;
    for (size_t k = 0; k < entries.size(); ++k) {
        if (entries[k].t <= n) best = (long)k;
    }
    return best;
}

namespace {

RecordSequence scan_exact(const TorusVector& x, const TorusVector& y, const mpz_class& N,
                          const mpz_class& start) {
    RecordSequence rs{x, y, start, N, {}, false};
    ExactOrbitWalk walk(x, y, start);
    mpz_class cur_min = -1;
    for (mpz_class t = start; t <= N; walk.step(), ++t) {
        mpz_class d = walk.sup_num();
        if (cur_min < 0 || d < cur_min) {
            cur_min = d;
            rs.entries.push_back({t, Real(mpq_class(d) / mpq_class(walk.den()))});
            if (d == 0) {
                rs.hit_zero = true;
                break;
            }
        }
    }
    return rs;
}

RecordSequence scan_dyadic(const TorusVector& x, const TorusVector& y, const mpz_class& N,
                           const mpz_class& start, const PrecisionContext& ctx) {
    long need = mpz_sizeinbase(N.get_mpz_t(), 2) + 16;
    for (long bits = std::max(ctx.initial_bits, need); bits <= ctx.max_bits; bits *= 2) {
        RecordSequence rs{x, y, start, N, {}, false};
        DyadicOrbitWalk walk(x, y, bits, start);
        mpz_class min_mid = -1, min_err = 0;
        mpz_class min_t = 0;
        bool retry = false;
        for (mpz_class t = start; t <= N; walk.step(), ++t) {
            mpz_class d = walk.sup_num();
            const mpz_class& e = walk.err();
            if (min_mid < 0) {
                min_mid = d;
                min_err = e;
                min_t = t;
                rs.entries.push_back({t, Real::from_interval(walk.sup_dist())});
                continue;
            }
            if (d + e < min_mid - min_err) {
                min_mid = d;
                min_err = e;
                min_t = t;
                rs.entries.push_back({t, Real::from_interval(walk.sup_dist())});
            } else if (d - e >= min_mid + min_err) {
                // certified non-record
            } else {
                retry = true;
                break;
            }
        }
        if (!retry) return rs;
        if (bits * 2 > ctx.max_bits)
            throw PrecisionError("scan_records: comparison between t=" +
                                 walk.n().get_str() + " and record t=" + min_t.get_str() +
                                 " undecided at precision ceiling");
    }
    throw PrecisionError("scan_records: precision ceiling below required scan precision");
}

}  // namespace

RecordSequence scan_records(const TorusVector& x, const TorusVector& y, const mpz_class& N,
                            const mpz_class& start, const PrecisionContext& ctx) {
    if (x.dim() != y.dim()) throw DomainError("scan_records: dimension mismatch");
    if (N < start || start < 1) throw DomainError("scan_records: need 1 <= start <= N");
    if (x.all_exact() && y.all_exact()) return scan_exact(x, y, N, start);
    return scan_dyadic(x, y, N, start, ctx);
}

RecordSequence scan_records_parallel(const TorusVector& x, const TorusVector& y,
                                     const mpz_class& N, int jobs,
                                     const PrecisionContext& ctx) {
    if (!(x.all_exact() && y.all_exact()))
        return scan_records(x, y, N, 1, ctx);
    if (jobs < 1) jobs = 1;
    if (!N.fits_slong_p()) throw DomainError("parallel scan bound too large");
    long n = N.get_si();
    long block = std::max(1L, (n + jobs - 1) / jobs);

    // Per-block record candidates relative to the block-local running min.
    struct Cand {
        long t;
        mpq_class delta;
    };
    std::vector<std::vector<Cand>> cands((n + block - 1) / block);
    std::vector<std::thread> threads;
    for (size_t b = 0; b < cands.size(); ++b) {
        threads.emplace_back([&, b]() {
            long lo = 1 + (long)b * block;
            long hi = std::min(n, lo + block - 1);
            ExactOrbitWalk walk(x, y, lo);
            mpz_class cur = -1;
            for (long t = lo; t <= hi; walk.step(), ++t) {
                mpz_class d = walk.sup_num();
                if (cur < 0 || d < cur) {
                    cur = d;
                    cands[b].push_back({t, mpq_class(d) / mpq_class(walk.den())});
                    if (d == 0) break;
                }
            }
        });
    }
    for (auto& th : threads) th.join();

    // sequential merge against the global running minimum
    RecordSequence rs{x, y, 1, N, {}, false};
    bool have = false;
    mpq_class global;
    for (const auto& blockc : cands) {
        for (const auto& c : blockc) {
            if (!have || c.delta < global) {
                global = c.delta;
                have = true;
                rs.entries.push_back({mpz_class(c.t), Real(c.delta)});
                if (c.delta == 0) {
                    rs.hit_zero = true;
                    return rs;
                }
            }
        }
    }
    return rs;
}

Real window_min(const TorusVector& x, const TorusVector& y, const mpz_class& ell,
                const mpz_class& n, const PrecisionContext& ctx) {
    if (x.dim() != y.dim()) throw DomainError("window_min: dimension mismatch");
    if (ell < 1 || n < ell) throw DomainError("window_min: need 1 <= ell <= n");
    if (x.all_exact() && y.all_exact()) {
        ExactOrbitWalk walk(x, y, ell);
        mpz_class best = walk.sup_num();
        for (mpz_class m = ell; m < n && best != 0; ) {
            walk.step();
            ++m;
            best = std::min(best, walk.sup_num());
        }
        return Real(mpq_class(best) / mpq_class(walk.den()));
    }
    long need = mpz_sizeinbase(n.get_mpz_t(), 2) + 16;
    long bits = std::max(ctx.initial_bits, need);
    DyadicOrbitWalk walk(x, y, bits, ell);
    Interval best = walk.sup_dist();
    for (mpz_class m = ell; m < n; ) {
        walk.step();
        ++m;
        best = imin(best, walk.sup_dist());
    }
    return Real::from_interval(best);
}

HomogeneousMin min_homogeneous(const TorusVector& x, const mpz_class& B, int d,
                               const PrecisionContext& ctx) {
    if (B < 1 || d < 1) throw DomainError("min_homogeneous: need B >= 1, d >= 1");
    std::vector<Real> zeros(x.dim(), Real(0));
    TorusVector y(zeros);
    if (x.all_exact()) {
        ExactOrbitWalk walk(x, y, 1);
        mpq_class best;
        mpz_class arg = 1;
        bool have = false;
        mpz_class dend;
        mpz_pow_ui(dend.get_mpz_t(), walk.den().get_mpz_t(), d);
        for (mpz_class t = 1; t <= B; walk.step(), ++t) {
            mpz_class m = walk.sup_num(), mp;
            mpz_pow_ui(mp.get_mpz_t(), m.get_mpz_t(), d);
            mpq_class v = mpq_class(t * mp) / mpq_class(dend);
            if (!have || v < best) {
                best = v;
                arg = t;
                have = true;
                if (v == 0) break;
            }
        }
        return {Real(best), arg};
    }
    long need = mpz_sizeinbase(B.get_mpz_t(), 2) + 16;
    long bits = std::max(ctx.initial_bits, need);
    DyadicOrbitWalk walk(x, y, bits, 1);
    // track min of lower and upper bounds separately; no comparisons can
    // become undecided this way
    mpz_class best_lo, best_hi, arg = 1;
    bool have = false;
    mpz_class sc;
    mpz_pow_ui(sc.get_mpz_t(), walk.scale().get_mpz_t(), d);
    for (mpz_class t = 1; t <= B; walk.step(), ++t) {
        mpz_class m = walk.sup_num();
        mpz_class lo = m - walk.err(), hi = m + walk.err();
        if (lo < 0) lo = 0;
        mpz_class lop, hip;
        mpz_pow_ui(lop.get_mpz_t(), lo.get_mpz_t(), d);
        mpz_pow_ui(hip.get_mpz_t(), hi.get_mpz_t(), d);
        lop *= t;
        hip *= t;
        if (!have) {
            best_lo = lop;
            best_hi = hip;
            arg = t;
            have = true;
        } else {
            if (lop < best_lo) best_lo = lop;
            if (hip < best_hi) {
                best_hi = hip;
                arg = t;
            }
        }
    }
    return {Real::from_interval(Interval(mpq_class(best_lo) / mpq_class(sc),
                                         mpq_class(best_hi) / mpq_class(sc))),
            arg};
}

}  // namespace dio
