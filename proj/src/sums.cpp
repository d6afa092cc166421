#include "diolab/sums.hpp"

#include "diolab/exact_rational.hpp"

namespace dio {

SumSpec SumSpec::plain(int d) {
    if (d < 1) throw DomainError("SumSpec: d must be >= 1");
    SumSpec s;
    s.regime_ = Regime::Plain;
    s.d_ = d;
    s.e_ = Real(d);
    return s;
}

SumSpec SumSpec::weighted(Weights r) {
    SumSpec s;
    s.regime_ = Regime::Weighted;
    s.d_ = r.dim();
    s.e_ = Real(r.dim());  // per-term exponent after folding: max_i ||.||^{1/r_i}
    s.w_ = std::move(r);
    return s;
}

SumSpec SumSpec::sigma(int d, Real sigma_value, const PrecisionContext& ctx) {
    if (d < 1) throw DomainError("SumSpec: d must be >= 1");
    Exponent ex(sigma_value, d, ctx);
    SumSpec s;
    s.regime_ = Regime::Sigma;
    s.d_ = d;
    s.e_ = ex.sum_exponent();
    return s;
}

const Weights& SumSpec::weights() const {
    if (!w_) throw DomainError("SumSpec: no weights in this regime");
    return *w_;
}

bool SumSpec::reduces_to_plain() const {
    return regime_ != Regime::Weighted || w_->is_uniform();
}

std::optional<unsigned long> SumSpec::int_exponent() const {
    if (regime_ == Regime::Weighted) {
        if (!w_->is_uniform()) return std::nullopt;
        return (unsigned long)d_;
    }
    if (e_.is_exact() && e_.exact().get_den() == 1 && e_.exact().get_num().fits_ulong_p())
        return e_.exact().get_num().get_ui();
    return std::nullopt;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Diverging: return "diverging";
        case Verdict::Converging: return "converging";
        default: return "inconclusive";
    }
}

namespace {

// Accumulates sum of value^e over runs of a non-increasing sequence of
// window minima. Exact when the values are exact rationals and e is a
// nonnegative integer; otherwise an outward-rounded interval.
struct PowAccum {
    std::optional<unsigned long> int_e;
    mpq_class e_lo, e_hi;  // used when !int_e
    long bits;
    bool exact = true;
    mpq_class acc_lo = 0, acc_hi = 0;

    PowAccum(const SumSpec& spec, const PrecisionContext& ctx) {
        int_e = spec.int_exponent();
        bits = std::max(96L, ctx.initial_bits);
        if (!int_e) {
            if (spec.exponent().is_exact()) {
                e_lo = e_hi = spec.exponent().exact();
            } else {
                Interval iv = spec.exponent().enclosure(bits);
                e_lo = iv.lo;
                e_hi = iv.hi;
            }
        }
    }

    void add_point(const mpq_class& v, const mpz_class& len) {
        add(Interval::point(v), len);
    }

    void add(const Interval& v, const mpz_class& len) {
        Interval p;
        if (int_e) {
            p = pow_int(v, *int_e);
        } else {
            p = pow_frac(v, e_lo, e_hi, bits);
            exact = false;
        }
        acc_lo += mpq_class(len) * p.lo;
        acc_hi += mpq_class(len) * p.hi;
        if (!p.is_point()) exact = false;
    }

    Real result() const {
        if (exact && acc_lo == acc_hi) return Real(acc_lo);
        return Real::from_interval(Interval(acc_lo, acc_hi), "partial_S");
    }
};

Real partial_plain_exact(const TorusVector& x, const TorusVector& y, const mpz_class& ell,
                         const mpz_class& N, const SumSpec& spec, const PrecisionContext& ctx) {
    ExactOrbitWalk walk(x, y, ell);
    auto int_e = spec.int_exponent();
    const mpz_class den = walk.den();
    mpz_class cur = walk.sup_num();
    mpz_class run_len = 1;
    if (int_e) {
        mpz_class acc = 0, dpow;
        mpz_pow_ui(dpow.get_mpz_t(), den.get_mpz_t(), *int_e);
        auto flush = [&](const mpz_class& v, const mpz_class& len) {
            if (len == 0) return;
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), v.get_mpz_t(), *int_e);
            acc += p * len;
        };
        for (mpz_class n = ell; n < N && cur != 0; ) {
            walk.step();
            ++n;
            mpz_class d = walk.sup_num();
            if (d < cur) {
                flush(cur, run_len);
                cur = d;
                run_len = 1;
            } else {
                ++run_len;
            }
        }
        if (cur != 0) flush(cur, run_len);
        return Real(mpq_class(acc) / mpq_class(dpow));
    }
    PowAccum accum(spec, ctx);
    for (mpz_class n = ell; n < N && cur != 0; ) {
        walk.step();
        ++n;
        mpz_class d = walk.sup_num();
        if (d < cur) {
            accum.add_point(mpq_class(cur) / mpq_class(den), run_len);
            cur = d;
            run_len = 1;
        } else {
            ++run_len;
        }
    }
    if (cur != 0) accum.add_point(mpq_class(cur) / mpq_class(den), run_len);
    return accum.result();
}

Real partial_plain_dyadic(const TorusVector& x, const TorusVector& y, const mpz_class& ell,
                          const mpz_class& N, const SumSpec& spec, const PrecisionContext& ctx) {
    long need = mpz_sizeinbase(N.get_mpz_t(), 2) + 16;
    long bits = std::max(ctx.initial_bits, need);
    DyadicOrbitWalk walk(x, y, bits, ell);
    const mpz_class& scale = walk.scale();
    // static per-m bounds (num - err, num + err); running minima of each
    auto bounds = [&](mpz_class& lo, mpz_class& hi) {
        mpz_class m = walk.sup_num();
        lo = m - walk.err();
        if (lo < 0) lo = 0;
        hi = m + walk.err();
    };
    mpz_class cur_lo, cur_hi;
    bounds(cur_lo, cur_hi);
    auto int_e = spec.int_exponent();
    if (int_e) {
        mpz_class acc_lo = 0, acc_hi = 0, spow;
        mpz_pow_ui(spow.get_mpz_t(), scale.get_mpz_t(), *int_e);
        mpz_class run_lo = 1, run_hi = 1;
        auto flush = [&](mpz_class& acc, const mpz_class& v, const mpz_class& len) {
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), v.get_mpz_t(), *int_e);
            acc += p * len;
        };
        for (mpz_class n = ell; n < N; ) {
            walk.step();
            ++n;
            mpz_class lo, hi;
            bounds(lo, hi);
            if (lo < cur_lo) {
                flush(acc_lo, cur_lo, run_lo);
                cur_lo = lo;
                run_lo = 1;
            } else {
                ++run_lo;
            }
            if (hi < cur_hi) {
                flush(acc_hi, cur_hi, run_hi);
                cur_hi = hi;
                run_hi = 1;
            } else {
                ++run_hi;
            }
        }
        flush(acc_lo, cur_lo, run_lo);
        flush(acc_hi, cur_hi, run_hi);
        return Real::from_interval(Interval(mpq_class(acc_lo) / mpq_class(spow),
                                            mpq_class(acc_hi) / mpq_class(spow)),
                                   "partial_S");
    }
    PowAccum alo(spec, ctx), ahi(spec, ctx);
    mpz_class run_lo = 1, run_hi = 1;
    for (mpz_class n = ell; n < N; ) {
        walk.step();
        ++n;
        mpz_class lo, hi;
        bounds(lo, hi);
        if (lo < cur_lo) {
            alo.add_point(mpq_class(cur_lo) / mpq_class(scale), run_lo);
            cur_lo = lo;
            run_lo = 1;
        } else {
            ++run_lo;
        }
        if (hi < cur_hi) {
            ahi.add_point(mpq_class(cur_hi) / mpq_class(scale), run_hi);
            cur_hi = hi;
            run_hi = 1;
        } else {
            ++run_hi;
        }
    }
    alo.add_point(mpq_class(cur_lo) / mpq_class(scale), run_lo);
    ahi.add_point(mpq_class(cur_hi) / mpq_class(scale), run_hi);
    return Real::from_interval(Interval(alo.result().enclosure(bits).lo,
                                        ahi.result().enclosure(bits).hi),
                               "partial_S");
}

// Per-step weighted term max_i dist_i^{1/r_i} as an interval (or point).
Interval weighted_term_exact(const ExactOrbitWalk& walk, const Weights& w, long bits) {
    Interval best = Interval::point(0);
    for (int i = 0; i < walk.dim(); ++i) {
        mpq_class di = mpq_class(walk.coord_dist_num(i)) / mpq_class(walk.den());
        mpq_class invr = w.inv_exact(i);
        Interval p;
        if (invr.get_den() == 1 && invr.get_num().fits_ulong_p()) {
            p = pow_int(Interval::point(di), invr.get_num().get_ui());
        } else {
            p = pow_frac(Interval::point(di), invr, bits);
        }
        best = imax(best, p);
    }
    return best;
}

Real partial_weighted(const TorusVector& x, const TorusVector& y, const mpz_class& ell,
                      const mpz_class& N, const SumSpec& spec, const PrecisionContext& ctx) {
    const Weights& w = spec.weights();
    long bits = std::max(ctx.initial_bits, 96L);
    bool exact_in = x.all_exact() && y.all_exact() && w.all_exact();
    // zero weights need the threshold guard from weighted_dist
    for (int i = 0; i < w.dim(); ++i)
        if (w[i].is_exact() && w[i].exact() == 0)
            throw DomainError("weighted sums with a zero weight are not supported");

    mpq_class acc_lo = 0, acc_hi = 0;
    bool all_point = true;
    if (exact_in) {
        ExactOrbitWalk walk(x, y, ell);
        Interval cur = weighted_term_exact(walk, w, bits);
        for (mpz_class n = ell; n < N; ) {
            walk.step();
            ++n;
            cur = imin(cur, weighted_term_exact(walk, w, bits));
            acc_lo += cur.lo;
            acc_hi += cur.hi;
            if (!cur.is_point()) all_point = false;
        }
        // first term
        ExactOrbitWalk w0(x, y, ell);
        Interval first = weighted_term_exact(w0, w, bits);
        acc_lo += first.lo;
        acc_hi += first.hi;
        if (!first.is_point()) all_point = false;
        if (all_point && acc_lo == acc_hi) return Real(acc_lo);
        return Real::from_interval(Interval(acc_lo, acc_hi), "partial_S_weighted");
    }
    long need = mpz_sizeinbase(N.get_mpz_t(), 2) + 16;
    long wb = std::max(bits, need);
    DyadicOrbitWalk walk(x, y, wb, ell);
    auto term = [&]() {
        Interval best = Interval::point(0);
        for (int i = 0; i < walk.dim(); ++i) {
            Interval di = walk.coord_dist(i);
            mpq_class invr = w.inv_exact(i);
            best = imax(best, pow_frac(di, invr, invr, wb));
        }
        return best;
    };
    Interval cur = term();
    acc_lo = cur.lo;
    acc_hi = cur.hi;
    for (mpz_class n = ell; n < N; ) {
        walk.step();
        ++n;
        cur = imin(cur, term());
        acc_lo += cur.lo;
        acc_hi += cur.hi;
    }
    return Real::from_interval(Interval(acc_lo, acc_hi), "partial_S_weighted");
}

}  // namespace

Real partial_S(const TorusVector& x, const TorusVector& y, const mpz_class& ell,
               const mpz_class& N, const SumSpec& spec, const PrecisionContext& ctx) {
    if (x.dim() != y.dim()) throw DomainError("partial_S: dimension mismatch");
    if (x.dim() != spec.dim()) throw DomainError("partial_S: spec dimension mismatch");
    if (ell < 1 || N < ell) throw DomainError("partial_S: need 1 <= ell <= N");
    if (!spec.reduces_to_plain()) return partial_weighted(x, y, ell, N, spec, ctx);
    if (x.all_exact() && y.all_exact()) return partial_plain_exact(x, y, ell, N, spec, ctx);
    return partial_plain_dyadic(x, y, ell, N, spec, ctx);
}

Real partial_S_records(const RecordSequence& rs, const mpz_class& ell, const mpz_class& N,
                       const SumSpec& spec, const PrecisionContext& ctx) {
    if (rs.start != ell)
        throw DomainError("partial_S_records: record sequence must start at ell");
    if (rs.scan_bound < N && !rs.hit_zero)
        throw DomainError("partial_S_records: insufficient scan bound");
    if (!spec.reduces_to_plain())
        throw DomainError("partial_S_records: records are sup-norm based; "
                          "non-uniform weighted regimes are not supported");
    PowAccum accum(spec, ctx);
    for (size_t k = 0; k < rs.entries.size(); ++k) {
        const mpz_class& t = rs.entries[k].t;
        if (t > N) break;
        mpz_class next = (k + 1 < rs.entries.size()) ? rs.entries[k + 1].t : N + 1;
        if (next > N + 1) next = N + 1;
        mpz_class len = next - t;
        const Real& delta = rs.entries[k].delta;
        if (is_exact_zero(delta)) break;  // all later terms vanish
        if (delta.is_exact()) {
            accum.add_point(delta.exact(), len);
        } else {
            accum.add(delta.enclosure(std::max(96L, ctx.initial_bits)), len);
        }
    }
    return accum.result();
}

SumReport divergence_diagnostic(const TorusVector& x, const TorusVector& y,
                                const mpz_class& ell, const std::vector<mpz_class>& schedule,
                                const SumSpec& spec, const DiagnosticOptions& opts,
                                const PrecisionContext& ctx) {
    if (schedule.empty()) throw DomainError("divergence_diagnostic: empty schedule");
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw DomainError("divergence_diagnostic: schedule must be increasing");
    const mpz_class& maxN = schedule.back();

    SumReport report;
    for (const auto& N : schedule) {
        if (N < ell) continue;
        report.partial_sums.push_back({N, partial_S(x, y, ell, N, spec, ctx)});
    }

    // record increments delta_k^e (t_{k+1} - t_k)
    RecordSequence rs = scan_records(x, y, maxN, ell, ctx);
    for (size_t k = 0; k < rs.entries.size(); ++k) {
        mpz_class next = (k + 1 < rs.entries.size()) ? rs.entries[k + 1].t : maxN + 1;
        mpz_class len = next - rs.entries[k].t;
        PowAccum one(spec, ctx);
        if (rs.entries[k].delta.is_exact())
            one.add_point(rs.entries[k].delta.exact(), len);
        else
            one.add(rs.entries[k].delta.enclosure(std::max(96L, ctx.initial_bits)), len);
        report.per_record_increments.push_back({(long)k, one.result()});
    }

    // exact verdicts for rational inputs
    if (x.all_exact() && y.all_exact() && spec.reduces_to_plain()) {
        RationalPair pair = RationalPair::from_torus(x, y);
        IntegerPointResult ip = contains_integer_point(pair);
        if (ip.exists) {
            report.verdict = Verdict::Converging;
            report.certificate = "exact: ||n x + y|| = 0 on the progression n == " +
                                 ip.least_n.get_str() + " (mod " + ip.modulus.get_str() +
                                 "); all terms beyond the first hit vanish";
        } else {
            OrbitSummary os = orbit_summary(pair);
            report.verdict = Verdict::Diverging;
            report.certificate = "exact: rational orbit never meets 0; distance bounded below by " +
                                 os.min_dist.get_str();
        }
        return report;
    }
    if (rs.hit_zero) {
        report.verdict = Verdict::Converging;
        report.certificate = "exact zero hit; all later terms vanish";
        return report;
    }

    // diverging signature: tail record increments bounded below by
    // fraction * c / 2^d with c the empirical homogeneous minimum
    long burn = opts.burn_in_records;
    if ((long)report.per_record_increments.size() > burn + 2) {
        int dh = spec.int_exponent() ? (int)*spec.int_exponent() : spec.dim();
        HomogeneousMin hm = min_homogeneous(x, maxN, dh, ctx);
        mpq_class c_lo = hm.value.enclosure(ctx.initial_bits).lo;
        mpq_class thr = opts.diverging_fraction * c_lo;
        mpz_class twop = mpz_class(1) << dh;
        thr /= mpq_class(twop);
        bool all_above = thr > 0;
        // the final record's run is truncated by the schedule end, so its
        // increment is not a full gap and is excluded from the bound check
        for (size_t k = burn; k + 1 < report.per_record_increments.size() && all_above; ++k) {
            Interval iv = report.per_record_increments[k].second.enclosure(ctx.initial_bits);
            if (iv.lo < thr) all_above = false;
        }
        if (all_above) {
            report.verdict = Verdict::Diverging;
            return report;
        }
    }

    // converging signature: last R schedule increments tiny with geometric decay
    int R = opts.converging_window;
    if ((int)report.partial_sums.size() > R) {
        bool ok = true;
        mpq_class prev = -1;
        for (size_t i = report.partial_sums.size() - R; i < report.partial_sums.size() && ok; ++i) {
            Interval a = report.partial_sums[i].second.enclosure(ctx.initial_bits);
            Interval b = report.partial_sums[i - 1].second.enclosure(ctx.initial_bits);
            mpq_class diff = a.hi - b.lo;
            if (diff < 0) diff = 0;
            if (diff > opts.converging_eps) ok = false;
            if (prev >= 0 && diff > opts.converging_ratio * prev) ok = false;
            prev = diff;
        }
        if (ok) {
            report.verdict = Verdict::Converging;
            return report;
        }
    }
    report.verdict = Verdict::Inconclusive;
    return report;
}

}  // namespace dio
