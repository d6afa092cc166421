#include "diolab/psi.hpp"

#include <mutex>

#include "diolab/orbit.hpp"

namespace dio {

struct PsiSpec::Rep {
    Form form;

    // table / reciprocal
    std::vector<Real> values;
    std::vector<mpz_class> k;

    // power law
    Real c, alpha;

    // killer
    std::optional<TorusVector> x, y;
    mpz_class ell;
    PrecisionContext ctx;
    mutable std::mutex mu;
    mutable std::vector<Real> memo;  // memo[i] = psi(ell + i)
    mutable std::optional<ExactOrbitWalk> walk;
    mutable mpz_class curmin;
    mutable mpz_class dyadic_cap = 0;

    // power / scaled
    std::shared_ptr<Rep> base;
    Real t;
    mpq_class scale_s;
    mpz_class stride;
};

namespace {

Real eval_rep(const PsiSpec::Rep& rep, const mpz_class& n);

void killer_ensure(const PsiSpec::Rep& rep, const mpz_class& n) {
    mpz_class want = n < rep.ell ? rep.ell : n;
    mpz_class have = rep.ell + (long)rep.memo.size() - 1;
    if (!rep.memo.empty() && want <= have) return;

    if (rep.x->all_exact() && rep.y->all_exact()) {
        if (rep.memo.empty()) {
            rep.walk.emplace(*rep.x, *rep.y, rep.ell);
            rep.curmin = rep.walk->sup_num();
            rep.memo.push_back(Real(mpq_class(rep.curmin) / mpq_class(rep.walk->den())));
        }
        while (rep.ell + (long)rep.memo.size() - 1 < want) {
            rep.walk->step();
            mpz_class d = rep.walk->sup_num();
            if (d < rep.curmin) rep.curmin = d;
            rep.memo.push_back(Real(mpq_class(rep.curmin) / mpq_class(rep.walk->den())));
        }
        return;
    }
    // irrational input: rebuild the whole prefix at a precision chosen for
    // a doubling cap, so amortized cost stays linear
    if (want > rep.dyadic_cap) {
        mpz_class cap = rep.dyadic_cap > 0 ? rep.dyadic_cap : mpz_class(16);
        while (cap < want) cap *= 2;
        long bits = std::max(rep.ctx.initial_bits,
                             (long)mpz_sizeinbase(cap.get_mpz_t(), 2) + 16);
        std::vector<Real> fresh;
        DyadicOrbitWalk walk(*rep.x, *rep.y, bits, rep.ell);
        Interval cur = walk.sup_dist();
        fresh.push_back(Real::from_interval(cur, "killer"));
        for (mpz_class m = rep.ell; m < cap; ) {
            walk.step();
            ++m;
            cur = imin(cur, walk.sup_dist());
            fresh.push_back(Real::from_interval(cur, "killer"));
        }
        rep.memo = std::move(fresh);
        rep.dyadic_cap = cap;
    }
}

Real eval_rep(const PsiSpec::Rep& rep, const mpz_class& n) {
    using Form = PsiSpec::Form;
    switch (rep.form) {
        case Form::Table: {
            mpz_class idx = n;
            if (idx > (long)rep.values.size()) idx = (long)rep.values.size();
            return rep.values[idx.get_si() - 1];
        }
        case Form::PowerLaw: {
            if (rep.alpha.is_exact() && rep.alpha.exact() == 0) return rep.c;
            return rep.c * Real(n).pow(rep.alpha).inverse();
        }
        case Form::Reciprocal: {
            mpz_class idx = n;
            if (idx > (long)rep.k.size()) idx = (long)rep.k.size();
            return Real(mpq_class(1, rep.k[idx.get_si() - 1]));
        }
        case Form::Killer: {
            std::lock_guard<std::mutex> lock(rep.mu);
            killer_ensure(rep, n);
            mpz_class i = (n < rep.ell ? rep.ell : n) - rep.ell;
            return rep.memo[i.get_si()];
        }
        case Form::Power:
            return eval_rep(*rep.base, n).pow(rep.t);
        case Form::Scaled:
            return Real(rep.scale_s) * eval_rep(*rep.base, rep.stride * n);
    }
    throw DomainError("PsiSpec: unknown form");
}

void check_nonneg(const Real& v, const PrecisionContext& ctx, const std::string& what) {
    if (v.is_exact()) {
        if (v.exact() < 0) throw DomainError(what + " must be nonnegative");
        return;
    }
    if (!certified_leq(Real(0), v, ctx, what)) throw DomainError(what + " must be nonnegative");
}

}  // namespace

PsiSpec PsiSpec::table(std::vector<Real> values, const PrecisionContext& ctx) {
    if (values.empty()) throw DomainError("psi table must be nonempty");
    for (size_t i = 0; i < values.size(); ++i) {
        check_nonneg(values[i], ctx, "psi value");
        if (i > 0 && !certified_leq(values[i], values[i - 1], ctx, "psi monotonicity"))
            throw DomainError("psi table must be non-increasing");
    }
    auto rep = std::make_shared<Rep>();
    rep->form = Form::Table;
    rep->values = std::move(values);
    return PsiSpec(std::move(rep));
}

PsiSpec PsiSpec::constant(Real c, const PrecisionContext& ctx) {
    return table({std::move(c)}, ctx);
}

PsiSpec PsiSpec::power_law(Real c, Real alpha, const PrecisionContext& ctx) {
    check_nonneg(c, ctx, "power-law scale");
    check_nonneg(alpha, ctx, "power-law exponent");
    auto rep = std::make_shared<Rep>();
    rep->form = Form::PowerLaw;
    rep->c = std::move(c);
    rep->alpha = std::move(alpha);
    return PsiSpec(std::move(rep));
}

PsiSpec PsiSpec::reciprocal(std::vector<mpz_class> k) {
    if (k.empty()) throw DomainError("reciprocal sequence must be nonempty");
    for (size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 1) throw DomainError("reciprocal sequence entries must be >= 1");
        if (i > 0 && k[i] < k[i - 1])
            throw DomainError("reciprocal sequence must be non-decreasing");
    }
    auto rep = std::make_shared<Rep>();
    rep->form = Form::Reciprocal;
    rep->k = std::move(k);
    return PsiSpec(std::move(rep));
}

PsiSpec PsiSpec::power(PsiSpec base, Real t, const PrecisionContext& ctx) {
    if (!certified_less(Real(0), t, ctx, "psi power exponent"))
        throw DomainError("psi power exponent must be positive");
    auto rep = std::make_shared<Rep>();
    rep->form = Form::Power;
    rep->base = base.rep_;
    rep->t = std::move(t);
    return PsiSpec(std::move(rep));
}

PsiSpec killer_psi(TorusVector x, TorusVector y, const mpz_class& ell,
                   const PrecisionContext& ctx) {
    if (x.dim() != y.dim()) throw DomainError("killer_psi: dimension mismatch");
    if (ell < 1) throw DomainError("killer_psi: ell must be >= 1");
    auto rep = std::make_shared<PsiSpec::Rep>();
    rep->form = PsiSpec::Form::Killer;
    rep->x = std::move(x);
    rep->y = std::move(y);
    rep->ell = ell;
    rep->ctx = ctx;
    return PsiSpec(std::move(rep));
}

Real PsiSpec::eval(const mpz_class& n) const {
    if (n < 1) throw DomainError("psi is defined on n >= 1");
    return eval_rep(*rep_, n);
}

PsiSpec::Form PsiSpec::form() const { return rep_->form; }

std::string PsiSpec::form_name() const {
    switch (rep_->form) {
        case Form::Table: return "table";
        case Form::PowerLaw: return "power-law";
        case Form::Reciprocal: return "reciprocal";
        case Form::Killer: return "killer";
        case Form::Power: return "power";
        case Form::Scaled: return "scaled";
    }
    return "?";
}

std::optional<PsiSpec::PowerLawView> PsiSpec::as_power_law() const {
    const Rep& r = *rep_;
    switch (r.form) {
        case Form::PowerLaw:
            return PowerLawView{r.c, r.alpha};
        case Form::Table:
        case Form::Reciprocal: {
            // eventually constant by the extension rule
            Real last = r.form == Form::Table ? r.values.back()
                                              : Real(mpq_class(1, r.k.back()));
            return PowerLawView{last, Real(0)};
        }
        case Form::Power: {
            auto b = PsiSpec(r.base).as_power_law();
            if (!b) return std::nullopt;
            return PowerLawView{b->c.pow(r.t), b->alpha * r.t};
        }
        case Form::Scaled: {
            auto b = PsiSpec(r.base).as_power_law();
            if (!b) return std::nullopt;
            // s * c (u n)^(-alpha) = (s c u^(-alpha)) n^(-alpha)
            Real c = Real(r.scale_s) * b->c;
            if (!(b->alpha.is_exact() && b->alpha.exact() == 0))
                c = c * Real(r.stride).pow(b->alpha).inverse();
            return PowerLawView{c, b->alpha};
        }
        default:
            return std::nullopt;
    }
}

ReciprocalSeq discretize_reciprocal(const PsiSpec& psi, const mpz_class& prefix,
                                    const PrecisionContext& ctx) {
    if (prefix < 1) throw DomainError("discretize_reciprocal: prefix must be >= 1");
    ReciprocalSeq seq;
    for (mpz_class n = 1; n <= prefix; ++n) {
        Real v = psi.eval(n);
        if (is_exact_zero(v)) throw DomainError("discretization undefined at zero");
        mpz_class kn = certified_ceil(v.inverse(), ctx);
        if (kn < 1) throw DomainError("discretization undefined: psi exceeds 1/0");
        if (!seq.k.empty() && kn < seq.k.back())
            throw DomainError("discretization produced a decreasing sequence; psi is not non-increasing");
        seq.k.push_back(kn);
    }
    return seq;
}

PsiSpec transform_contract(const PsiSpec& psi, const mpz_class& u) {
    if (u < 1) throw DomainError("contraction factor must be >= 1");
    if (psi.rep_->form == PsiSpec::Form::PowerLaw) {
        const auto& r = *psi.rep_;
        // (1/u) c (u n)^(-alpha) = (c u^(-alpha-1)) n^(-alpha)
        Real c = r.c * Real(u).pow(r.alpha + Real(1)).inverse();
        return PsiSpec::power_law(c, r.alpha);
    }
    if (u == 1) return psi;
    auto rep = std::make_shared<PsiSpec::Rep>();
    rep->form = PsiSpec::Form::Scaled;
    rep->base = psi.rep_;
    rep->scale_s = mpq_class(1, u);
    rep->stride = u;
    return PsiSpec(std::move(rep));
}

PsiSpec transform_dilate(const PsiSpec& psi, const mpz_class& v) {
    if (v < 1) throw DomainError("dilation factor must be >= 1");
    if (v == 1) return psi;
    const auto& r = *psi.rep_;
    if (r.form == PsiSpec::Form::PowerLaw) {
        Real c = r.c;
        if (!(r.alpha.is_exact() && r.alpha.exact() == 0))
            c = c * Real(v).pow(r.alpha).inverse();
        return PsiSpec::power_law(c, r.alpha);
    }
    if (r.form == PsiSpec::Form::Table) {
        // re-index the finite prefix by v n; the extension rule covers the rest
        std::vector<Real> vals;
        for (mpz_class n = 1; (n - 1) * v < (long)r.values.size(); ++n) {
            mpz_class idx = n * v;
            if (idx > (long)r.values.size()) idx = (long)r.values.size();
            vals.push_back(r.values[idx.get_si() - 1]);
        }
        auto rep = std::make_shared<PsiSpec::Rep>();
        rep->form = PsiSpec::Form::Table;
        rep->values = std::move(vals);
        return PsiSpec(std::move(rep));
    }
    auto rep = std::make_shared<PsiSpec::Rep>();
    rep->form = PsiSpec::Form::Scaled;
    rep->base = psi.rep_;
    rep->scale_s = 1;
    rep->stride = v;
    return PsiSpec(std::move(rep));
}

std::vector<mpz_class> membership_W(const TorusVector& x, const TorusVector& y,
                                    const PsiSpec& psi, const mpz_class& N,
                                    const PrecisionContext& ctx) {
    if (x.dim() != y.dim()) throw DomainError("membership_W: dimension mismatch");
    if (N < 1) throw DomainError("membership_W: N must be >= 1");
    std::vector<mpz_class> hits;
    if (x.all_exact() && y.all_exact()) {
        ExactOrbitWalk walk(x, y, 1);
        for (mpz_class n = 1; n <= N; walk.step(), ++n) {
            Real dist(mpq_class(walk.sup_num()) / mpq_class(walk.den()));
            Real pv = psi.eval(n);
            if (certified_less(dist, pv, ctx, "membership at n=" + n.get_str()))
                hits.push_back(n);
        }
        return hits;
    }
    for (mpz_class n = 1; n <= N; ++n) {
        Real dist = torus_dist(affine_orbit_point(x, y, n));
        Real pv = psi.eval(n);
        if (certified_less(dist, pv, ctx, "membership at n=" + n.get_str()))
            hits.push_back(n);
    }
    return hits;
}

SumReport divergence_check_D(const PsiSpec& psi, int d,
                             const std::vector<mpz_class>& schedule,
                             const DiagnosticOptions& opts, const PrecisionContext& ctx) {
    if (d < 1) throw DomainError("divergence_check_D: d must be >= 1");
    if (schedule.empty()) throw DomainError("divergence_check_D: empty schedule");
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw DomainError("divergence_check_D: schedule must be increasing");

    SumReport report;
    long bits = std::max(96L, ctx.initial_bits);
    mpq_class acc_lo = 0, acc_hi = 0;
    bool all_exact = true;
    mpz_class n = 1;
    for (const auto& N : schedule) {
        for (; n <= N; ++n) {
            Interval term = psi.eval(n).pow(mpq_class(d)).enclosure(bits);
            acc_lo += term.lo;
            acc_hi += term.hi;
            if (!term.is_point()) all_exact = false;
        }
        Real s = (all_exact && acc_lo == acc_hi)
                     ? Real(acc_lo)
                     : Real::from_interval(Interval(acc_lo, acc_hi), "psi partial sum");
        report.partial_sums.push_back({N, s});
    }

    if (auto pl = psi.as_power_law()) {
        if (is_exact_zero(pl->c)) {
            report.verdict = Verdict::Converging;
            report.certificate = "exact: psi vanishes identically beyond its prefix";
            return report;
        }
        bool positive = pl->c.is_exact() ? pl->c.exact() > 0
                                         : certified_less(Real(0), pl->c, ctx);
        if (positive) {
            Real ad = pl->alpha * Real(d);
            Cmp c = compare(ad, Real(1), ctx);
            if (c == Cmp::Less || c == Cmp::Equal) {
                report.verdict = Verdict::Diverging;
                report.certificate = "exact: power law with alpha * d <= 1";
            } else if (c == Cmp::Greater) {
                report.verdict = Verdict::Converging;
                report.certificate = "exact: power law with alpha * d > 1";
            }
            if (c != Cmp::Undecided) return report;
        }
    }

    // heuristic signatures on schedule increments
    int R = opts.converging_window;
    if ((int)report.partial_sums.size() > R) {
        std::vector<mpq_class> diffs;
        for (size_t i = 1; i < report.partial_sums.size(); ++i) {
            Interval a = report.partial_sums[i].second.enclosure(bits);
            Interval b = report.partial_sums[i - 1].second.enclosure(bits);
            mpq_class diff = a.hi - b.lo;
            if (diff < 0) diff = 0;
            diffs.push_back(diff);
        }
        bool conv = true;
        for (size_t i = diffs.size() - R; i < diffs.size() && conv; ++i) {
            if (diffs[i] > opts.converging_eps) conv = false;
            if (i > diffs.size() - R && diffs[i] > opts.converging_ratio * diffs[i - 1])
                conv = false;
        }
        if (conv) {
            report.verdict = Verdict::Converging;
            return report;
        }
        // no decay: the last increments stay a fixed fraction of the first
        mpq_class thr = opts.diverging_fraction * diffs.front();
        bool div = thr > 0;
        for (size_t i = diffs.size() - R; i < diffs.size() && div; ++i) {
            Interval a = report.partial_sums[i + 1].second.enclosure(bits);
            Interval b = report.partial_sums[i].second.enclosure(bits);
            if (a.lo - b.hi < thr) div = false;
        }
        if (div) {
            report.verdict = Verdict::Diverging;
            return report;
        }
    }
    report.verdict = Verdict::Inconclusive;
    return report;
}

}  // namespace dio
