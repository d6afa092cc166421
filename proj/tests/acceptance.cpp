// Acceptance gate: one pass/fail line per criterion, non-zero exit on any
// failure. Tolerances are pinned in-line; everything marked "exact" uses
// rational arithmetic end to end.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "diolab/contfrac.hpp"
#include "diolab/exact_rational.hpp"
#include "diolab/psi.hpp"
#include "diolab/witness.hpp"

using namespace dio;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, double secs) {
    std::printf("criterion %d: %s - %s (%.1fs)\n", criterion, ok ? "PASS" : "FAIL",
                what.c_str(), secs);
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

mpq_class Q(long n, long d) { return mpq_class(n, d); }

TorusVector tv(std::vector<mpq_class> v) {
    std::vector<Real> c;
    for (auto& q : v) c.push_back(Real(q));
    return TorusVector(c);
}

mpq_class rand_q(std::mt19937& rng, long max_den) {
    std::uniform_int_distribution<long> den(2, max_den);
    long d = den(rng);
    std::uniform_int_distribution<long> num(0, d - 1);
    mpq_class v(num(rng), d);
    v.canonicalize();
    return v;
}

// 1. full rational grid: integer-point decision vs brute force, and
// s_finite vs exact stabilization of the partial sums. Exact, < 60 s.
void criterion1() {
    Timer t;
    bool ok = true;
    long checked = 0;
    for (long qd = 1; qd <= 20 && ok; ++qd) {
        for (long p = 0; p < qd && ok; ++p) {
            for (long bd = 1; bd <= 20 && ok; ++bd) {
                for (long a = 0; a < bd && ok; ++a) {
                    RationalPair pair({Q(p, qd)}, {Q(a, bd)});
                    auto res = contains_integer_point(pair);
                    OrbitSummary os = orbit_summary(pair);
                    long period = os.period.get_si();
                    bool brute = false;
                    for (long n = 1; n <= period && !brute; ++n) {
                        mpq_class v = n * pair.x[0] + pair.y[0];
                        brute = v.get_den() == 1;
                    }
                    if (res.exists != brute) ok = false;
                    Real s1 = partial_S(tv({pair.x[0]}), tv({pair.y[0]}), 1, 2 * period,
                                        SumSpec::plain(1));
                    Real s2 = partial_S(tv({pair.x[0]}), tv({pair.y[0]}), 1, 4 * period,
                                        SumSpec::plain(1));
                    bool stabilized = s1.exact() == s2.exact();
                    if (s_finite(pair, 1) != stabilized) ok = false;
                    if (s_finite(pair, 1) != res.exists) ok = false;
                    ++checked;
                }
            }
        }
    }
    report(1, ok && t.secs() < 60.0,
           "rational grid (denominators <= 20, " + std::to_string(checked) +
               " pairs) matches brute force exactly",
           t.secs());
}

// 2. golden-ratio divergence: record increments past the burn-in exceed
// 1 - 2/phi^2 = (phi-1)/(phi+1) = 0.23606..., certified; partial record sum
// grows at least 0.23 per record. < 30 s.
void criterion2() {
    Timer t;
    bool ok = true;
    Real phi = golden_ratio_cf().value();
    TorusVector x({phi}), y({Real(0)});
    RecordSequence rs = scan_records(x, y, 1000000);
    // complete gaps only: the final record's run is cut off by the bound
    size_t K = rs.entries.size() - 1;
    if (K < 10) ok = false;
    Real bound = (phi - Real(1)) * (phi + Real(1)).inverse();
    mpq_class partial = 0;
    long bits = 160;
    for (size_t k = 0; k + 1 < rs.entries.size(); ++k) {
        mpz_class gap = rs.entries[k + 1].t - rs.entries[k].t;
        Real inc = Real(gap) * rs.entries[k].delta;
        if (k >= 5 && !certified_less(bound, inc)) ok = false;
        partial += inc.enclosure(bits).lo;
    }
    // partial sum over the first K records >= 0.23 (K - 5)
    if (partial < Q(23, 100) * mpq_class((long)K - 5)) ok = false;
    report(2, ok && t.secs() < 30.0,
           "golden-ratio record increments certified > 0.2360 beyond k=5 up to N=10^6",
           t.secs());
}

// 3. record formula vs direct summation: 500 random rational pairs,
// d in {1,2}, ell in {1,2,5}, N = 10^4, exact equality. < 120 s.
void criterion3() {
    Timer t;
    bool ok = true;
    std::mt19937 rng(12345);
    const long N = 10000;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        int d = 1 + (trial % 2);
        std::vector<mpq_class> xs, ys;
        for (int i = 0; i < d; ++i) {
            xs.push_back(rand_q(rng, 50));
            ys.push_back(rand_q(rng, 50));
        }
        for (long ell : {1L, 2L, 5L}) {
            SumSpec spec = SumSpec::plain(d);
            RecordSequence rs = scan_records(tv(xs), tv(ys), N, ell);
            Real a = partial_S(tv(xs), tv(ys), ell, N, spec);
            Real b = partial_S_records(rs, ell, N, spec);
            if (a.exact() != b.exact()) ok = false;
        }
    }
    report(3, ok && t.secs() < 120.0,
           "record formula equals direct summation exactly on 500 random pairs",
           t.secs());
}

// 4. truncation inequality and shift identity, exact on 200 random
// rational instances.
void criterion4() {
    Timer t;
    bool ok = true;
    std::mt19937 rng(54321);
    for (int trial = 0; trial < 200 && ok; ++trial) {
        int d = 1 + (trial % 2);
        std::vector<mpq_class> xs, ys, sh;
        std::uniform_int_distribution<long> kk(1, 10);
        long k = kk(rng);
        for (int i = 0; i < d; ++i) {
            xs.push_back(rand_q(rng, 40));
            ys.push_back(rand_q(rng, 40));
            mpq_class s2 = k * xs[i] + ys[i];
            s2 -= rat_floor(s2);
            sh.push_back(s2);
        }
        SumSpec spec = SumSpec::plain(d);
        long ell = 1 + (trial % 4), N = 400;
        // S_ell <= ||ell x + y||^d + S_{ell+1}
        Real lhs = partial_S(tv(xs), tv(ys), ell, N, spec);
        mpq_class head = 0;
        for (int i = 0; i < d; ++i)
            head = std::max(head, rat_dist_to_int(ell * xs[i] + ys[i]));
        mpq_class hp = head;
        for (int i = 1; i < d; ++i) hp *= head;
        Real rhs = Real{hp} + partial_S(tv(xs), tv(ys), ell + 1, N, spec);
        if (lhs.exact() > rhs.exact()) ok = false;
        // S_{ell+k}(x,y) truncated at N+k equals S_ell(x, kx+y) truncated at N
        Real a = partial_S(tv(xs), tv(ys), ell + k, N + k, spec);
        Real b = partial_S(tv(xs), tv(sh), ell, N, spec);
        if (a.exact() != b.exact()) ok = false;
    }
    report(4, ok, "truncation inequality and shift identity exact on 200 instances",
           t.secs());
}

// 5. witness pipeline on the factorial-gap binary Liouville number, plus
// rejection of the badly approximable inputs phi and sqrt 2 up to 10^6.
void criterion5() {
    Timer t;
    bool ok = true;
    try {
        LiouvilleNumber L = liouville_factorial();
        ApproxSequence seq = select_subsequence_liouville(L, 1, 5, Q(1, 2), 1);
        WitnessCertificate cert = build_witness(seq, 5);
        // anchor bound ||N_J x + y|| <= sum of tail distances + radius, J <= 5
        for (size_t J = 1; J < cert.N.size(); ++J) {
            Real actual =
                torus_dist(affine_orbit_point(cert.x(), cert.y_truncated, cert.N[J]));
            if (!certified_leq(actual, cert.tail_bounds[J])) ok = false;
        }
        SumReport rep = verify_witness(cert, 1, 100000);
        if (rep.verdict != Verdict::Converging) ok = false;
        if (!rep.majorant ||
            !certified_leq(rep.partial_sums.at(0).second, *rep.majorant))
            ok = false;
    } catch (const std::exception&) {
        ok = false;
    }
    // bad-input rejection; the homogeneous minimum for phi over n <= 10^6 is
    // 2 - phi = 0.38196... (attained at n = 1), below every k >= 2 threshold
    for (const auto& cf : {golden_ratio_cf(), sqrt2_cf()}) {
        TorusVector x({cf.value()});
        bool rejected = false;
        try {
            select_subsequence_scan(x, 1000000, 5, Q(1, 2), 1);
        } catch (const DomainError&) {
            rejected = true;
        }
        if (!rejected) ok = false;
    }
    HomogeneousMin hm =
        min_homogeneous(TorusVector({golden_ratio_cf().value()}), 1000000, 1);
    if (hm.argmin != 1) ok = false;
    Interval c = hm.value.enclosure(128);
    if (!(c.lo > Q(38, 100) && c.hi < Q(39, 100))) ok = false;
    report(5, ok && t.secs() < 60.0,
           "witness pipeline converges; phi and sqrt2 rejected up to B=10^6",
           t.secs());
}

// 6. psi-class laws: discretization domination, killer exclusion, and
// scaling solution transport; exact on rationals.
void criterion6() {
    Timer t;
    bool ok = true;
    std::mt19937 rng(777);

    // discretization domination on 50 random specs, 10^3 sampled n
    for (int trial = 0; trial < 50 && ok; ++trial) {
        PsiSpec psi = [&]() {
            switch (trial % 4) {
                case 0: return PsiSpec::constant(Real{rand_q(rng, 30) + Q(1, 31)});
                case 1: return PsiSpec::power_law(Real{rand_q(rng, 9) + Q(1, 10)},
                                                  Real{mpq_class(1 + trial % 2)});
                case 2: {
                    std::vector<mpz_class> k{2};
                    for (int i = 0; i < 6; ++i)
                        k.push_back(k.back() + (rng() % 3));
                    return PsiSpec::reciprocal(std::move(k));
                }
                default: {
                    std::vector<Real> vals;
                    mpq_class v = Q(1, 2);
                    for (int i = 0; i < 5; ++i) {
                        vals.push_back(Real{v});
                        v /= 1 + (long)(rng() % 2) + 1;
                    }
                    return PsiSpec::table(std::move(vals));
                }
            }
        }();
        ReciprocalSeq ks = discretize_reciprocal(psi, 1000);
        PsiSpec disc = ks.to_psi();
        for (long n = 1; n <= 1000; ++n)
            if (disc.eval(n).exact() > psi.eval(n).exact()) ok = false;
    }

    // killer exclusion on 100 random rational (x, y, ell)
    for (int trial = 0; trial < 100 && ok; ++trial) {
        mpq_class xq = rand_q(rng, 20), yq = rand_q(rng, 20);
        long ell = 1 + (long)(rng() % 6);
        PsiSpec killer = killer_psi(tv({xq}), tv({yq}), ell);
        for (const auto& n : membership_W(tv({xq}), tv({yq}), killer, 150))
            if (n >= ell) ok = false;
    }

    // scaling transport on 100 instances
    for (int trial = 0; trial < 100 && ok; ++trial) {
        mpq_class xq = rand_q(rng, 15), yq = rand_q(rng, 15);
        long u = 2 + (long)(rng() % 3), v = 2 + (long)(rng() % 3);
        PsiSpec psi = PsiSpec::power_law(Real{mpq_class(1)}, Real{mpq_class(1)});
        PsiSpec con = transform_contract(psi, u);
        mpq_class uy = u * yq;
        uy -= rat_floor(uy);
        for (const auto& n : membership_W(tv({xq}), tv({yq}), con, 60)) {
            mpz_class m = u * n;
            Real dist = torus_dist(affine_orbit_point(tv({xq}), tv({uy}), m));
            if (!(dist.exact() < psi.eval(m).exact())) ok = false;
        }
        PsiSpec dil = transform_dilate(psi, v);
        mpq_class xv = xq / v;
        for (const auto& n : membership_W(tv({xq}), tv({yq}), dil, 60)) {
            mpz_class m = v * n;
            Real dist = torus_dist(affine_orbit_point(tv({xv}), tv({yq}), m));
            if (!(dist.exact() < psi.eval(m).exact())) ok = false;
        }
    }
    report(6, ok, "discretization domination, killer exclusion, scaling transport",
           t.secs());
}

// 7. regime coherence: sigma = 1/d and uniform weights reduce exactly to
// the plain regime on 100 random rational instances.
void criterion7() {
    Timer t;
    bool ok = true;
    std::mt19937 rng(999);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        int d = 1 + (trial % 3);
        std::vector<mpq_class> xs, ys;
        for (int i = 0; i < d; ++i) {
            xs.push_back(rand_q(rng, 25));
            ys.push_back(rand_q(rng, 25));
        }
        long ell = 1 + (trial % 3), N = 150;
        Real plain = partial_S(tv(xs), tv(ys), ell, N, SumSpec::plain(d));
        Real sig = partial_S(tv(xs), tv(ys), ell, N, SumSpec::sigma(d, Real{Q(1, d)}));
        Real wgt =
            partial_S(tv(xs), tv(ys), ell, N, SumSpec::weighted(Weights::uniform(d)));
        if (sig.exact() != plain.exact() || wgt.exact() != plain.exact()) ok = false;
    }
    report(7, ok, "sigma=1/d and uniform-weight sums equal plain sums exactly",
           t.secs());
}

// 8. bad-return gap for phi with 50 random rational shifts: consecutive
// records satisfy t_{k+1} - t_k >= 0.99 c / (2 delta_k), with c the brute
// minimum of n ||n phi|| over n <= 10^6.
void criterion8() {
    Timer t;
    bool ok = true;
    Real phi = golden_ratio_cf().value();
    TorusVector x({phi});
    HomogeneousMin hm = min_homogeneous(x, 1000000, 1);
    mpq_class c_lo = hm.value.enclosure(128).lo;  // certified lower estimate
    std::mt19937 rng(2024);
    long bits = 160;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        mpq_class yq = rand_q(rng, 60);
        RecordSequence rs = scan_records(x, tv({yq}), 10000);
        for (size_t k = 0; k + 1 < rs.entries.size(); ++k) {
            mpz_class gap = rs.entries[k + 1].t - rs.entries[k].t;
            mpq_class delta_hi = rs.entries[k].delta.enclosure(bits).hi;
            if (delta_hi == 0) continue;
            mpq_class rhs = Q(99, 100) * c_lo / (2 * delta_hi);
            if (mpq_class(gap) < rhs) ok = false;
        }
    }
    report(8, ok, "record gaps respect 0.99 c / (2 delta) for phi with 50 shifts",
           t.secs());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
