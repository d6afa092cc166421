#include "diolab/exact_rational.hpp"

#include "diolab/orbit.hpp"

namespace dio {

RationalPair::RationalPair(std::vector<mpq_class> xv, std::vector<mpq_class> yv)
    : x(std::move(xv)), y(std::move(yv)) {
    if (x.empty() || x.size() != y.size())
        throw DomainError("RationalPair: dimension mismatch");
    for (auto& v : x) {
        v.canonicalize();
        v -= mpq_class(rat_floor(v));
    }
    for (auto& v : y) {
        v.canonicalize();
        v -= mpq_class(rat_floor(v));
    }
}

RationalPair RationalPair::from_torus(const TorusVector& x, const TorusVector& y) {
    std::vector<mpq_class> xv, yv;
    for (int i = 0; i < x.dim(); ++i) {
        xv.push_back(x[i].exact());
        yv.push_back(y[i].exact());
    }
    return RationalPair(std::move(xv), std::move(yv));
}

namespace {

// Solve A n == B (mod M), M >= 1. Returns (residue, modulus) or nullopt.
std::optional<std::pair<mpz_class, mpz_class>> solve_congruence(const mpz_class& A,
                                                                const mpz_class& B,
                                                                const mpz_class& M) {
    if (M == 1) return std::make_pair(mpz_class(0), mpz_class(1));
    mpz_class a = A % M, b = B % M;
    if (a < 0) a += M;
    if (b < 0) b += M;
    if (a == 0) {
        if (b == 0) return std::make_pair(mpz_class(0), mpz_class(1));
        return std::nullopt;
    }
    mpz_class g, inv, tmp;
    mpz_gcdext(g.get_mpz_t(), inv.get_mpz_t(), tmp.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t());
    if (b % g != 0) return std::nullopt;
    mpz_class m = M / g;
    mpz_class r = ((b / g) * inv) % m;
    if (r < 0) r += m;
    return std::make_pair(r, m);
}

// Combine n == r1 (mod m1) with n == r2 (mod m2); moduli need not be coprime.
std::optional<std::pair<mpz_class, mpz_class>> crt_combine(const mpz_class& r1,
                                                           const mpz_class& m1,
                                                           const mpz_class& r2,
                                                           const mpz_class& m2) {
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    mpz_class diff = r2 - r1;
    if (diff % g != 0) return std::nullopt;
    mpz_class lcm = m1 / g * m2;
    mpz_class r = r1 + m1 * ((diff / g * s) % (m2 / g));
    r %= lcm;
    if (r < 0) r += lcm;
    return std::make_pair(r, lcm);
}

}  // namespace

IntegerPointResult contains_integer_point(const RationalPair& pair) {
    mpz_class r = 0, m = 1;
    for (int i = 0; i < pair.dim(); ++i) {
        const mpz_class p = pair.x[i].get_num(), q = pair.x[i].get_den();
        const mpz_class a = pair.y[i].get_num(), b = pair.y[i].get_den();
        mpz_class L;
        mpz_lcm(L.get_mpz_t(), q.get_mpz_t(), b.get_mpz_t());
        // n p (L/q) == -a (L/b)  (mod L)
        auto sol = solve_congruence(p * (L / q), -a * (L / b), L);
        if (!sol) return {};
        auto comb = crt_combine(r, m, sol->first, sol->second);
        if (!comb) return {};
        r = comb->first;
        m = comb->second;
    }
    IntegerPointResult res;
    res.exists = true;
    res.modulus = m;
    res.least_n = (r == 0) ? m : r;  // least positive representative
    return res;
}

mpq_class OrbitSummary::min_dist_from(const mpz_class&) const { return min_dist; }

OrbitSummary orbit_summary(const RationalPair& pair) {
    OrbitSummary s;
    s.period = 1;
    for (const auto& xi : pair.x)
        mpz_lcm(s.period.get_mpz_t(), s.period.get_mpz_t(), xi.get_den_mpz_t());

    std::vector<Real> xr, yr;
    for (const auto& v : pair.x) xr.push_back(Real(v));
    for (const auto& v : pair.y) yr.push_back(Real(v));
    ExactOrbitWalk walk(TorusVector(xr), TorusVector(yr), 1);
    mpz_class best = -1;
    for (mpz_class n = 1; n <= s.period; walk.step(), ++n) {
        mpz_class d = walk.sup_num();
        if (best < 0 || d < best) best = d;
        if (d == 0 && !s.hit_zero) {
            s.hit_zero = true;
            s.first_zero_n = n;
        }
    }
    s.min_dist = mpq_class(best) / mpq_class(walk.den());
    return s;
}

bool s_finite(const RationalPair& pair, const mpz_class& ell) {
    if (ell < 1) throw DomainError("s_finite: ell must be >= 1");
    return contains_integer_point(pair).exists;
}

PhiMembership phi_membership_rational(const RationalPair& pair) {
    IntegerPointResult r = contains_integer_point(pair);
    if (r.exists) return PhiMembership::Member;
    if (pair.dim() == 1) return PhiMembership::NonMember;
    // The d > 1 converse is an open conjecture; do not encode it as fact.
    return PhiMembership::Unresolved;
}

}  // namespace dio
