#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diolab/parse.hpp"
#include "diolab/torus.hpp"

using namespace dio;

namespace {

mpq_class Q(long n, long d) { return mpq_class(n, d); }

TorusVector tv(std::vector<mpq_class> v) {
    std::vector<Real> c;
    for (auto& q : v) c.push_back(Real(q));
    return TorusVector(c);
}

}  // namespace

TEST_CASE("interval arithmetic basics") {
    Interval a(Q(1, 3), Q(1, 2)), b(Q(-1, 4), Q(1, 4));
    Interval s = a + b;
    CHECK(s.lo == Q(1, 12));
    CHECK(s.hi == Q(3, 4));
    Interval p = a * b;
    CHECK(p.lo == Q(-1, 8));
    CHECK(p.hi == Q(1, 8));
    Interval n = -a;
    CHECK(n.lo == Q(-1, 2));
    CHECK(n.hi == Q(-1, 3));
    CHECK_THROWS_AS(Interval(Q(1, 2), Q(1, 3)), DomainError);
    CHECK_THROWS_AS(inv(b), DomainError);
    Interval r = inv(a);
    CHECK(r.lo == 2);
    CHECK(r.hi == 3);
}

TEST_CASE("interval integer powers") {
    Interval a(Q(-1, 2), Q(1, 3));
    Interval sq = pow_int(a, 2);  // straddles zero, even power
    CHECK(sq.lo == 0);
    CHECK(sq.hi == Q(1, 4));
    Interval cu = pow_int(a, 3);
    CHECK(cu.lo == Q(-1, 8));
    CHECK(cu.hi == Q(1, 27));
    CHECK(pow_int(a, 0).lo == 1);
}

TEST_CASE("interval fractional power encloses the true value") {
    // 2^(1/2): the enclosure must contain sqrt(2) and be tight-ish
    Interval a = Interval::point(2);
    Interval r = pow_frac(a, Q(1, 2), Q(1, 2), 128);
    CHECK(r.lo * r.lo <= 2);
    CHECK(r.hi * r.hi >= 2);
    CHECK(r.width() < Q(1, 1000000));
    // monotone soundness: a wider exponent interval gives a wider result
    Interval w = pow_frac(a, Q(1, 2), Q(2, 3), 128);
    CHECK(w.lo <= r.lo);
    CHECK(w.hi >= r.hi);  // upper end grows toward 2^(2/3)
    CHECK_THROWS_AS(pow_frac(a, Q(-1, 2), Q(1, 2), 64), DomainError);
}

TEST_CASE("rational rounding helpers") {
    CHECK(rat_floor(Q(7, 2)) == 3);
    CHECK(rat_floor(Q(-7, 2)) == -4);
    CHECK(rat_nearest(Q(7, 2)) == 4);   // 3.5 -> even
    CHECK(rat_nearest(Q(5, 2)) == 2);   // 2.5 -> even
    CHECK(rat_nearest(Q(-5, 2)) == -2); // -2.5 -> even
    CHECK(rat_nearest(Q(1, 3)) == 0);
    CHECK(rat_dist_to_int(Q(3, 10)) == Q(3, 10));
    CHECK(rat_dist_to_int(Q(9, 10)) == Q(1, 10));
    CHECK(rat_dist_to_int(Q(-1, 4)) == Q(1, 4));
}

TEST_CASE("dist_to_nearest_int on intervals") {
    Interval a(Q(3, 10), Q(2, 5));
    Interval d = dist_to_nearest_int(a);
    CHECK(d.lo == Q(3, 10));
    CHECK(d.hi == Q(2, 5));
    // interval containing an integer: min distance 0
    Interval b(Q(9, 10), Q(11, 10));
    Interval db = dist_to_nearest_int(b);
    CHECK(db.lo == 0);
    CHECK(db.hi == Q(1, 10));
    // interval containing a half-integer: max distance 1/2
    Interval c(Q(2, 5), Q(3, 5));
    Interval dc = dist_to_nearest_int(c);
    CHECK(dc.hi == Q(1, 2));
    CHECK(dc.lo == Q(2, 5));
}

TEST_CASE("Real exact arithmetic and powers") {
    Real a{Q(1, 4)};
    CHECK(a.is_exact());
    CHECK(a.pow(Q(1, 2)).is_exact());
    CHECK(a.pow(Q(1, 2)).exact() == Q(1, 2));
    CHECK(a.pow(mpq_class(3)).exact() == Q(1, 64));
    Real b = a + Real{Q(1, 12)};
    CHECK(b.exact() == Q(1, 3));
    CHECK((-b).exact() == Q(-1, 3));
    CHECK(b.inverse().exact() == 3);
    CHECK(Real{Q(-3, 4)}.abs().exact() == Q(3, 4));
}

TEST_CASE("Real comparison protocol") {
    Real half{Q(1, 2)}, third{Q(1, 3)};
    CHECK(compare(third, half) == Cmp::Less);
    CHECK(compare(half, half) == Cmp::Equal);
    CHECK(certified_less(third, half));
    CHECK(certified_leq(half, half));

    // refinable vs exact: sqrt(2) vs 3/2 resolves by refinement
    Real r2 = Real{mpq_class(2)}.pow(Q(1, 2));
    CHECK(compare(r2, Real{Q(3, 2)}) == Cmp::Less);
    CHECK(compare(r2, Real{Q(7, 5)}) == Cmp::Greater);
    CHECK(certified_floor(r2) == 1);
    CHECK(certified_ceil(r2) == 2);

    // a fixed-width interval straddling the comparand never resolves
    Real fat = Real::from_interval(Interval(Q(2, 5), Q(3, 5)), "fat");
    PrecisionContext tight{64, 256};
    CHECK(compare(fat, half, tight) == Cmp::Undecided);
    CHECK_THROWS_AS(certified_less(fat, half, tight), PrecisionError);
}

TEST_CASE("interval soundness under refinement") {
    Real r2 = Real{mpq_class(2)}.pow(Q(1, 2));
    Interval coarse = r2.enclosure(32);
    Interval fine = r2.enclosure(256);
    CHECK(coarse.lo <= fine.lo);
    CHECK(fine.hi <= coarse.hi);
    CHECK(fine.width() < coarse.width());
}

TEST_CASE("torus reduction to [0,1)") {
    TorusVector a = tv({Q(5, 4)});
    CHECK(a[0].exact() == Q(1, 4));
    TorusVector b = tv({Q(-1, 4)});
    CHECK(b[0].exact() == Q(3, 4));
    // idempotence
    TorusVector c(a.coords());
    CHECK(c[0].exact() == Q(1, 4));
    TorusVector z = tv({Q(7, 1)});
    CHECK(z[0].exact() == 0);
}

TEST_CASE("torus distance examples") {
    CHECK(torus_dist(tv({Q(1, 2)})).exact() == Q(1, 2));
    CHECK(torus_dist(tv({Q(3, 10), Q(9, 10)})).exact() == Q(3, 10));
    CHECK(torus_dist(tv({Q(0, 1)})).exact() == 0);
    CHECK(torus_dist(tv({Q(5, 4)})).exact() == Q(1, 4));
}

TEST_CASE("torus distance symmetry") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(0, 40), den(1, 41);
    for (int i = 0; i < 200; ++i) {
        long d = den(rng);
        mpq_class v(num(rng) % (2 * d + 1) - d, d);
        v.canonicalize();
        Real fwd = torus_dist(tv({v}));
        Real bwd = torus_dist(tv({mpq_class(-v)}));
        CHECK(fwd.exact() == bwd.exact());
    }
}

TEST_CASE("weighted distance uniform case reduces to sup norm") {
    Weights r = Weights::uniform(2);
    CHECK(r.is_uniform());
    TorusVector v = tv({Q(3, 10), Q(1, 10)});
    CHECK(weighted_dist(v, r).exact() == Q(3, 10));

    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(0, 30);
    for (int i = 0; i < 100; ++i) {
        TorusVector w = tv({Q(num(rng), 31), Q(num(rng), 31)});
        Real a = weighted_dist(w, r);
        Real b = torus_dist(w);
        CHECK(compare(a, b) == Cmp::Equal);
    }
}

TEST_CASE("weighted distance non-uniform value") {
    // d=2, r=(3/4,1/4), v=(1/2,1/5):
    // (max((1/2)^{4/3}, (1/5)^4))^{1/2} = 2^{-2/3} = 0.6299605249474366
    std::vector<Real> rr{Real{Q(3, 4)}, Real{Q(1, 4)}};
    Weights r(2, rr);
    TorusVector v = tv({Q(1, 2), Q(1, 5)});
    Real w = weighted_dist(v, r);
    Interval iv = w.enclosure(128);
    // frozen reference 0.62996052494743658238360530363911417...
    mpq_class ref(mpz_class("62996052494743658238360530363911417"),
                  mpz_class("100000000000000000000000000000000000"));
    CHECK(iv.lo <= ref + Q(1, 1000000000));
    CHECK(iv.hi >= ref - Q(1, 1000000000));
    CHECK(iv.width() < Q(1, 1000000000));
}

TEST_CASE("weights validation") {
    CHECK_THROWS_AS(Weights(2, {Real{Q(1, 2)}, Real{Q(1, 3)}}), DomainError);  // sum != 1
    CHECK_THROWS_AS(Weights(2, {Real{Q(3, 2)}, Real{Q(-1, 2)}}), DomainError); // negative
    Weights ok(2, {Real{Q(2, 3)}, Real{Q(1, 3)}});
    CHECK(ok.inv_exact(0) == Q(3, 2));
    CHECK(ok.inv_exact(1) == 3);
    CHECK_FALSE(ok.is_uniform());
}

TEST_CASE("exponent parameter validation") {
    Exponent ok(Real{Q(1, 2)}, 2);
    CHECK(ok.sum_exponent().exact() == 2);
    CHECK_THROWS_AS(Exponent(Real{Q(1, 3)}, 2), DomainError);  // sigma < 1/d
    Exponent boundary(Real{Q(1, 2)}, 2);
    CHECK(boundary.sigma().exact() == Q(1, 2));
}

TEST_CASE("affine orbit point examples") {
    TorusVector x = tv({Q(1, 3)}), y = tv({Q(1, 3)});
    TorusVector p = affine_orbit_point(x, y, 2);
    CHECK(p[0].exact() == 0);

    TorusVector x2 = tv({Q(1, 2), Q(1, 3)}), y2 = tv({Q(0, 1), Q(0, 1)});
    TorusVector p2 = affine_orbit_point(x2, y2, 6);
    CHECK(p2[0].exact() == 0);
    CHECK(p2[1].exact() == 0);

    TorusVector x0 = tv({Q(0, 1)}), ya = tv({Q(3, 10)});
    for (long n = 1; n <= 5; ++n)
        CHECK(affine_orbit_point(x0, ya, n)[0].exact() == Q(3, 10));
}

TEST_CASE("number literal grammar") {
    CHECK(parse_rational("rat:3/4") == Q(3, 4));
    CHECK(parse_rational("-2/6") == Q(-1, 3));
    Real d = parse_number("dec:0.25~0");
    CHECK(d.exact() == Q(1, 4));
    Real dr = parse_number("dec:0.318309886~1e-9");
    CHECK_FALSE(dr.is_exact());
    Interval iv = dr.enclosure(64);
    CHECK(iv.lo >= Q(318309885, 1000000000));
    CHECK(iv.hi <= Q(318309887, 1000000000));
    // a leading-zero digit string must not be read as octal
    CHECK(parse_number("dec:0.099").exact() == Q(99, 1000));
    CHECK(parse_number("dec:1.5e-2").exact() == Q(3, 200));

    CHECK_THROWS_AS(parse_number("rat:1/0"), ParseError);
    CHECK_THROWS_AS(parse_number("bogus:3"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);

    auto v = parse_vector("(1/2, 1/3)");
    CHECK(v.size() == 2);
    CHECK(v[1].exact() == Q(1, 3));
}

TEST_CASE("decimal rendering") {
    CHECK(to_decimal_string(Q(1, 4), 3) == "0.250");
    CHECK(to_decimal_string(Q(-1, 3), 4) == "-0.3333");
    CHECK(to_decimal_string(Q(2, 3), 2) == "0.67");
}
