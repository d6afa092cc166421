#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diolab/contfrac.hpp"
#include "diolab/records.hpp"

using namespace dio;

namespace {

mpq_class Q(long n, long d) { return mpq_class(n, d); }

// |v - target| < eps, certified via enclosure
bool close_to_root(const Real& v, const std::function<Real(const Real&)>& poly,
                   const mpq_class& eps) {
    Interval iv = poly(v).enclosure(256);
    return iv.lo > -eps && iv.hi < eps;
}

}  // namespace

TEST_CASE("cf expansion of rationals is canonical") {
    ContinuedFraction cf = cf_expand(Real{Q(10, 7)}, 10);
    REQUIRE(cf.is_finite());
    REQUIRE(cf.length() == 3);
    CHECK(cf.quotient(0) == 1);
    CHECK(cf.quotient(1) == 2);
    CHECK(cf.quotient(2) == 3);
    CHECK(cf.to_literal() == "cf:[1;2,3]");

    ContinuedFraction third = cf_expand(Real{Q(1, 3)}, 10);
    REQUIRE(third.length() == 2);
    CHECK(third.quotient(0) == 0);
    CHECK(third.quotient(1) == 3);

    // canonical form: never a trailing quotient 1
    ContinuedFraction half = cf_expand(Real{Q(3, 2)}, 10);
    REQUIRE(half.length() == 2);
    CHECK(half.quotient(1) == 2);

    ContinuedFraction whole = cf_expand(Real{mpq_class(4)}, 10);
    REQUIRE(whole.length() == 1);
    CHECK(whole.quotient(0) == 4);
}

TEST_CASE("cf expansion of the golden ratio is all ones") {
    ContinuedFraction phi = golden_ratio_cf();
    Real x = phi.value();
    ContinuedFraction ex = cf_expand(x, 12);
    for (long n = 0; n < 12; ++n) CHECK(ex.quotient(n) == 1);
}

TEST_CASE("finite cf round-trips through its value") {
    ContinuedFraction cf = ContinuedFraction::finite({mpz_class(1), mpz_class(2), mpz_class(3)});
    CHECK(cf.value().exact() == Q(10, 7));
}

TEST_CASE("convergents of the golden ratio are Fibonacci") {
    auto cv = convergents(golden_ratio_cf(), 8);
    long fib[] = {1, 1, 2, 3, 5, 8, 13, 21};
    long fibp[] = {1, 2, 3, 5, 8, 13, 21, 34};
    REQUIRE(cv.size() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(cv[i].q == fib[i]);
        CHECK(cv[i].p == fibp[i]);
        CHECK(gcd(cv[i].p, cv[i].q) == 1);
    }
}

TEST_CASE("convergents of short expansions") {
    auto a = convergents(ContinuedFraction::finite({mpz_class(0), mpz_class(3)}), 2);
    REQUIRE(a.size() == 2);
    CHECK(a[0].p == 0);
    CHECK(a[0].q == 1);
    CHECK(a[1].p == 1);
    CHECK(a[1].q == 3);

    auto b = convergents(ContinuedFraction::finite({mpz_class(1), mpz_class(2), mpz_class(3)}), 3);
    REQUIRE(b.size() == 3);
    CHECK(b[0].p == 1);
    CHECK(b[0].q == 1);
    CHECK(b[1].p == 3);
    CHECK(b[1].q == 2);
    CHECK(b[2].p == 10);
    CHECK(b[2].q == 7);
}

TEST_CASE("periodic cf values are quadratic irrationals") {
    // [1;(2)] = sqrt(2): v^2 - 2 = 0
    Real r2 = sqrt2_cf().value();
    CHECK(close_to_root(r2, [](const Real& v) { return v * v - Real{mpq_class(2)}; },
                        Q(1, 1000000000)));
    // [1;(1)] = phi: v^2 - v - 1 = 0
    Real phi = golden_ratio_cf().value();
    CHECK(close_to_root(phi, [](const Real& v) { return v * v - v - Real{mpq_class(1)}; },
                        Q(1, 1000000000)));
    // [0;(1,2)] = sqrt(3) - 1: (v+1)^2 - 3 = 0
    Real alt = ContinuedFraction::periodic({mpz_class(0)}, {mpz_class(1), mpz_class(2)}).value();
    CHECK(close_to_root(alt,
                        [](const Real& v) {
                            Real w = v + Real{mpq_class(1)};
                            return w * w - Real{mpq_class(3)};
                        },
                        Q(1, 1000000000)));
}

TEST_CASE("bounded-quotient generators") {
    ContinuedFraction ones = make_bounded_quotient(1, constant_rule(1));
    // [0;1,1,...] = phi - 1: v^2 + v - 1 = 0
    CHECK(close_to_root(ones.value(),
                        [](const Real& v) { return v * v + v - Real{mpq_class(1)}; },
                        Q(1, 1000000000)));
    for (long n = 1; n <= 20; ++n) CHECK(ones.quotient(n) == 1);

    ContinuedFraction alt = make_bounded_quotient(2, alternating_rule(2));
    for (long n = 1; n <= 20; ++n) {
        CHECK(alt.quotient(n) >= 1);
        CHECK(alt.quotient(n) <= 2);
    }
    CHECK(alt.quotient(1) == 1);
    CHECK(alt.quotient(2) == 2);
    // [0;1,2,1,2,...] = sqrt(3) - 1
    CHECK(close_to_root(alt.value(),
                        [](const Real& v) {
                            Real w = v + Real{mpq_class(1)};
                            return w * w - Real{mpq_class(3)};
                        },
                        Q(1, 1000000000)));
}

TEST_CASE("convergent approximation inequalities") {
    // |x - p_n/q_n| < 1/(q_n q_{n+1}) and
    // 1/(q_{n+1}+q_n) <= ||q_n x|| <= 1/q_{n+1}
    for (const auto& cf : {golden_ratio_cf(), sqrt2_cf(),
                           ContinuedFraction::periodic({mpz_class(0)},
                                                       {mpz_class(1), mpz_class(2)})}) {
        Real x = cf.value();
        auto cv = convergents(cf, 10);
        for (size_t n = 0; n + 1 < cv.size(); ++n) {
            Real err = (x - Real{mpq_class(cv[n].p, cv[n].q)}).abs();
            CHECK(certified_less(err, Real{mpq_class(1, cv[n].q * cv[n + 1].q)}));
            // |q_n x - p_n|: distance to the convergent numerator (equals the
            // distance to the nearest integer for n >= 1)
            Real qerr = (Real{cv[n].q} * x - Real{cv[n].p}).abs();
            CHECK(certified_leq(Real{mpq_class(1, cv[n + 1].q + cv[n].q)}, qerr));
            CHECK(certified_leq(qerr, Real{mpq_class(1, cv[n + 1].q)}));
            if (n >= 1) {
                Real qdist = (Real{cv[n].q} * x).dist_to_int();
                CHECK(certified_leq(Real{mpq_class(1, cv[n + 1].q + cv[n].q)}, qdist));
                CHECK(certified_leq(qdist, Real{mpq_class(1, cv[n + 1].q)}));
            }
        }
    }
}

TEST_CASE("homogeneous record times are convergent denominators") {
    for (const auto& cf : {golden_ratio_cf(), sqrt2_cf()}) {
        TorusVector x({cf.value()});
        TorusVector y({Real(0)});
        RecordSequence rs = scan_records(x, y, 200);
        auto cv = convergents(cf, 15);
        std::vector<mpz_class> qs;
        for (const auto& c : cv)
            if (c.q <= 200 && (qs.empty() || c.q > qs.back())) qs.push_back(c.q);
        REQUIRE(rs.entries.size() == qs.size());
        for (size_t i = 0; i < qs.size(); ++i) CHECK(rs.entries[i].t == qs[i]);
    }
}

TEST_CASE("liouville numbers expose designated denominators") {
    LiouvilleNumber L = liouville_factorial();  // g(j) = (j+1)!
    CHECK(L.denominator(0) == 2);               // 2^{1!}
    CHECK(L.denominator(1) == 4);               // 2^{2!}
    CHECK(L.denominator(2) == 64);              // 2^{3!}
    CHECK(L.dist_bound(1) == Q(1, 8));          // 2^{2-6+1}
    // certified: ||n_j x|| <= dist_bound(j)
    for (long j = 0; j <= 3; ++j)
        CHECK(certified_leq(L.dist(j), Real{L.dist_bound(j)}));

    LiouvilleNumber P = liouville_pow2();  // g(j) = 2^{j+1}
    CHECK(P.denominator(0) == 4);
    CHECK(P.denominator(1) == 16);
    CHECK(P.dist_bound(0) == Q(1, 2));  // 2^{2-4+1}
    for (long j = 0; j <= 4; ++j)
        CHECK(certified_leq(P.dist(j), Real{P.dist_bound(j)}));
}

TEST_CASE("too-slow gap schedules are rejected") {
    CHECK_THROWS_AS(make_liouville([](long j) { return j + 1; }), DomainError);
}

TEST_CASE("cf literals parse and print") {
    ContinuedFraction p = ContinuedFraction::periodic({mpz_class(1)}, {mpz_class(2)});
    CHECK(p.to_literal() == "cf:[1;(2)]");
    ContinuedFraction f = ContinuedFraction::finite({mpz_class(0), mpz_class(3)});
    CHECK(f.to_literal() == "cf:[0;3]");
}
