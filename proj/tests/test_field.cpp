#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "espd/field.hpp"

using namespace espd;

namespace {

// Independent order computation: multiply alpha by itself until 1 recurs.
std::uint64_t order_by_iteration(const Field& f, gfe x) {
    std::uint64_t n = 1;
    gfe acc = x;
    while (acc != 1) {
        acc = f.mul(acc, x);
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("field sizes and unit circle orders") {
    const Field f4(4);
    CHECK(f4.q() == 16);
    CHECK(f4.size() == 256);
    CHECK(f4.unit_order() == 17);

    const Field f5(5);
    CHECK(f5.q() == 32);
    CHECK(f5.unit_order() == 33);
    CHECK(f5.pow(f5.gamma(), 33) == 1);
}

TEST_CASE("m=4 reduction polynomial is the classic degree-8 primitive") {
    // x^8 + x^4 + x^3 + x^2 + 1 is accepted iff the order of its root is 255.
    CHECK(polynomial_root_order(0x11d, 8) == 255);
    const Field f(4);
    CHECK(f.reduction_poly() == 0x11d);
    CHECK(order_by_iteration(f, f.alpha()) == 255);
    // the AES modulus is irreducible but not primitive: order 51
    CHECK(polynomial_root_order(0x11b, 8) == 51);
    CHECK_THROWS_AS(Field(4, 0x11b), std::invalid_argument);
}

TEST_CASE("m out of range is rejected") {
    CHECK_THROWS_AS(Field(3), std::invalid_argument);
    CHECK_THROWS_AS(Field(17), std::invalid_argument);
}

TEST_CASE("field axioms on random samples") {
    const Field f(5);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<gfe> dist(0, gfe(f.size() - 1));
    for (int iter = 0; iter < 2000; ++iter) {
        const gfe a = dist(rng), b = dist(rng), c = dist(rng);
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
        CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, -1) == f.inv(a));
            CHECK(f.pow(a, 5) == f.mul(f.sqr(f.sqr(a)), a));
        }
    }
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    CHECK_THROWS_AS(f.pow(0, -2), std::domain_error);
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.pow(0, 7) == 0);
}

TEST_CASE("sqrt is the inverse of squaring on all of GF(q^2), m=4") {
    const Field f(4);
    for (std::uint64_t v = 0; v < f.size(); ++v) {
        const gfe x = gfe(v);
        CHECK(f.sqrt(f.mul(x, x)) == x);
        CHECK(f.mul(f.sqrt(x), f.sqrt(x)) == x);
    }
    CHECK(f.sqrt(1) == 1);
}

TEST_CASE("frobenius is an involution and fixes exactly GF(q)") {
    const Field f(4);
    std::size_t fixed = 0;
    for (std::uint64_t v = 0; v < f.size(); ++v) {
        const gfe x = gfe(v);
        CHECK(f.frobenius_q(f.frobenius_q(x)) == x);
        if (f.in_subfield(x)) ++fixed;
    }
    CHECK(fixed == f.q());
}

TEST_CASE("trace to the subfield is GF(q)-valued and additive") {
    const Field f(4);
    CHECK(f.trace_to_subfield(0) == 0);
    for (std::uint64_t v = 0; v < f.size(); ++v)
        CHECK(f.in_subfield(f.trace_to_subfield(gfe(v))));
    std::mt19937 rng(7);
    std::uniform_int_distribution<gfe> dist(0, gfe(f.size() - 1));
    for (int iter = 0; iter < 500; ++iter) {
        const gfe x = dist(rng), y = dist(rng);
        CHECK((f.trace_to_subfield(x) ^ f.trace_to_subfield(y)) ==
              f.trace_to_subfield(x ^ y));
    }
}

TEST_CASE("unit circle basics") {
    for (unsigned m : {4u, 5u}) {
        const Field f(m);
        std::set<gfe> seen;
        for (unit_exp e = 0; e <= f.q(); ++e) {
            const gfe u = f.unit(e);
            CHECK(f.in_unit_circle(u));
            CHECK(f.pow(u, f.unit_order()) == 1);
            CHECK(f.unit_exp_of(u) == e);
            // u^q = u^{-1} on the unit circle
            CHECK(f.frobenius_q(u) == f.inv(u));
            seen.insert(u);
        }
        CHECK(seen.size() == f.unit_order());
        CHECK_THROWS_AS(f.unit_exp_of(0), std::domain_error);
        CHECK_THROWS_AS(f.unit_exp_of(f.alpha()), std::domain_error);
    }
}

TEST_CASE("absolute trace splits GF(q) in half and rejects non-members") {
    for (unsigned m : {4u, 5u}) {
        const Field f(m);
        std::size_t zeros = 0;
        for (std::uint64_t v = 0; v < f.size(); ++v) {
            const gfe x = gfe(v);
            if (!f.in_subfield(x)) continue;
            if (f.subfield_trace_bit(x) == 0) ++zeros;
        }
        CHECK(zeros == f.q() / 2);
        CHECK(f.subfield_trace_bit(0) == 0);
    }
    const Field f(4);
    bool threw = false;
    for (std::uint64_t v = 0; v < f.size(); ++v) {
        if (!f.in_subfield(gfe(v))) {
            try {
                f.subfield_trace_bit(gfe(v));
            } catch (const std::domain_error&) {
                threw = true;
            }
            break;
        }
    }
    CHECK(threw);
}

TEST_CASE("u1 u2 / (u1^2 + u2^2) lies in GF(q) with absolute trace 1") {
    for (unsigned m : {4u, 5u}) {
        const Field f(m);
        for (unit_exp e1 = 0; e1 < f.q(); ++e1)
            for (unit_exp e2 = e1 + 1; e2 <= f.q(); ++e2) {
                const gfe u1 = f.unit(e1), u2 = f.unit(e2);
                const gfe val = f.div(f.mul(u1, u2), f.sqr(u1) ^ f.sqr(u2));
                REQUIRE(f.in_subfield(val));
                REQUIRE(f.subfield_trace_bit(val) == 1);
            }
    }
}

TEST_CASE("quadratic solving over GF(q^2)") {
    const Field f(4);

    SUBCASE("a = 0 gives the single root sqrt(b)") {
        for (gfe b : {gfe(0), gfe(1), gfe(17), gfe(200)}) {
            const auto r = f.solve_quadratic(0, b);
            REQUIRE(r.double_root);
            REQUIRE(r.roots.size() == 1);
            CHECK(f.sqr(r.roots[0].value) == b);
        }
    }

    SUBCASE("roots actually solve the equation; counts match the trace test") {
        std::mt19937 rng(99);
        std::uniform_int_distribution<gfe> dist(0, gfe(f.size() - 1));
        for (int iter = 0; iter < 2000; ++iter) {
            const gfe a = dist(rng), b = dist(rng);
            const auto r = f.solve_quadratic(a, b);
            for (const auto& root : r.roots)
                CHECK((f.sqr(root.value) ^ f.mul(a, root.value) ^ b) == 0);
            if (a != 0) CHECK((r.roots.size() == 0 || r.roots.size() == 2));
        }
    }

    SUBCASE("subfield coefficients reproduce the three location cases") {
        // with a, b in GF(q), a != 0: two roots in GF(q) iff Tr(b/a^2) = 0,
        // else two roots in GF(q^2) \ GF(q)
        for (std::uint64_t av = 1; av < f.size(); ++av) {
            if (!f.in_subfield(gfe(av))) continue;
            for (std::uint64_t bv = 0; bv < f.size(); ++bv) {
                if (!f.in_subfield(gfe(bv))) continue;
                const gfe a = gfe(av), b = gfe(bv);
                const auto r = f.solve_quadratic(a, b);
                REQUIRE(r.roots.size() == 2);
                const int tr = f.subfield_trace_bit(f.div(b, f.sqr(a)));
                for (const auto& root : r.roots) CHECK(root.in_subfield == (tr == 0));
            }
        }
    }

    SUBCASE("the pair-trace equation (au)^2 + (au) + a'^2 = 0") {
        const Field f5(5);
        for (unit_exp e1 = 0; e1 < 10; ++e1)
            for (unit_exp e2 = e1 + 1; e2 < 20; ++e2) {
                const gfe u1 = f5.unit(e1), u2 = f5.unit(e2);
                const gfe ap = f5.div(f5.mul(u1, u2), f5.sqr(u1) ^ f5.sqr(u2));
                const gfe u = f5.div(u1, u2);
                const gfe au = f5.mul(ap, u);
                CHECK((f5.sqr(au) ^ au ^ f5.sqr(ap)) == 0);
                const auto r = f5.solve_quadratic(1, f5.sqr(ap));
                REQUIRE(r.roots.size() == 2);
                CHECK(((r.roots[0].value == au) || (r.roots[1].value == au)));
                for (const auto& root : r.roots) CHECK(!root.in_subfield);
            }
    }
}

TEST_CASE("three-subset quadratic data: b in U, trace parity follows m") {
    for (unsigned m : {4u, 5u}) {
        const Field f(m);
        const int expected_tr = int((1 + m) % 2);
        for (unit_exp e1 = 0; e1 < f.q() - 1; ++e1)
            for (unit_exp e2 = e1 + 1; e2 < f.q(); ++e2)
                for (unit_exp e3 = e2 + 1; e3 <= f.q(); ++e3) {
                    const gfe u1 = f.unit(e1), u2 = f.unit(e2), u3 = f.unit(e3);
                    const gfe s1 = u1 ^ u2 ^ u3;
                    const gfe s2 = f.mul(u1, u2) ^ f.mul(u2, u3) ^ f.mul(u3, u1);
                    const gfe s3 = f.mul(f.mul(u1, u2), u3);
                    const gfe den = f.sqr(s1) ^ s2;
                    const gfe na = f.mul(s1, s2) ^ s3;
                    const gfe nb = f.sqr(s2) ^ f.mul(s1, s3);
                    if (den == 0 || na == 0 || nb == 0) continue;
                    const gfe a = f.div(na, den), b = f.div(nb, den);
                    REQUIRE(f.in_unit_circle(b));
                    const gfe ratio = f.div(b, f.sqr(a));
                    REQUIRE(f.in_subfield(ratio));
                    REQUIRE(f.subfield_trace_bit(ratio) == expected_tr);
                }
    }
}

TEST_CASE("unit-circle quadratic roots: two for even m, none for odd m") {
    {
        const Field f(4);
        unsigned checked = 0;
        for (unit_exp e1 = 0; e1 < 6; ++e1)
            for (unit_exp e2 = e1 + 1; e2 < 12; ++e2)
                for (unit_exp e3 = e2 + 1; e3 <= f.q(); ++e3) {
                    const gfe u1 = f.unit(e1), u2 = f.unit(e2), u3 = f.unit(e3);
                    const gfe s1 = u1 ^ u2 ^ u3;
                    const gfe s2 = f.mul(u1, u2) ^ f.mul(u2, u3) ^ f.mul(u3, u1);
                    const gfe s3 = f.mul(f.mul(u1, u2), u3);
                    const gfe den = f.sqr(s1) ^ s2;
                    const gfe a = f.div(f.mul(s1, s2) ^ s3, den);
                    const gfe b = f.div(f.sqr(s2) ^ f.mul(s1, s3), den);
                    const auto roots = f.solve_quadratic_unit(a, b);
                    REQUIRE(roots.size() == 2);
                    // roots are sqrt(b) u' and sqrt(b) u'^q for the unit u'
                    // solving T^2 + (a/sqrt(b))T + 1
                    const gfe sb = f.sqrt(b);
                    const gfe up = f.div(f.unit(roots[0]), sb);
                    CHECK(f.in_unit_circle(up));
                    CHECK(f.unit(roots[1]) == f.mul(sb, f.frobenius_q(up)));
                    ++checked;
                }
        CHECK(checked > 0);
    }
    {
        const Field f(5);
        for (unit_exp e1 = 0; e1 < 4; ++e1)
            for (unit_exp e2 = e1 + 1; e2 < 8; ++e2)
                for (unit_exp e3 = e2 + 1; e3 <= f.q(); ++e3) {
                    const gfe u1 = f.unit(e1), u2 = f.unit(e2), u3 = f.unit(e3);
                    const gfe s1 = u1 ^ u2 ^ u3;
                    const gfe s2 = f.mul(u1, u2) ^ f.mul(u2, u3) ^ f.mul(u3, u1);
                    const gfe s3 = f.mul(f.mul(u1, u2), u3);
                    const gfe den = f.sqr(s1) ^ s2;
                    if (den == 0) continue;
                    const gfe a = f.div(f.mul(s1, s2) ^ s3, den);
                    const gfe b = f.div(f.sqr(s2) ^ f.mul(s1, s3), den);
                    if (a == 0 || b == 0) continue;
                    CHECK(f.solve_quadratic_unit(a, b).empty());
                }
    }
    const Field f(4);
    CHECK_THROWS_AS(f.solve_quadratic_unit(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(f.solve_quadratic_unit(1, 0), std::invalid_argument);
}

TEST_CASE("spec record round-trip") {
    const Field f(5);
    const std::string rec = f.spec_record();
    CHECK(rec.find("m=5") != std::string::npos);
    const Field g = Field::from_spec_record(rec);
    CHECK(g.q() == f.q());
    CHECK(g.reduction_poly() == f.reduction_poly());
    CHECK_THROWS_AS(Field::from_spec_record("nonsense"), std::invalid_argument);
}

TEST_CASE("fields without lookup tables agree with table fields") {
    // m = 9 exercises the carry-less path end to end
    const Field f(9);
    CHECK(!f.has_tables());
    CHECK(f.pow(f.gamma(), f.unit_order()) == 1);
    std::mt19937 rng(4242);
    std::uniform_int_distribution<gfe> dist(1, gfe(f.size() - 1));
    for (int iter = 0; iter < 200; ++iter) {
        const gfe a = dist(rng);
        CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.sqrt(f.sqr(a)) == a);
        CHECK(f.frobenius_q(f.frobenius_q(a)) == a);
        const auto as = f.artin_schreier_root(f.sqr(a) ^ a);
        REQUIRE(as.has_value());
        CHECK((f.sqr(*as) ^ *as) == (f.sqr(a) ^ a));
    }
}
