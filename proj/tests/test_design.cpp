#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <vector>

#include "espd/blocks.hpp"
#include "espd/design.hpp"

using namespace espd;

namespace {

// All k-subsets of {0..v-1} as an incidence structure (the complete design).
IncidenceStructure complete_design(std::uint32_t v, std::uint32_t k) {
    IncidenceStructure s;
    s.v = v;
    s.k = k;
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        s.flat.insert(s.flat.end(), idx.begin(), idx.end());
        int pos = int(k) - 1;
        while (pos >= 0 && idx[pos] == v - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::uint32_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return s;
}

// Independent coverage count for one t-subset by direct block inspection.
std::uint64_t direct_coverage(const IncidenceStructure& s,
                              std::span<const std::uint32_t> tset) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < s.count(); ++i) {
        const auto b = s.block(i);
        if (std::includes(b.begin(), b.end(), tset.begin(), tset.end())) ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("binomials") {
    CHECK(binomial(17, 3) == 680);
    CHECK(binomial(33, 4) == 40920);
    CHECK(binomial(65, 3) == 43680);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(4, 7) == 0);
    CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
}

TEST_CASE("complete design has lambda = C(v-t, k-t)") {
    const IncidenceStructure s = complete_design(10, 4);
    for (unsigned t = 1; t <= 3; ++t) {
        const DesignReport r = verify_design(s, t);
        REQUIRE(r.is_design);
        CHECK(*r.lambda == binomial(10 - t, 4 - t));
        CHECK(r.b * binomial(4, t) == *r.lambda * binomial(10, t));
    }
}

TEST_CASE("a non-design is reported with min < max") {
    IncidenceStructure s;
    s.v = 6;
    s.k = 3;
    const std::array<std::uint32_t, 9> blocks{0, 1, 2, 0, 1, 3, 2, 3, 4};
    s.flat.assign(blocks.begin(), blocks.end());
    const DesignReport r = verify_design(s, 2);
    CHECK(!r.is_design);
    CHECK(r.coverage_min == 0);   // {4,5} uncovered
    CHECK(r.coverage_max == 2);   // {0,1} covered twice
    CHECK(!r.lambda.has_value());
}

TEST_CASE("coverage table agrees with direct counting on random subsets") {
    const IncidenceStructure s = complete_design(9, 4);
    const DesignReport r = verify_design(s, 3);
    for (std::uint32_t a = 0; a < 7; ++a)
        for (std::uint32_t b = a + 1; b < 8; ++b)
            for (std::uint32_t c = b + 1; c < 9; ++c) {
                const std::array<std::uint32_t, 3> t{a, b, c};
                CHECK(direct_coverage(s, t) == *r.lambda);
            }
}

TEST_CASE("thread count does not change the report") {
    const IncidenceStructure s = complete_design(12, 5);
    VerifyOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const DesignReport a = verify_design(s, 2, one);
    const DesignReport b = verify_design(s, 2, four);
    CHECK(a.coverage_min == b.coverage_min);
    CHECK(a.coverage_max == b.coverage_max);
    CHECK(a.b == b.b);
}

TEST_CASE("lambda_s identity") {
    // 4-(33,6,12): lambda_3 = 120, lambda_0 = block count 32736
    CHECK(lambda_s(4, 33, 6, 12, 3) == Rational{120, 1});
    CHECK(lambda_s(4, 33, 6, 12, 0) == Rational{32736, 1});
    CHECK(lambda_s(4, 33, 6, 12, 4) == Rational{12, 1});
    CHECK(lambda_s(4, 33, 6, 12, 2) == Rational{930, 1});
    // non-integral values stay exact rationals
    const Rational r = lambda_s(2, 7, 3, 1, 0);
    CHECK(r == Rational{7, 1});
    CHECK_THROWS_AS(lambda_s(2, 7, 3, 1, 3), std::invalid_argument);
}

TEST_CASE("complement design") {
    const IncidenceStructure s = complete_design(8, 3);
    const IncidenceStructure c = complement_design(s);
    CHECK(c.k == 5);
    CHECK(c.count() == s.count());
    const IncidenceStructure cc = complement_design(c);
    CHECK(cc.flat == s.flat);
    CHECK(cc.k == s.k);

    // coverage of the complement follows by inclusion-exclusion from the
    // original lambdas: sum_j (-1)^j C(t,j) lambda_j
    const DesignReport orig = verify_design(s, 2);
    REQUIRE(orig.is_design);
    std::int64_t expect = 0;
    for (unsigned j = 0, sign = 0; j <= 2; ++j, sign ^= 1) {
        const Rational lj = lambda_s(2, 8, 3, *orig.lambda, j);
        REQUIRE(lj.is_integer());
        const std::int64_t term = std::int64_t(binomial(2, j)) * lj.num;
        expect += sign ? -term : term;
    }
    const DesignReport comp = verify_design(c, 2);
    REQUIRE(comp.is_design);
    CHECK(std::int64_t(*comp.lambda) == expect);
}

TEST_CASE("complement of the q=16 Steiner family is a 3-(17,12,22) design") {
    const Field f(4);
    const IncidenceStructure st = structure_from_family(enumerate_steiner_blocks(f));
    // inclusion-exclusion oracle from the 3-(17,5,1) parameters:
    // lambda_c = lambda_0 - 3 lambda_1 + 3 lambda_2 - lambda_3
    std::int64_t expect = 0;
    for (unsigned j = 0, sign = 0; j <= 3; ++j, sign ^= 1) {
        const Rational lj = lambda_s(3, 17, 5, 1, j);
        REQUIRE(lj.is_integer());
        const std::int64_t term = std::int64_t(binomial(3, j)) * lj.num;
        expect += sign ? -term : term;
    }
    CHECK(expect == 22);
    const DesignReport rep = verify_design(complement_design(st), 3);
    REQUIRE(rep.is_design);
    CHECK(rep.k == 12);
    CHECK(std::int64_t(*rep.lambda) == expect);
}

TEST_CASE("complement of the q=32 family is a 4-(33,27,14040) design") {
    const Field f(5);
    const IncidenceStructure blocks =
        structure_from_family(enumerate_b63(f, ScanOptions{.threads = 2}).full);
    VerifyOptions opt;
    opt.threads = 2;
    const DesignReport rep = verify_design(complement_design(blocks), 4, opt);
    REQUIRE(rep.is_design);
    CHECK(rep.k == 27);
    CHECK(*rep.lambda == 14040);
    // the closed form (q-8)/30 * C(q-5,4) gives the same value
    CHECK((32 - 8) * binomial(27, 4) / 30 == 14040);
}

TEST_CASE("rejects malformed structures") {
    IncidenceStructure s;
    s.v = 5;
    s.k = 3;
    s.flat = {0, 1, 1};
    CHECK_THROWS_AS(verify_design(s, 2), std::invalid_argument);
    s.flat = {0, 1, 7};
    CHECK_THROWS_AS(verify_design(s, 2), std::invalid_argument);
    s.flat = {0, 1, 2};
    CHECK_THROWS_AS(verify_design(s, 3), std::invalid_argument);  // t >= k
    VerifyOptions tiny;
    tiny.budget = 3;
    CHECK_THROWS_AS(verify_design(s, 2, tiny), BudgetExceeded);
}

TEST_CASE("design report json keys are stable") {
    const IncidenceStructure s = complete_design(7, 3);
    const DesignReport r = verify_design(s, 2);
    const std::string j = design_report_json(r);
    CHECK(j ==
          "{\"t\":2,\"v\":7,\"k\":3,\"b\":35,\"coverage_min\":5,\"coverage_max\":5,"
          "\"lambda\":5,\"is_design\":true,\"is_steiner\":false}");
}
