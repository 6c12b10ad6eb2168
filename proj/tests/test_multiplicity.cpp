#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmra/demo_data.hpp"
#include "gmra/errors.hpp"
#include "gmra/multiplicity.hpp"

#include "helpers.hpp"

using namespace gmra;
using testutil::sample_points;

namespace {

MultiplicityFunction indicator_m(const Rational& lo, const Rational& hi, long value, int c) {
    std::vector<Rational> bps{rat(-1, 2), lo};
    if (hi < rat(1, 2)) bps.push_back(hi);
    Partition p(std::move(bps));
    std::vector<long> vals(p.cells(), 0);
    vals[p.cell_of(lo)] = value;
    return {IntStep(p, std::move(vals)), c, 2};
}

} // namespace

TEST_CASE("fiber sum matches pointwise summation over preimages") {
    for (const auto& m : {demo::journe_multiplicity(), demo::three_level_multiplicity()}) {
        IntStep fs = fiber_sum(m);
        for (const auto& x : sample_points()) {
            long expect = 0;
            for (long j = 0; j < m.modulus(); ++j) expect += m.at(fiber_point(x, m.modulus(), 1, j));
            CHECK(fs.at(x) == expect);
        }
    }
}

TEST_CASE("worked two-level multiplicity: complement is constant one") {
    MultiplicityFunction m = demo::journe_multiplicity();
    ConsistencyReport rep = check_consistency_inequality(m);
    CHECK(rep.holds);
    CHECK(rep.violations.empty());

    MultiplicityFunction mt = complement(m);
    CHECK(value_equal(mt.values(), IntStep::constant(1)));
    CHECK(check_consistency_identity(m, mt).holds);
}

TEST_CASE("worked three-level multiplicity: complement is constant one") {
    MultiplicityFunction m = demo::three_level_multiplicity();
    CHECK(check_consistency_inequality(m).holds);
    MultiplicityFunction mt = complement(m);
    CHECK(value_equal(mt.values(), IntStep::constant(1)));
    CHECK(check_consistency_identity(m, mt).holds);
}

TEST_CASE("complement solves the identity by construction") {
    // any consistent m: m + complement == fiber sum, pointwise
    MultiplicityFunction m = demo::three_level_multiplicity();
    MultiplicityFunction mt = complement(m);
    IntStep fs = fiber_sum(m);
    for (const auto& x : sample_points()) CHECK(m.at(x) + mt.at(x) == fs.at(x));
}

TEST_CASE("identity check distinguishes a wrong complement") {
    MultiplicityFunction m = demo::journe_multiplicity();
    MultiplicityFunction wrong(IntStep::constant(2), 2, 2);
    IdentityReport rep = check_consistency_identity(m, wrong);
    CHECK_FALSE(rep.holds);
    CHECK_FALSE(rep.mismatches.empty());
}

TEST_CASE("an overweight bump is rejected with certified cells") {
    MultiplicityFunction m = indicator_m(rat(1, 4), rat(1, 2), 5, 5);
    ConsistencyReport rep = check_consistency_inequality(m);
    REQUIRE_FALSE(rep.holds);
    REQUIRE_FALSE(rep.violations.empty());
    for (const auto& w : rep.violations) {
        CHECK(w.lhs > w.rhs);
        // certify the witness by re-evaluating both sides at the cell midpoint
        Rational mid = (w.lo + w.hi) / 2;
        long fibers = 0;
        for (long j = 0; j < m.modulus(); ++j) fibers += m.at(fiber_point(mid, m.modulus(), 1, j));
        CHECK(m.at(mid) == w.lhs);
        CHECK(fibers == w.rhs);
    }
    CHECK_THROWS_AS(complement(m), ConsistencyViolation);
}

TEST_CASE("a thin off-center bump is inconsistent") {
    MultiplicityFunction m = indicator_m(rat(1, 8), rat(1, 4), 1, 1);
    ConsistencyReport rep = check_consistency_inequality(m);
    CHECK_FALSE(rep.holds);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("a centered bump is consistent: its fiber sum dominates it") {
    // chi_[-1/8,1/8) has fiber sum chi_[-1/4,1/4), so the inequality holds
    MultiplicityFunction m = indicator_m(rat(-1, 8), rat(1, 8), 1, 1);
    CHECK(check_consistency_inequality(m).holds);
    MultiplicityFunction mt = complement(m);
    for (const auto& x : sample_points()) {
        long inside = (x >= rat(-1, 4) && x < rat(1, 4)) ? 1 : 0;
        CHECK(mt.at(x) == inside - m.at(x));
    }
}

TEST_CASE("the zero multiplicity is consistent with zero complement") {
    MultiplicityFunction m(IntStep::constant(0), 0, 2);
    CHECK(check_consistency_inequality(m).holds);
    CHECK(value_equal(complement(m).values(), IntStep::constant(0)));
}

TEST_CASE("support sets are nested indicator steps") {
    MultiplicityFunction m = demo::three_level_multiplicity();
    auto sets = support_sets(m);
    REQUIRE(sets.size() == 3);
    for (const auto& x : sample_points()) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            long expect = m.at(x) >= static_cast<long>(i) + 1 ? 1 : 0;
            CHECK(sets[i].at(x) == expect);
        }
        CHECK(sets[2].at(x) <= sets[1].at(x));
        CHECK(sets[1].at(x) <= sets[0].at(x));
    }
}

TEST_CASE("rank windows of the worked examples") {
    RankWindow w2 = rank_window(demo::journe_multiplicity());
    REQUIRE_FALSE(w2.empty);
    CHECK(w2.lo == 1);
    CHECK(w2.hi == 2);
    CHECK(w2.radius == rat(1, 7));
    CHECK(w2.contains(1));
    CHECK(w2.contains(2));
    CHECK_FALSE(w2.contains(0));
    CHECK_FALSE(w2.contains(3));

    RankWindow w3 = rank_window(demo::three_level_multiplicity());
    REQUIRE_FALSE(w3.empty);
    CHECK(w3.lo == 2);
    CHECK(w3.hi == 3);
    CHECK(w3.radius == rat(1, 15));
}

TEST_CASE("window is empty when the origin carries no multiplicity") {
    // chi of the outer band [-1/2,-1/4) u [1/4,1/2) is consistent but vanishes at 0
    Partition p({rat(-1, 2), rat(-1, 4), rat(1, 4)});
    MultiplicityFunction m(IntStep(p, {1, 0, 1}), 1, 2);
    CHECK(check_consistency_inequality(m).holds);
    RankWindow w = rank_window(m);
    CHECK(w.empty);
    CHECK_FALSE(w.reason.empty());
    CHECK_FALSE(w.contains(1));
}

TEST_CASE("multiplicity validates its own invariants") {
    CHECK_THROWS(MultiplicityFunction(IntStep::constant(-1), 2, 2));
    CHECK_THROWS(MultiplicityFunction(IntStep::constant(3), 2, 2));
    CHECK_THROWS(MultiplicityFunction(IntStep::constant(1), 1, 1));
}
