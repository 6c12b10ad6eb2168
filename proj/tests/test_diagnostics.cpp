#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmra/demo_data.hpp"
#include "gmra/diagnostics.hpp"
#include "gmra/errors.hpp"

#include "helpers.hpp"

#include <cmath>
#include <stdexcept>

using namespace gmra;
using testutil::single_term;

TEST_CASE("purity pins the unitary part of the constant filter") {
    OperatorContext flat(demo::all_ones_filter());
    ModulatedStepVector one = single_term(1, rat(0), {CxStep::constant({1.0, 0.0})});
    PurityReport rep = purity_test(flat, one, 20);
    REQUIRE(rep.norms.size() == 21);
    for (double p : rep.norms) CHECK(p == 1.0);
    CHECK(rep.min_norm == 1.0);
}

TEST_CASE("purity decays geometrically for the two-band low-pass filter") {
    OperatorContext low(demo::haar_filter());
    ModulatedStepVector f = single_term(1, rat(1), {CxStep::constant({1.0, 0.0})});
    PurityReport rep = purity_test(low, f, 16);
    for (std::size_t n = 1; n < rep.norms.size(); ++n) CHECK(rep.norms[n] <= rep.norms[n - 1] + 1e-12);
    CHECK(rep.norms[16] == doctest::Approx(std::pow(2.0, -8.0)).epsilon(1e-10));
    CHECK(rep.min_norm < 0.1);
    CHECK(rep.argmin == 16);
}

TEST_CASE("purity is monotone on the worked rank-2 filter") {
    OperatorContext ctx(demo::journe_filter());
    for (std::uint64_t seed : {1, 2}) {
        ModulatedStepVector f = random_k_vector(ctx.multiplicity(), seed);
        PurityReport rep = purity_test(ctx, f, 20);
        CHECK(rep.norms[0] == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t n = 1; n < rep.norms.size(); ++n) CHECK(rep.norms[n] <= rep.norms[n - 1] + 1e-12);
    }
}

TEST_CASE("purity refuses vectors outside the direct sum") {
    OperatorContext ctx(demo::journe_filter());
    ModulatedStepVector bad = single_term(2, rat(0), {CxStep::constant({1.0, 0.0}), CxStep::constant({1.0, 0.0})});
    CHECK_THROWS_AS(purity_test(ctx, bad, 4), std::invalid_argument);
}

TEST_CASE("kernel-coset averages of a half-circle indicator flatten immediately") {
    Partition p({rat(-1, 2), rat(0)});
    ModulatedStepVector f = single_term(1, rat(0), {CxStep(p, {{0.0, 0.0}, {1.0, 0.0}})});
    RealStep x1 = martingale_average(2, f, 1);
    CHECK(value_equal(x1.simplified(), RealStep::constant(0.5)));
}

TEST_CASE("averages are exactly constant for constant data") {
    ModulatedStepVector f = single_term(1, rat(0), {CxStep::constant({0.5, -0.5})});
    MartingaleReport rep = martingale_report(2, f, 10);
    CHECK(rep.exact);
    CHECK(rep.norm_sq == doctest::Approx(0.5).epsilon(1e-15));
    for (double d : rep.max_deviation) CHECK(d == 0.0);
}

TEST_CASE("tower property: averaging once more refines the same data") {
    OperatorContext ctx(demo::journe_filter());
    ModulatedStepVector f = random_k_vector(ctx.multiplicity(), 3);
    for (int n = 1; n <= 4; ++n) CHECK(martingale_tower_deviation(2, f, n) <= 1e-12);
}

TEST_CASE("straddle bound controls the deviation at every level") {
    // frequency-0 data built from the worked filter rows: exact cell mode
    FilterMatrix H = demo::journe_filter();
    ModulatedStepVector f = single_term(2, rat(0), {H.entry(0, 0), H.entry(1, 1)});
    MartingaleReport rep = martingale_report(2, f, 10);
    REQUIRE(rep.exact);
    // the two diagonal rows carry mass 5/7 and 2/7
    CHECK(rep.norm_sq == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 0; n < rep.max_deviation.size(); ++n) {
        double budget = rep.bound_constant * std::pow(2.0, -static_cast<double>(n + 1));
        CHECK(rep.max_deviation[n] <= budget);
    }
    CHECK(rep.fitted_constant <= rep.bound_constant);
}

TEST_CASE("norm identity between the adjoint power and fiber averages") {
    for (const auto& H : {demo::journe_filter(), demo::three_level_filter_c()}) {
        OperatorContext ctx(H);
        for (std::uint64_t seed : {1, 2}) {
            ModulatedStepVector g = random_k_vector(ctx.multiplicity(), seed);
            for (int n = 1; n <= 3; ++n) {
                NormIdentityReport rep = norm_identity_check(ctx, g, n);
                CHECK(rep.max_deviation <= 1e-10);
                CHECK(rep.samples > 0);
            }
        }
    }
}

TEST_CASE("line grids index their own points") {
    RealLineGrid grid;
    grid.xmax = rat(2);
    grid.step = rat(1, 4);
    grid.samples.resize(17);
    CHECK(grid.point(0) == rat(-2));
    CHECK(grid.point(16) == rat(2));
    CHECK(grid.contains(rat(3, 4)));
    CHECK_FALSE(grid.contains(rat(5, 2)));
    CHECK_FALSE(grid.contains(rat(1, 3)));
    CHECK(grid.index_of(rat(-7, 4)) == 1);
    CHECK_THROWS_AS(grid.index_of(rat(1, 3)), std::out_of_range);
}

TEST_CASE("the truncated product recovers the two-band scaling function") {
    OperatorContext ctx(demo::haar_filter());
    RealLineGrid grid = scaling_product(ctx, 1, 20, rat(2), rat(1, 64));
    LineProfile box;
    box.pieces.push_back({rat(-1, 2), rat(1, 2), {1.0, 0.0}});
    CHECK(count_scaling_mismatches(grid, 0, 0, box, 1e-12) == 0);

    // a shifted profile must disagree somewhere away from breakpoints
    LineProfile wrong;
    wrong.pieces.push_back({rat(-1, 4), rat(3, 4), {1.0, 0.0}});
    CHECK(count_scaling_mismatches(grid, 0, 0, wrong, 1e-12) > 0);
}

TEST_CASE("the worked rank-2 product matches both indicator profiles on a coarse grid") {
    OperatorContext ctx(demo::journe_filter());
    RealLineGrid grid = scaling_product(ctx, 2, 18, rat(1), rat(1, 112));
    CHECK(count_scaling_mismatches(grid, 0, 0, demo::journe_phi1_profile(), 1e-12) == 0);
    CHECK(count_scaling_mismatches(grid, 1, 1, demo::journe_phi2_profile(), 1e-12) == 0);
    // off-diagonal entries vanish identically for this diagonal filter
    LineProfile zero;
    CHECK(count_scaling_mismatches(grid, 0, 1, zero, 1e-12) == 0);
    CHECK(count_scaling_mismatches(grid, 1, 0, zero, 1e-12) == 0);
}

TEST_CASE("scaling product validates its arguments") {
    OperatorContext ctx(demo::haar_filter());
    CHECK_THROWS_AS(scaling_product(ctx, 1, 0, rat(2), rat(1, 64)), std::invalid_argument);
    CHECK_THROWS_AS(scaling_product(ctx, 1, 10, rat(2), rat(3, 5)), std::invalid_argument);
    OperatorContext flat(demo::all_ones_filter());
    CHECK_THROWS_AS(scaling_product(flat, 1, 10, rat(2), rat(1, 64)), std::invalid_argument);
}

TEST_CASE("gram ranks recover the translation multiplicity") {
    OperatorContext haar(demo::haar_filter());
    RealLineGrid hgrid = scaling_product(haar, 1, 20, rat(2), rat(1, 64));
    GramReport hrep = gram_multiplicity(hgrid, 2);
    CHECK(count_gram_mismatches(hrep, IntStep::constant(1)) == 0);

    OperatorContext journe(demo::journe_filter());
    RealLineGrid jgrid = scaling_product(journe, 2, 18, rat(2), rat(1, 112));
    GramReport jrep = gram_multiplicity(jgrid, 2);
    CHECK(count_gram_mismatches(jrep, demo::journe_translation_multiplicity()) == 0);
    CHECK(count_gram_mismatches(jrep, IntStep::constant(1)) > 0);
}
