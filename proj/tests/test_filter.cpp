#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmra/demo_data.hpp"
#include "gmra/errors.hpp"
#include "gmra/filter.hpp"

#include "helpers.hpp"

#include <cmath>

using namespace gmra;
using testutil::paper_filters;
using testutil::sample_points;

namespace {

FilterMatrix scaled_entry(const FilterMatrix& H, int i, int j, std::complex<double> factor) {
    std::vector<std::vector<CxStep>> entries;
    for (int r = 0; r < H.dim(); ++r) {
        std::vector<CxStep> row;
        for (int c = 0; c < H.dim(); ++c) {
            CxStep e = H.entry(r, c);
            if (r == i && c == j) e = e.map([&](const std::complex<double>& v) { return factor * v; });
            row.push_back(std::move(e));
        }
        entries.push_back(std::move(row));
    }
    return {std::move(entries), H.multiplicity()};
}

} // namespace

TEST_CASE("worked filters satisfy every structural law") {
    struct Case {
        FilterMatrix H;
        int rank;
        Rational radius;
    };
    std::vector<Case> cases;
    cases.push_back({demo::journe_filter(), 2, rat(1, 14)});
    cases.push_back({demo::three_level_filter_a(), 2, rat(1, 15)});
    cases.push_back({demo::three_level_filter_b(), 2, rat(1, 30)});
    cases.push_back({demo::three_level_filter_c(), 3, rat(1, 30)});
    cases.push_back({demo::haar_filter(), 1, rat(1, 4)});

    for (const auto& c : cases) {
        CAPTURE(c.rank);
        CHECK(verify_support(c.H).pass());
        CHECK(verify_row_support(c.H).pass());
        FilterEqReport eq = verify_filter_equation(c.H, 1e-12);
        CHECK(eq.pass());
        CHECK(eq.max_deviation <= 1e-12);
        for (int depth = 1; depth <= 3; ++depth) {
            FilterEqReport deep = verify_superfilter(c.H, depth, 1e-10);
            CHECK(deep.pass());
            CHECK(deep.max_deviation <= 1e-10);
        }
        LowPassCertificate cert = check_lowpass(c.H, c.rank, 1e-12);
        CHECK(cert.valid);
        CHECK(cert.radius == c.radius);
        CHECK(cert.max_block_deviation <= 1e-12);
    }
}

TEST_CASE("low-pass certification rejects the wrong rank") {
    LowPassCertificate too_low = check_lowpass(demo::journe_filter(), 1, 1e-12);
    CHECK_FALSE(too_low.valid);
    CHECK_FALSE(too_low.reason.empty());
    LowPassCertificate too_high = check_lowpass(demo::three_level_filter_a(), 3, 1e-12);
    CHECK_FALSE(too_high.valid);
}

TEST_CASE("a rescaled entry breaks the filter equation measurably") {
    FilterMatrix bad = scaled_entry(demo::journe_filter(), 0, 0, {1.01, 0.0});
    FilterEqReport eq = verify_filter_equation(bad, 1e-12);
    CHECK_FALSE(eq.pass());
    CHECK(eq.max_deviation > 1e-2);
    CHECK_FALSE(eq.violations.empty());
}

TEST_CASE("support violations name the offending entry and cell") {
    // move mass into h12, whose column support is the innermost set
    FilterMatrix H = demo::journe_filter();
    std::vector<std::vector<CxStep>> entries{{H.entry(0, 0), CxStep::constant({1.0, 0.0})},
                                             {H.entry(1, 0), H.entry(1, 1)}};
    FilterMatrix bad(std::move(entries), H.multiplicity());
    SupportReport rep = verify_support(bad);
    REQUIRE_FALSE(rep.pass());
    // violations use one-based indices to mirror the h_ij naming
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.i == 1 && v.j == 2) found = true;
    CHECK(found);
}

TEST_CASE("step matrices evaluate like their entries and multiply pointwise") {
    FilterMatrix H = demo::three_level_filter_b();
    StepMatrix M = to_step_matrix(H);
    StepMatrix P = pullback_matrix(M, 2, 1);
    StepMatrix Q = matmul(M, P);
    for (const auto& x : sample_points()) {
        Eigen::MatrixXcd direct = H.eval(x);
        for (int i = 0; i < H.dim(); ++i)
            for (int j = 0; j < H.dim(); ++j) CHECK(direct(i, j) == H.entry(i, j).at(x));
        CHECK((M.at(x) - direct).cwiseAbs().maxCoeff() == 0.0);
        CHECK((P.at(x) - M.at(reduce_mod1(rat(2) * x))).cwiseAbs().maxCoeff() == 0.0);
        CHECK((Q.at(x) - Eigen::MatrixXcd(M.at(x) * P.at(x))).cwiseAbs().maxCoeff() <= 1e-15);
    }
    for (long j = 0; j < 4; ++j) {
        StepMatrix F = compose_fiber_matrix(M, 2, 2, j);
        for (const auto& x : sample_points())
            CHECK((F.at(x) - M.at(fiber_point(x, 2, 2, j))).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("synthesis lands inside the admissible window and verifies") {
    struct Case {
        MultiplicityFunction m;
        int rank;
    };
    std::vector<Case> cases;
    cases.push_back({demo::journe_multiplicity(), 1});
    cases.push_back({demo::journe_multiplicity(), 2});
    cases.push_back({demo::three_level_multiplicity(), 2});
    cases.push_back({demo::three_level_multiplicity(), 3});

    const double root_n = std::sqrt(2.0);
    for (const auto& c : cases) {
        CAPTURE(c.rank);
        FilterMatrix H = synthesize(c.m, c.rank);
        CHECK(verify_support(H).pass());
        CHECK(verify_row_support(H).pass());
        CHECK(verify_filter_equation(H, 1e-12).pass());
        CHECK(verify_superfilter(H, 2, 1e-10).pass());
        CHECK(check_lowpass(H, c.rank, 1e-12).valid);
        // seeded construction: every value is exactly 0 or exactly sqrt(N)
        for (int i = 0; i < H.dim(); ++i)
            for (int j = 0; j < H.dim(); ++j)
                for (const auto& v : H.entry(i, j).values()) {
                    CHECK(v.imag() == 0.0);
                    CHECK((v.real() == 0.0 || v.real() == root_n));
                }
    }
}

TEST_CASE("synthesis refuses ranks outside the window") {
    CHECK_THROWS_AS(synthesize(demo::journe_multiplicity(), 5), RankOutOfWindow);
    CHECK_THROWS_AS(synthesize(demo::journe_multiplicity(), 0), RankOutOfWindow);
    CHECK_THROWS_AS(synthesize(demo::three_level_multiplicity(), 1), RankOutOfWindow);

    Partition p({rat(-1, 2), rat(-1, 4), rat(1, 4)});
    MultiplicityFunction no_center(IntStep(p, {1, 0, 1}), 1, 2);
    CHECK_THROWS_AS(synthesize(no_center, 1), RankOutOfWindow);
}

TEST_CASE("synthesis refuses inconsistent multiplicities") {
    Partition p({rat(-1, 2), rat(1, 8), rat(1, 4)});
    MultiplicityFunction m(IntStep(p, {0, 1, 0}), 1, 2);
    CHECK_THROWS_AS(synthesize(m, 1), ConsistencyViolation);
}

TEST_CASE("filter construction validates shape against the multiplicity") {
    FilterMatrix H = demo::journe_filter();
    std::vector<std::vector<CxStep>> ragged{{H.entry(0, 0)}};
    CHECK_THROWS(FilterMatrix(std::move(ragged), H.multiplicity()));
}
