#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmra/demo_data.hpp"
#include "gmra/hilbert.hpp"

#include "helpers.hpp"

#include <cmath>
#include <complex>

using namespace gmra;
using testutil::paper_filters;
using testutil::quadrature_inner;
using testutil::sample_points;
using testutil::single_term;

namespace {

constexpr double kOpTol = 1e-10;

double eval_gap(const ModulatedStepVector& a, const ModulatedStepVector& b, const Rational& x) {
    auto va = a.eval(x);
    auto vb = b.eval(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) worst = std::max(worst, std::abs(va[i] - vb[i]));
    return worst;
}

} // namespace

TEST_CASE("closed-form inner product matches the antiderivative oracle") {
    MultiplicityFunction m = demo::journe_multiplicity();
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        ModulatedStepVector f = random_k_vector(m, seed);
        ModulatedStepVector g = random_k_vector(m, seed + 50);
        std::complex<double> closed = inner_product(f, g);
        std::complex<double> quad = quadrature_inner(f, g);
        CHECK(std::abs(closed - quad) <= 1e-12);
        CHECK(std::abs(inner_product(f, f).real() - quadrature_inner(f, f).real()) <= 1e-12);
    }
}

TEST_CASE("inner product is a genuine sesquilinear form") {
    MultiplicityFunction m = demo::three_level_multiplicity();
    ModulatedStepVector f = random_k_vector(m, 7);
    ModulatedStepVector g = random_k_vector(m, 8);
    ModulatedStepVector h = random_k_vector(m, 9);
    std::complex<double> a{0.3, -1.2};

    CHECK(std::abs(inner_product(f, g) - std::conj(inner_product(g, f))) <= 1e-14);
    CHECK(std::abs(inner_product(f + h, g) - inner_product(f, g) - inner_product(h, g)) <= 1e-13);
    CHECK(std::abs(inner_product(a * f, g) - a * inner_product(f, g)) <= 1e-13);
    CHECK(inner_product(f, f).imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(norm(f) > 0.0);
    CHECK(norm(ModulatedStepVector::zero(3)) == 0.0);
}

TEST_CASE("inner product stays bounded at minuscule frequency gaps") {
    // deep adjoint tails produce frequency differences like 1/2^58; a sloppy
    // fold of sin(pi u) near an integer would blow the cell integral up to
    // O(1/delta) and break Cauchy-Schwarz by an order of magnitude
    CxStep full = CxStep::constant({1.0, 0.0});
    CxStep quarter(Partition({rat(-1, 2), rat(1, 4)}), {{0.0, 0.0}, {1.0, 0.0}});
    for (int k : {40, 50, 58}) {
        for (int sign : {1, -1}) {
            Rational gap = Rational(sign) / Rational(pow_z(2, k));
            ModulatedStepVector f = single_term(1, rat(0), {full});
            ModulatedStepVector g = single_term(1, gap, {full});
            std::complex<double> ip = inner_product(f, g);
            CHECK(std::abs(ip) <= norm(f) * norm(g) + 1e-12);
            CHECK(std::abs(ip - 1.0) <= 1e-12);

            ModulatedStepVector fq = single_term(1, rat(0), {quarter});
            ModulatedStepVector gq = single_term(1, gap, {quarter});
            CHECK(std::abs(inner_product(fq, gq) - 0.25) <= 1e-12);
        }
    }
}

TEST_CASE("terms with equal frequency merge and exact zeros vanish") {
    CxStep one = CxStep::constant({1.0, 0.0});
    CxStep minus = CxStep::constant({-1.0, 0.0});
    ModulatedStepVector f = single_term(1, rat(2), {one}) + single_term(1, rat(2), {one});
    CHECK(f.terms().size() == 1);
    ModulatedStepVector z = single_term(1, rat(2), {one}) + single_term(1, rat(2), {minus});
    CHECK(z.is_zero());
    // distinct frequencies are orthogonal, so the norm adds in squares
    ModulatedStepVector two = single_term(1, rat(0), {one}) + single_term(1, rat(3), {one});
    CHECK(norm(two) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("translation representation acts by character multiplication") {
    MultiplicityFunction m = demo::journe_multiplicity();
    ModulatedStepVector f = random_k_vector(m, 11);
    for (long gamma = -3; gamma <= 3; ++gamma) {
        ModulatedStepVector rf = apply_rho(gamma, f);
        for (const auto& x : sample_points()) {
            double angle = 2.0 * 3.14159265358979323846 * gamma * to_double(x);
            std::complex<double> phase{std::cos(angle), std::sin(angle)};
            auto fv = f.eval(x);
            auto rv = rf.eval(x);
            for (std::size_t i = 0; i < fv.size(); ++i) CHECK(std::abs(rv[i] - phase * fv[i]) <= 1e-12);
        }
        CHECK(std::abs(inner_product(rf, rf) - inner_product(f, f)) <= 1e-12);
    }
    // group law
    ModulatedStepVector twice = apply_rho(2, apply_rho(3, f));
    CHECK(norm(twice - apply_rho(5, f)) <= 1e-12);
}

TEST_CASE("the isometry matches its defining formula pointwise") {
    for (const auto& H : paper_filters()) {
        OperatorContext ctx(H);
        ModulatedStepVector f = random_k_vector(ctx.multiplicity(), 21);
        // cover integer and fractional frequency paths
        std::vector<ModulatedStepVector> inputs{f, apply_S_star(ctx, f), apply_S_star(ctx, apply_S_star(ctx, f))};
        for (const auto& g : inputs) {
            ModulatedStepVector sg = apply_S(ctx, g);
            for (const auto& x : sample_points()) {
                Eigen::MatrixXcd hx = ctx.filter().eval(x);
                auto gv = g.eval(reduce_mod1(rat(2) * x));
                auto sv = sg.eval(x);
                for (int i = 0; i < ctx.components(); ++i) {
                    std::complex<double> expect = 0.0;
                    for (int j = 0; j < ctx.components(); ++j) expect += hx(j, i) * gv[static_cast<std::size_t>(j)];
                    CHECK(std::abs(sv[static_cast<std::size_t>(i)] - expect) <= 1e-11);
                }
            }
        }
    }
}

TEST_CASE("the adjoint matches its defining formula pointwise") {
    for (const auto& H : paper_filters()) {
        OperatorContext ctx(H);
        ModulatedStepVector f = random_k_vector(ctx.multiplicity(), 33);
        for (const auto& g : {f, apply_S_star(ctx, f)}) {
            ModulatedStepVector sg = apply_S_star(ctx, g);
            for (const auto& x : sample_points()) {
                auto sv = sg.eval(x);
                std::vector<std::complex<double>> expect(static_cast<std::size_t>(ctx.components()), 0.0);
                for (long j = 0; j < 2; ++j) {
                    Rational zeta = fiber_point(x, 2, 1, j);
                    Eigen::MatrixXcd hz = ctx.filter().eval(zeta);
                    auto gz = g.eval(zeta);
                    for (int i = 0; i < ctx.components(); ++i)
                        for (int k = 0; k < ctx.components(); ++k)
                            expect[static_cast<std::size_t>(i)] += std::conj(hz(i, k)) * gz[static_cast<std::size_t>(k)] / 2.0;
                }
                for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(sv[i] - expect[i]) <= 1e-11);
            }
        }
    }
}

TEST_CASE("isometry, adjoint and intertwining relations hold to operator tolerance") {
    for (const auto& H : paper_filters()) {
        OperatorContext ctx(H);
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            ModulatedStepVector f = random_k_vector(ctx.multiplicity(), seed);
            ModulatedStepVector g = random_k_vector(ctx.multiplicity(), seed + 100);
            CHECK(std::abs(norm(apply_S(ctx, f)) - norm(f)) <= kOpTol);
            CHECK(norm(apply_S_star(ctx, apply_S(ctx, f)) - f) <= kOpTol);
            CHECK(std::abs(inner_product(apply_S(ctx, f), g) - inner_product(f, apply_S_star(ctx, g))) <= kOpTol);
            for (long gamma = -3; gamma <= 3; ++gamma) CHECK(check_intertwining(ctx, gamma, f) <= kOpTol);
        }
    }
}

TEST_CASE("powers agree with iterated application") {
    OperatorContext ctx(demo::three_level_filter_c());
    ModulatedStepVector f = random_k_vector(ctx.multiplicity(), 5);
    ModulatedStepVector s3 = apply_S(ctx, apply_S(ctx, apply_S(ctx, f)));
    CHECK(norm(apply_S_power(ctx, f, 3) - s3) <= 1e-11);
    ModulatedStepVector t2 = apply_S_star(ctx, apply_S_star(ctx, f));
    CHECK(norm(apply_S_star_power(ctx, f, 2) - t2) <= 1e-11);
    CHECK(norm(apply_S_power(ctx, f, 0) - f) == 0.0);
    CHECK(norm(apply_S_star_power(ctx, f, 0) - f) == 0.0);
    // S^n is still an isometry and S*^n its left inverse's adjoint
    CHECK(std::abs(norm(apply_S_power(ctx, f, 3)) - norm(f)) <= 1e-10);
    CHECK(norm(apply_S_star_power(ctx, apply_S_power(ctx, f, 3), 3) - f) <= 1e-10);
}

TEST_CASE("operators preserve and respect the component supports") {
    MultiplicityFunction m = demo::journe_multiplicity();
    OperatorContext ctx(demo::journe_filter());
    ModulatedStepVector raw = single_term(2, rat(1), {CxStep::constant({1.0, 0.0}), CxStep::constant({1.0, 0.0})});
    CHECK_FALSE(supports_ok(m, raw));
    ModulatedStepVector masked = mask_to_supports(m, raw);
    CHECK(supports_ok(m, masked));
    // the second component lives on the innermost support set only
    CHECK(std::abs(masked.eval(rat(3, 10))[1]) == 0.0);
    CHECK(std::abs(masked.eval(rat(1, 10))[1]) == doctest::Approx(1.0).epsilon(1e-12));
    // S and S* keep vectors inside the direct sum
    CHECK(supports_ok(m, apply_S(ctx, masked)));
    CHECK(supports_ok(m, apply_S_star(ctx, masked)));
}

TEST_CASE("random vectors are deterministic, supported and well-sized") {
    MultiplicityFunction m = demo::three_level_multiplicity();
    ModulatedStepVector a = random_k_vector(m, 42);
    ModulatedStepVector b = random_k_vector(m, 42);
    CHECK(norm(a - b) == 0.0);
    CHECK(supports_ok(m, a));
    CHECK(norm(a) > 1e-6);
    ModulatedStepVector c = random_k_vector(m, 43);
    CHECK(norm(a - c) > 1e-8);
}
