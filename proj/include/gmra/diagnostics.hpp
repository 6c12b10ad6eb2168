#pragma once

#include "gmra/hilbert.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace gmra {

// ---------------------------------------------------------------------------
// Purity: p_n = || S^n S*^n f || for a unit vector f. The projections onto
// range(S^n) are nested, so the sequence is non-increasing; it decays to 0
// for every f exactly when no part of f survives in every range(S^n).
// ---------------------------------------------------------------------------

struct PurityReport {
    std::vector<double> norms; // index n = 0..n_max
    double min_norm = 1.0;
    int argmin = 0;
};

PurityReport purity_test(const OperatorContext& ctx, const ModulatedStepVector& f, int n_max);

// ---------------------------------------------------------------------------
// Martingale averages X_n(w) = N^-n sum_j ||f(w + j/N^n)||^2, the conditional
// expectations of ||f||^2 on the dilation-coarsened grids. For a
// single-frequency f they are computed exactly as step functions via the
// 1/N^n periodicity; otherwise they are sampled.
// ---------------------------------------------------------------------------

RealStep martingale_average(long N, const ModulatedStepVector& f, int n);

// max |avg of X_n over the scale-(n+1) kernel translates - X_{n+1}|; exact
// tower property makes this 0 up to rounding.
double martingale_tower_deviation(long N, const ModulatedStepVector& f, int n);

struct MartingaleReport {
    std::vector<Rational> grid;        // sample points (cell midpoints)
    std::vector<double> max_deviation; // index n-1 for n = 1..n_max
    double norm_sq = 0.0;              // the martingale limit
    double bound_constant = 0.0;       // C with dev_n <= C / N^n (exact step mode)
    double fitted_constant = 0.0;      // max_n dev_n * N^n actually observed
    bool exact = false;                // step mode vs sampled mode
};

MartingaleReport martingale_report(long N, const ModulatedStepVector& f, int n_max);

// ---------------------------------------------------------------------------
// Range-vector norm identity: for f = S^n g the pointwise norm of S*^n f
// equals the depth-n fiber average of ||f||^2. The raw variant skips the
// S^n preparation so callers can demonstrate failure off range(S^n).
// ---------------------------------------------------------------------------

struct NormIdentityReport {
    double max_deviation = 0.0;
    std::size_t samples = 0;
};

NormIdentityReport norm_identity_check(const OperatorContext& ctx, const ModulatedStepVector& g, int n);
NormIdentityReport norm_identity_raw(const OperatorContext& ctx, const ModulatedStepVector& f, int n);

// ---------------------------------------------------------------------------
// Truncated scaling products on a uniform real-line grid.
// ---------------------------------------------------------------------------

struct RealLineGrid {
    Rational xmax;
    Rational step;
    std::vector<Eigen::MatrixXcd> samples; // index i <-> point -xmax + i*step

    std::size_t size() const { return samples.size(); }
    Rational point(std::size_t i) const { return -xmax + Rational(static_cast<long>(i)) * step; }
    bool contains(const Rational& y) const;
    std::size_t index_of(const Rational& y) const; // throws std::out_of_range off grid
};

// M(x) = product over j = 1..depth of H(x/N^j)/sqrt(N), then the low-pass
// block zeroing columns beyond `rank`. Requires a valid low-pass certificate.
RealLineGrid scaling_product(const OperatorContext& ctx, int rank, int depth, const Rational& xmax,
                             const Rational& step, bool parallel = true);

// ---------------------------------------------------------------------------
// Translation Gram ranks: the generators are the diagonal entries of the
// product matrices (the scalar scaling functions); G(x) sums their fiber
// outer products over integer translates |k| <= k_trunc.
// ---------------------------------------------------------------------------

constexpr double kDefaultRankTol = 1e-8;

struct GramReport {
    Rational step;
    std::vector<Rational> points; // in [-1/2, 1/2)
    std::vector<int> ranks;
};

GramReport gram_multiplicity(const RealLineGrid& phi, int k_trunc, double rank_tol = kDefaultRankTol,
                             bool parallel = true);

// ---------------------------------------------------------------------------
// Grid-vs-profile comparisons. Grid cells within guard_cells * step of a
// profile breakpoint are skipped: a depth-truncated product cannot resolve a
// jump exactly at the jump.
// ---------------------------------------------------------------------------

struct LineProfile {
    struct Piece {
        Rational lo;
        Rational hi;
        std::complex<double> value;
    };
    std::vector<Piece> pieces; // disjoint; function is 0 elsewhere

    std::complex<double> at(const Rational& x) const;
    std::vector<Rational> breakpoints() const;
};

std::size_t count_scaling_mismatches(const RealLineGrid& phi, int entry_i, int entry_j, const LineProfile& expected,
                                     double tol, int guard_cells = 1);

std::size_t count_gram_mismatches(const GramReport& report, const IntStep& expected, int guard_cells = 1);

} // namespace gmra
