#pragma once

#include "gmra/filter.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace gmra {

// ---------------------------------------------------------------------------
// Dense-enough vectors of K = direct sum of L^2(sigma_i): finite sums of
// modulated step functions x -> exp(2*pi*i*freq*x) * coeff(x), x the
// canonical representative in [-1/2, 1/2). Frequencies stay in Z[1/N]: the
// shift operators rho_gamma contribute integers, S multiplies by N, S*
// divides by N.
// ---------------------------------------------------------------------------

struct ModulatedTerm {
    Rational freq;
    std::vector<CxStep> coeffs; // component i supported in sigma_i
};

class ModulatedStepVector {
public:
    // Merges terms with equal frequency and drops identically-zero terms.
    ModulatedStepVector(int components, std::vector<ModulatedTerm> terms);

    static ModulatedStepVector zero(int components) { return ModulatedStepVector(components, {}); }

    int components() const { return c_; }
    const std::vector<ModulatedTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::vector<std::complex<double>> eval(const Rational& canonical_x) const;
    double squared_length_at(const Rational& canonical_x) const;

private:
    int c_;
    std::vector<ModulatedTerm> terms_;
};

ModulatedStepVector operator+(const ModulatedStepVector& a, const ModulatedStepVector& b);
ModulatedStepVector operator-(const ModulatedStepVector& a, const ModulatedStepVector& b);
ModulatedStepVector operator*(const std::complex<double>& s, const ModulatedStepVector& a);

// Linear in the first argument, conjugate-linear in the second. Cross terms
// between frequencies use the closed-form character integral over each cell.
std::complex<double> inner_product(const ModulatedStepVector& f, const ModulatedStepVector& g);
double norm(const ModulatedStepVector& f);

// Zero out the part of component i outside sigma_i.
ModulatedStepVector mask_to_supports(const MultiplicityFunction& m, const ModulatedStepVector& f);
bool supports_ok(const MultiplicityFunction& m, const ModulatedStepVector& f);

// ---------------------------------------------------------------------------
// Operators attached to a verified filter. Construction re-runs the support
// and filter-equation checks (plus the derived row-support law) and refuses
// filters that fail them, so S is always an isometry here.
// ---------------------------------------------------------------------------

class OperatorContext {
public:
    explicit OperatorContext(FilterMatrix H, double tol = kDefaultValueTol);

    const FilterMatrix& filter() const { return H_; }
    const MultiplicityFunction& multiplicity() const { return H_.multiplicity(); }
    long modulus() const { return H_.modulus(); }
    int components() const { return H_.dim(); }

private:
    FilterMatrix H_;
};

// (rho_gamma f)(x) = exp(2*pi*i*gamma*x) f(x).
ModulatedStepVector apply_rho(long gamma, const ModulatedStepVector& f);

// (S f)(x) = H^T(x) f(N x mod 1).
ModulatedStepVector apply_S(const OperatorContext& ctx, const ModulatedStepVector& f);

// (S* f)(x) = (1/N) * sum over preimages zeta of x of conj(H(zeta)) f(zeta).
ModulatedStepVector apply_S_star(const OperatorContext& ctx, const ModulatedStepVector& f);

// n-fold versions via the direct product formulas (not by iterating); they
// agree with iteration and exist so deep powers cost one pass.
ModulatedStepVector apply_S_power(const OperatorContext& ctx, const ModulatedStepVector& f, int n);
ModulatedStepVector apply_S_star_power(const OperatorContext& ctx, const ModulatedStepVector& f, int n);

// || S rho_gamma f - rho_{N gamma} S f ||.
double check_intertwining(const OperatorContext& ctx, long gamma, const ModulatedStepVector& f);

// Deterministic pseudo-random nonzero element of the space: `terms` integer
// frequencies in [-3, 3], coefficients on small random partitions, components
// masked to their supports.
ModulatedStepVector random_k_vector(const MultiplicityFunction& m, std::uint64_t seed, int terms = 2,
                                    int cells = 4);

} // namespace gmra
