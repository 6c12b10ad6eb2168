#pragma once

#include "gmra/hilbert.hpp"

#include <string>
#include <vector>

namespace gmra {

// ---------------------------------------------------------------------------
// Direct limit of K --S--> K --S--> K --> ... Elements are classes of pairs
// (level, payload) with (n, f) identified with (n+1, S f); the space itself
// is never materialized, every computation happens at a finite level.
// ---------------------------------------------------------------------------

struct LimitVector {
    int level = 0;
    ModulatedStepVector payload;
};

class LimitSpace {
public:
    explicit LimitSpace(OperatorContext ctx) : ctx_(std::move(ctx)) {}

    const OperatorContext& context() const { return ctx_; }

    // Wraps f as a level-n class member. Rejects payloads with mass outside
    // the component supports, since those break the (n, f) ~ (n+1, S f)
    // isometry.
    LimitVector embed(int level, ModulatedStepVector f) const;

    // Representative of the same class at a level >= v.level.
    LimitVector at_level(const LimitVector& v, int level) const;

    std::complex<double> inner(const LimitVector& a, const LimitVector& b) const;
    double norm_of(const LimitVector& v) const;
    double distance(const LimitVector& a, const LimitVector& b) const;

    // The unitary the isometry S extends to: (n, f) -> (n, S f). Its inverse
    // lowers nothing, it just re-indexes: (n, f) -> (n+1, f).
    LimitVector apply_S_infinity(const LimitVector& v) const;
    LimitVector apply_delta(const LimitVector& v) const;

    // Translation representation: (n, f) -> (n, rho_{N^n gamma} f).
    LimitVector apply_pi(long gamma, const LimitVector& v) const;

    // Orthogonal projection onto V_n, the image of the level-n copy of K.
    // At level k >= n this is S^(k-n) S*^(k-n); members of V_n are fixed.
    LimitVector project_V(int n, const LimitVector& v) const;

private:
    OperatorContext ctx_;
};

// One named deviation; structural entries document facts that hold by
// construction rather than by numerics and are excluded from max_deviation.
struct AxiomCheck {
    std::string name;
    double deviation = 0.0;
    bool structural = false;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    double max_deviation() const;
    bool pass(double tol) const { return max_deviation() <= tol; }
};

// Desk-scale ladder checks on test vectors embedded at level `levels`:
// nesting of the V_n, the dilation relation between delta and the
// projections, and commutation of project_V(0) with the translations.
AxiomReport check_gmra_axioms(const LimitSpace& space, const std::vector<ModulatedStepVector>& test_vectors,
                              int levels);

} // namespace gmra
