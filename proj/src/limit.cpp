#include "gmra/limit.hpp"

#include "gmra/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace gmra {

namespace {

long checked_modulus_power(long N, int power, const char* where) {
    mpz_class p = pow_z(N, power);
    if (!p.fits_slong_p()) throw DepthTooLarge(std::string(where) + ": level out of range");
    return p.get_si();
}

} // namespace

LimitVector LimitSpace::embed(int level, ModulatedStepVector f) const {
    if (level < 0) throw std::invalid_argument("level must be nonnegative");
    if (f.components() != ctx_.components()) throw std::invalid_argument("component count mismatch");
    if (!supports_ok(ctx_.multiplicity(), f))
        throw std::invalid_argument("payload has mass outside the component supports");
    return {level, std::move(f)};
}

LimitVector LimitSpace::at_level(const LimitVector& v, int level) const {
    if (level < v.level) throw std::invalid_argument("a class has representatives only at its level and above");
    return {level, apply_S_power(ctx_, v.payload, level - v.level)};
}

std::complex<double> LimitSpace::inner(const LimitVector& a, const LimitVector& b) const {
    int level = std::max(a.level, b.level);
    return inner_product(at_level(a, level).payload, at_level(b, level).payload);
}

double LimitSpace::norm_of(const LimitVector& v) const { return norm(v.payload); }

double LimitSpace::distance(const LimitVector& a, const LimitVector& b) const {
    int level = std::max(a.level, b.level);
    return norm(at_level(a, level).payload - at_level(b, level).payload);
}

LimitVector LimitSpace::apply_S_infinity(const LimitVector& v) const {
    return {v.level, apply_S(ctx_, v.payload)};
}

LimitVector LimitSpace::apply_delta(const LimitVector& v) const { return {v.level + 1, v.payload}; }

LimitVector LimitSpace::apply_pi(long gamma, const LimitVector& v) const {
    long scale = checked_modulus_power(ctx_.modulus(), v.level, "apply_pi");
    if (gamma != 0 && (std::abs(gamma) > std::numeric_limits<long>::max() / scale))
        throw DepthTooLarge("apply_pi: frequency shift out of range");
    return {v.level, apply_rho(gamma * scale, v.payload)};
}

LimitVector LimitSpace::project_V(int n, const LimitVector& v) const {
    if (n < 0) throw std::invalid_argument("subspace index must be nonnegative");
    if (v.level <= n) return at_level(v, n);
    int steps = v.level - n;
    ModulatedStepVector dropped = apply_S_star_power(ctx_, v.payload, steps);
    return {v.level, apply_S_power(ctx_, dropped, steps)};
}

double AxiomReport::max_deviation() const {
    double m = 0.0;
    for (const auto& c : checks)
        if (!c.structural) m = std::max(m, c.deviation);
    return m;
}

AxiomReport check_gmra_axioms(const LimitSpace& space, const std::vector<ModulatedStepVector>& test_vectors,
                              int levels) {
    if (levels < 1) throw std::invalid_argument("need at least one level");
    AxiomReport report;
    auto note = [&](std::string name, double dev, bool structural = false) {
        report.checks.push_back({std::move(name), dev, structural});
    };

    double nesting = 0.0, dilation = 0.0, translation = 0.0, density_gap = 0.0;
    for (const auto& f : test_vectors) {
        LimitVector w = space.embed(levels, f);
        for (int n = 0; n + 1 <= levels; ++n) {
            LimitVector pn = space.project_V(n, w);
            nesting = std::max(nesting, space.distance(space.project_V(n + 1, pn), pn));
            dilation = std::max(dilation,
                                space.distance(space.apply_delta(pn), space.project_V(n + 1, space.apply_delta(w))));
        }
        for (long gamma = -3; gamma <= 3; ++gamma) {
            translation = std::max(translation, space.distance(space.project_V(0, space.apply_pi(gamma, w)),
                                                               space.apply_pi(gamma, space.project_V(0, w))));
        }
        double nrm = space.norm_of(w);
        if (nrm > 0.0) density_gap = std::max(density_gap, std::abs(space.norm_of(space.project_V(levels, w)) / nrm - 1.0));
    }
    note("nesting: V_n fixed inside V_{n+1}", nesting);
    note("dilation: delta carries V_n onto V_{n+1}", dilation);
    note("translation: project_V(0) commutes with pi_gamma, |gamma| <= 3", translation);
    note("density: representable vectors already lie in some V_n", density_gap, true);
    note("trivial intersection: delegated to the purity diagnostic", 0.0, true);
    return report;
}

} // namespace gmra
