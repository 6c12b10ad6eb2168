#include "gmra/multiplicity.hpp"

#include <algorithm>

namespace gmra {

MultiplicityFunction::MultiplicityFunction(IntStep values, int c, long N)
    : values_(std::move(values)), c_(c), N_(N) {
    if (N_ < 2) throw std::invalid_argument("multiplicity: modulus N must be >= 2");
    if (c_ < 0) throw std::invalid_argument("multiplicity: bound c must be >= 0");
    for (long v : values_.values())
        if (v < 0 || v > c_)
            throw std::invalid_argument("multiplicity: values must lie in [0, c]");
}

IntStep fiber_sum(const MultiplicityFunction& m) {
    IntStep total = IntStep::constant(0);
    for (long j = 0; j < m.modulus(); ++j)
        total = total + compose_fiber(m.values(), m.modulus(), 1, j);
    return total;
}

template <class Bad>
static void compare_cells(const IntStep& lhs, const IntStep& rhs, Bad bad,
                          std::vector<CellWitness>& out) {
    Partition common = refine(lhs.partition(), rhs.partition());
    IntStep a = lhs.refined_to(common);
    IntStep b = rhs.refined_to(common);
    for (std::size_t i = 0; i < common.cells(); ++i)
        if (bad(a.value(i), b.value(i)))
            out.push_back({common.lo(i), common.hi(i), a.value(i), b.value(i)});
}

ConsistencyReport check_consistency_inequality(const MultiplicityFunction& m) {
    ConsistencyReport report;
    compare_cells(m.values(), fiber_sum(m), [](long mv, long tv) { return mv > tv; },
                  report.violations);
    report.holds = report.violations.empty();
    return report;
}

MultiplicityFunction complement(const MultiplicityFunction& m) {
    auto report = check_consistency_inequality(m);
    if (!report.holds) {
        const auto& w = report.violations.front();
        throw ConsistencyViolation("complement would be negative on [" + to_string(w.lo) + ", " +
                                   to_string(w.hi) + "): m = " + std::to_string(w.lhs) +
                                   " > fiber sum = " + std::to_string(w.rhs));
    }
    IntStep mt = (fiber_sum(m) - m.values()).simplified();
    long peak = *std::max_element(mt.values().begin(), mt.values().end());
    return MultiplicityFunction(mt, static_cast<int>(peak), m.modulus());
}

IdentityReport check_consistency_identity(const MultiplicityFunction& m, const MultiplicityFunction& mt) {
    IdentityReport report;
    compare_cells(m.values() + mt.values(), fiber_sum(m), [](long s, long t) { return s != t; },
                  report.mismatches);
    report.holds = report.mismatches.empty();
    return report;
}

std::vector<IntStep> support_sets(const MultiplicityFunction& m) {
    std::vector<IntStep> sigma;
    sigma.reserve(static_cast<std::size_t>(m.bound()));
    for (int i = 1; i <= m.bound(); ++i)
        sigma.push_back(m.values().map([i](long v) { return v >= i ? 1L : 0L; }).simplified());
    return sigma;
}

RankWindow rank_window(const MultiplicityFunction& m) {
    MultiplicityFunction mt = complement(m);
    RankWindow window;
    Rational rm = constancy_radius_at_zero(m.values());
    Rational rt = constancy_radius_at_zero(mt.values());
    if (rm == 0 || rt == 0) {
        window.reason = "multiplicity or complement jumps at 0";
        return window;
    }
    window.radius = std::min(rm, rt);
    long m0 = m.at(0);
    long mt0 = mt.at(0);
    window.lo = static_cast<int>(std::max(1L, m0 - mt0));
    window.hi = static_cast<int>(m0);
    window.empty = window.lo > window.hi;
    if (window.empty) window.reason = "no positive rank fits (m(0) = " + std::to_string(m0) + ")";
    return window;
}

} // namespace gmra
