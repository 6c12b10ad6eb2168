#pragma once

#include "gmra/demo_data.hpp"
#include "gmra/hilbert.hpp"

#include <complex>
#include <numbers>
#include <vector>

namespace testutil {

using namespace gmra;

// Canonical sample points: every breakpoint the demo data uses (sevenths,
// fifteenths, quarters and their halves), plus prime-denominator points that
// never coincide with a breakpoint.
inline std::vector<Rational> sample_points() {
    std::vector<Rational> pts;
    for (long k = -48; k < 49; k += 7) pts.push_back(rat(k, 97));
    for (long k = -7; k < 8; ++k) pts.push_back(rat(k, 15));
    for (long k = -3; k < 4; ++k) pts.push_back(rat(k, 7));
    for (long k = -7; k < 8; k += 3) pts.push_back(rat(k, 30));
    pts.push_back(rat(-1, 2));
    pts.push_back(rat(-1, 4));
    pts.push_back(rat(1, 4));
    pts.push_back(rat(-1, 14));
    pts.push_back(rat(1, 14));
    pts.push_back(rat(0));
    return pts;
}

inline std::vector<FilterMatrix> paper_filters() {
    std::vector<FilterMatrix> out;
    out.push_back(demo::journe_filter());
    out.push_back(demo::three_level_filter_a());
    out.push_back(demo::three_level_filter_b());
    out.push_back(demo::three_level_filter_c());
    return out;
}

// Antiderivative evaluation of sum_i f_i(x) conj(g_i(x)) over the circle.
// On the common refinement of every coefficient partition each term pair is
// v * integral of e^{2 pi i d x}, and that integral has the elementary closed
// form (e^{2 pi i d h} - e^{2 pi i d l}) / (2 pi i d), so the only error left
// is double rounding. Deliberately organised per term pair and per cell,
// unlike the production inner product.
inline std::complex<double> quadrature_inner(const ModulatedStepVector& f, const ModulatedStepVector& g) {
    std::vector<Rational> bps{rat(-1, 2)};
    for (const auto& t : f.terms())
        for (const auto& comp : t.coeffs)
            for (const auto& b : comp.partition().breakpoints()) bps.push_back(b);
    for (const auto& t : g.terms())
        for (const auto& comp : t.coeffs)
            for (const auto& b : comp.partition().breakpoints()) bps.push_back(b);
    Partition part(std::move(bps));

    std::complex<double> total = 0.0;
    for (const auto& ts : f.terms()) {
        for (const auto& tt : g.terms()) {
            const double delta = to_double(ts.freq - tt.freq);
            for (std::size_t c = 0; c < part.cells(); ++c) {
                const Rational lo = part.lo(c);
                std::complex<double> v = 0.0;
                for (std::size_t i = 0; i < ts.coeffs.size(); ++i)
                    v += ts.coeffs[i].at(lo) * std::conj(tt.coeffs[i].at(lo));
                if (v == std::complex<double>(0.0, 0.0)) continue;
                const double l = to_double(lo);
                const double h = l + to_double(part.length(c));
                std::complex<double> seg;
                if (delta == 0.0) {
                    seg = h - l;
                } else {
                    const std::complex<double> jw(0.0, 2.0 * std::numbers::pi * delta);
                    seg = (std::exp(jw * h) - std::exp(jw * l)) / jw;
                }
                total += v * seg;
            }
        }
    }
    return total;
}

inline ModulatedStepVector single_term(int components, const Rational& freq, std::vector<CxStep> coeffs) {
    std::vector<ModulatedTerm> terms;
    terms.push_back({freq, std::move(coeffs)});
    return ModulatedStepVector(components, std::move(terms));
}

} // namespace testutil
