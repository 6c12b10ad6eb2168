#include "gmra/demo_data.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace gmra::demo {

namespace {

using Interval = std::pair<Rational, Rational>;

bool inside(const Rational& x, const std::vector<Interval>& intervals) {
    for (const auto& [lo, hi] : intervals)
        if (x >= lo && x < hi) return true;
    return false;
}

// value * indicator of a disjoint union of half-open subintervals of
// [-1/2, 1/2).
CxStep indicator_step(const std::vector<Interval>& intervals, std::complex<double> value) {
    std::vector<Rational> bps;
    bps.push_back(rat(-1, 2));
    for (const auto& [lo, hi] : intervals) {
        bps.push_back(lo);
        if (hi < rat(1, 2)) bps.push_back(hi);
    }
    Partition part(std::move(bps));
    std::vector<std::complex<double>> vals;
    vals.reserve(part.cells());
    for (std::size_t i = 0; i < part.cells(); ++i)
        vals.push_back(inside(part.midpoint(i), intervals) ? value : std::complex<double>{0.0, 0.0});
    return {std::move(part), std::move(vals)};
}

CxStep zero_step() { return CxStep::constant({0.0, 0.0}); }

const double kRoot2 = std::sqrt(2.0);

} // namespace

MultiplicityFunction journe_multiplicity() {
    Partition part({rat(-1, 2), rat(-3, 7), rat(-2, 7), rat(-1, 7), rat(1, 7), rat(2, 7), rat(3, 7)});
    IntStep values(std::move(part), {1, 0, 1, 2, 1, 0, 1});
    return {std::move(values), 2, 2};
}

FilterMatrix journe_filter() {
    CxStep h11 = indicator_step({{rat(-2, 7), rat(-1, 4)}, {rat(-1, 7), rat(1, 7)}, {rat(1, 4), rat(2, 7)}}, kRoot2);
    CxStep h22 = indicator_step({{rat(-1, 14), rat(1, 14)}}, kRoot2);
    return {{{h11, zero_step()}, {zero_step(), h22}}, journe_multiplicity()};
}

MultiplicityFunction three_level_multiplicity() {
    Partition part({rat(-1, 2), rat(-7, 15), rat(-4, 15), rat(-2, 15), rat(-1, 15), rat(1, 15), rat(2, 15),
                    rat(4, 15), rat(7, 15)});
    IntStep values(std::move(part), {1, 0, 1, 2, 3, 2, 1, 0, 1});
    return {std::move(values), 3, 2};
}

namespace {

CxStep three_level_row1() {
    return indicator_step({{rat(-4, 15), rat(-1, 4)}, {rat(-2, 15), rat(2, 15)}, {rat(1, 4), rat(4, 15)}}, kRoot2);
}

CxStep three_level_corner() {
    return indicator_step({{rat(-1, 2), rat(-7, 15)}, {rat(7, 15), rat(1, 2)}}, kRoot2);
}

} // namespace

FilterMatrix three_level_filter_a() {
    CxStep h22 = indicator_step({{rat(-1, 15), rat(1, 15)}}, kRoot2);
    return {{{three_level_row1(), zero_step(), zero_step()},
             {zero_step(), h22, zero_step()},
             {three_level_corner(), zero_step(), zero_step()}},
            three_level_multiplicity()};
}

FilterMatrix three_level_filter_b() {
    CxStep h22 = indicator_step({{rat(-1, 30), rat(1, 30)}}, kRoot2);
    CxStep h23 = indicator_step({{rat(-1, 15), rat(-1, 30)}, {rat(1, 30), rat(1, 15)}}, kRoot2);
    return {{{three_level_row1(), zero_step(), zero_step()},
             {zero_step(), h22, h23},
             {three_level_corner(), zero_step(), zero_step()}},
            three_level_multiplicity()};
}

FilterMatrix three_level_filter_c() {
    CxStep h22 = indicator_step({{rat(-1, 15), rat(1, 15)}}, kRoot2);
    CxStep h33 = indicator_step({{rat(-1, 30), rat(1, 30)}}, kRoot2);
    return {{{three_level_row1(), zero_step(), zero_step()},
             {zero_step(), h22, zero_step()},
             {zero_step(), zero_step(), h33}},
            three_level_multiplicity()};
}

FilterMatrix haar_filter() {
    MultiplicityFunction m(IntStep::constant(1), 1, 2);
    return {{{indicator_step({{rat(-1, 4), rat(1, 4)}}, kRoot2)}}, std::move(m)};
}

FilterMatrix all_ones_filter() {
    MultiplicityFunction m(IntStep::constant(1), 1, 2);
    return {{{CxStep::constant({1.0, 0.0})}}, std::move(m)};
}

LineProfile journe_phi1_profile() {
    return {{{rat(-4, 7), rat(-1, 2), {1.0, 0.0}},
             {rat(-2, 7), rat(2, 7), {1.0, 0.0}},
             {rat(1, 2), rat(4, 7), {1.0, 0.0}}}};
}

LineProfile journe_phi2_profile() { return {{{rat(-1, 7), rat(1, 7), {1.0, 0.0}}}}; }

IntStep journe_translation_multiplicity() {
    Partition part({rat(-1, 2), rat(-3, 7), rat(-2, 7), rat(2, 7), rat(3, 7)});
    return {std::move(part), {1, 0, 1, 0, 1}};
}

} // namespace gmra::demo
