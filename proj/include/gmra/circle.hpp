#pragma once

#include "gmra/errors.hpp"
#include "gmra/rational.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

namespace gmra {

// ---------------------------------------------------------------------------
// The circle is R/Z with canonical coset representatives in [-1/2, 1/2).
// Dilation by the integer modulus N acts as omega -> reduce(N * omega); its
// kernel is {j/N}. Everything here is exact rational arithmetic.
// ---------------------------------------------------------------------------

class CirclePoint {
public:
    CirclePoint() : v_(0) {}
    explicit CirclePoint(const Rational& x) : v_(reduce_mod1(x)) {}

    // Canonical representative in [-1/2, 1/2).
    const Rational& value() const { return v_; }

    friend bool operator==(const CirclePoint& a, const CirclePoint& b) { return a.v_ == b.v_; }
    friend bool operator!=(const CirclePoint& a, const CirclePoint& b) { return a.v_ != b.v_; }
    friend bool operator<(const CirclePoint& a, const CirclePoint& b) { return a.v_ < b.v_; }

    CirclePoint translated(const Rational& t) const { return CirclePoint(v_ + t); }

private:
    Rational v_;
};

// Finite partition of the circle into consecutive half-open cells. Cell i is
// [lo(i), lo(i+1)); the last cell wraps around through -1/2 == 1/2. A
// breakpoint always belongs to the cell on its right.
class Partition {
public:
    // Breakpoints are reduced to canonical representatives, sorted, deduped.
    // At least one breakpoint is required (a constant function still has one).
    explicit Partition(std::vector<Rational> breakpoints);

    static Partition whole() { return Partition({rat(-1, 2)}); }

    std::size_t cells() const { return bps_.size(); }
    const std::vector<Rational>& breakpoints() const { return bps_; }

    const Rational& lo(std::size_t i) const { return bps_[i]; }
    Rational hi(std::size_t i) const;
    Rational length(std::size_t i) const { return hi(i) - lo(i); }
    Rational midpoint(std::size_t i) const;

    // Index of the cell containing the canonical point x.
    std::size_t cell_of(const Rational& canonical_x) const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.bps_ == b.bps_; }

private:
    std::vector<Rational> bps_;
};

// Common refinement: every cell of either input is a union of result cells.
Partition refine(const Partition& a, const Partition& b);

// ---------------------------------------------------------------------------
// Step functions: one value per partition cell.
// ---------------------------------------------------------------------------

template <class T>
class Step {
public:
    Step(Partition part, std::vector<T> values) : part_(std::move(part)), vals_(std::move(values)) {
        if (vals_.size() != part_.cells()) throw std::invalid_argument("step: value count != cell count");
    }

    static Step constant(const T& v) { return Step(Partition::whole(), {v}); }

    const Partition& partition() const { return part_; }
    const std::vector<T>& values() const { return vals_; }
    const T& value(std::size_t cell) const { return vals_[cell]; }

    const T& at(const Rational& canonical_x) const { return vals_[part_.cell_of(canonical_x)]; }
    const T& at(const CirclePoint& x) const { return at(x.value()); }

    // Resample onto `finer`, which must refine partition().
    Step refined_to(const Partition& finer) const {
        std::vector<T> out;
        out.reserve(finer.cells());
        for (std::size_t i = 0; i < finer.cells(); ++i) out.push_back(at(finer.lo(i)));
        return Step(finer, std::move(out));
    }

    // Merge adjacent cells (including across the wrap) carrying equal values.
    // A constant function canonicalizes to the single breakpoint -1/2.
    Step simplified() const {
        const auto& bps = part_.breakpoints();
        std::vector<Rational> nb;
        std::vector<T> nv;
        for (std::size_t i = 0; i < bps.size(); ++i) {
            if (!nv.empty() && vals_[i] == nv.back()) continue;
            nb.push_back(bps[i]);
            nv.push_back(vals_[i]);
        }
        if (nv.size() > 1 && nv.front() == nv.back()) {
            nb.erase(nb.begin());
            nv.erase(nv.begin());
        }
        if (nv.size() == 1) return constant(nv[0]);
        return Step(Partition(std::move(nb)), std::move(nv));
    }

    template <class F>
    auto map(F f) const -> Step<decltype(f(std::declval<T>()))> {
        std::vector<decltype(f(std::declval<T>()))> out;
        out.reserve(vals_.size());
        for (const auto& v : vals_) out.push_back(f(v));
        return {part_, std::move(out)};
    }

private:
    Partition part_;
    std::vector<T> vals_;
};

using IntStep = Step<long>;
using RealStep = Step<double>;
using CxStep = Step<std::complex<double>>;

template <class A, class B, class F>
auto zip(const Step<A>& a, const Step<B>& b, F f) -> Step<decltype(f(std::declval<A>(), std::declval<B>()))> {
    Partition common = refine(a.partition(), b.partition());
    auto ra = a.refined_to(common);
    auto rb = b.refined_to(common);
    std::vector<decltype(f(std::declval<A>(), std::declval<B>()))> out;
    out.reserve(common.cells());
    for (std::size_t i = 0; i < common.cells(); ++i) out.push_back(f(ra.value(i), rb.value(i)));
    return {common, std::move(out)};
}

template <class T>
Step<T> operator+(const Step<T>& a, const Step<T>& b) {
    return zip(a, b, [](const T& x, const T& y) { return x + y; });
}
template <class T>
Step<T> operator-(const Step<T>& a, const Step<T>& b) {
    return zip(a, b, [](const T& x, const T& y) { return x - y; });
}
template <class T>
Step<T> operator*(const Step<T>& a, const Step<T>& b) {
    return zip(a, b, [](const T& x, const T& y) { return x * y; });
}
template <class T>
Step<T> operator*(const T& s, const Step<T>& a) {
    return a.map([&](const T& v) { return s * v; });
}

// Exact equality as functions (values compared on the common refinement).
template <class T>
bool value_equal(const Step<T>& a, const Step<T>& b) {
    Partition common = refine(a.partition(), b.partition());
    return a.refined_to(common).values() == b.refined_to(common).values();
}

double max_abs_diff(const CxStep& a, const CxStep& b);
double max_abs_diff(const RealStep& a, const RealStep& b);

// Largest r <= 1/2 such that f is constant on the open interval (-r, r);
// zero if f jumps at 0 itself.
template <class T>
Rational constancy_radius_at_zero(const Step<T>& f) {
    Step<T> s = f.simplified();
    Rational r = rat(1, 2);
    for (const Rational& b : s.partition().breakpoints()) {
        if (b == 0) return Rational(0);
        Rational dist = b < 0 ? Rational(-b) : b;
        r = std::min(r, dist);
    }
    return r;
}

// Exact integral of an integer step function against Lebesgue measure.
Rational integral_exact(const IntStep& f);
std::complex<double> integral(const CxStep& f);
double integral(const RealStep& f);

// ---------------------------------------------------------------------------
// Circle maps.
// ---------------------------------------------------------------------------

// f(reduce(N^power * x)). Cell count scales with N^power; budget-guarded.
template <class T>
Step<T> pullback_dilation(const Step<T>& f, long N, int power = 1);

// The N^n preimages of omega under n-fold dilation, ordered by fiber index
// j = 0..N^n-1: zeta_j = reduce((omega + j) / N^n).
std::vector<CirclePoint> preimages(const CirclePoint& omega, long N, int power = 1);

// Kernel of n-fold dilation: reduce(j / N^n), j = 0..N^n-1.
std::vector<CirclePoint> kernel_points(long N, int power = 1);

// Borel cross-section omega -> omega / N used throughout; its image is
// C = [-1/(2N), 1/(2N)).
CirclePoint section_point(const CirclePoint& omega, long N);

// f(zeta_j(omega)) with zeta_j(omega) = reduce((omega + j) / N^n): the j-th
// branch of the inverse of n-fold dilation, as a function of omega.
template <class T>
Step<T> compose_fiber(const Step<T>& f, long N, int power, long j);

// f(x - t): rotation of the graph by t.
template <class T>
Step<T> translate(const Step<T>& f, const Rational& t) {
    const Partition& p = f.partition();
    std::vector<std::pair<Rational, T>> cells;
    cells.reserve(p.cells());
    for (std::size_t i = 0; i < p.cells(); ++i) cells.emplace_back(reduce_mod1(p.lo(i) + t), f.value(i));
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Rational> bps;
    std::vector<T> vals;
    for (auto& c : cells) {
        bps.push_back(c.first);
        vals.push_back(c.second);
    }
    return Step<T>(Partition(std::move(bps)), std::move(vals));
}

// Breakpoints of omega -> f(zeta_j(omega)) (used by compose_fiber and by the
// fiber-sum routines): the unique solution of zeta_j(omega) = b per
// breakpoint b that exists, plus the wrap artifacts of the branch.
std::vector<Rational> fiber_breakpoints(const std::vector<Rational>& bps, long N, int power, long j);

// Canonical zeta_j(omega) for one point.
Rational fiber_point(const Rational& canonical_omega, long N, int power, long j);

// ---------------------------------------------------------------------------

template <class T>
Step<T> pullback_dilation(const Step<T>& f, long N, int power) {
    mpz_class scale = 1;
    for (int k = 0; k < power; ++k) scale *= N;
    const auto& bps = f.partition().breakpoints();
    mpz_class total = scale * static_cast<unsigned long>(bps.size());
    ensure_cells(total.fits_ulong_p() ? total.get_ui() : cell_budget() + 1, "pullback_dilation");
    Rational scale_q{scale};
    std::vector<Rational> nb;
    nb.reserve(static_cast<std::size_t>(total.get_ui()));
    for (const Rational& b : bps)
        for (mpz_class t = 0; t < scale; ++t) nb.push_back(reduce_mod1((b + Rational(t)) / scale_q));
    Partition p(std::move(nb));
    std::vector<T> vals;
    vals.reserve(p.cells());
    for (std::size_t i = 0; i < p.cells(); ++i) vals.push_back(f.at(reduce_mod1(p.lo(i) * scale_q)));
    return Step<T>(p, std::move(vals));
}

template <class T>
Step<T> compose_fiber(const Step<T>& f, long N, int power, long j) {
    Partition p(fiber_breakpoints(f.partition().breakpoints(), N, power, j));
    std::vector<T> vals;
    vals.reserve(p.cells());
    for (std::size_t i = 0; i < p.cells(); ++i) vals.push_back(f.at(fiber_point(p.lo(i), N, power, j)));
    return Step<T>(p, std::move(vals));
}

} // namespace gmra
