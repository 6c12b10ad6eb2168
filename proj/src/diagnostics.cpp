#include "gmra/diagnostics.hpp"

#include "gmra/errors.hpp"
#include "gmra/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace gmra {

namespace {

long checked_power(long N, int n, const char* where) {
    mpz_class p = pow_z(N, n);
    ensure_cells(p.fits_ulong_p() ? p.get_ui() : cell_budget() + 1, where);
    return p.get_si();
}

// ||f(x)||^2 as a step function; only defined when a single modulation phase
// (of modulus 1) covers the whole vector.
RealStep squared_profile(const ModulatedStepVector& f) {
    if (f.terms().size() > 1)
        throw std::invalid_argument("pointwise norm of a multi-frequency vector is not a step function");
    if (f.terms().empty()) return RealStep::constant(0.0);
    RealStep acc = RealStep::constant(0.0);
    for (const auto& comp : f.terms().front().coeffs)
        acc = acc + comp.map([](const std::complex<double>& v) { return std::norm(v); });
    return acc.simplified();
}

} // namespace

PurityReport purity_test(const OperatorContext& ctx, const ModulatedStepVector& f, int n_max) {
    if (n_max < 0) throw std::invalid_argument("depth must be nonnegative");
    if (!supports_ok(ctx.multiplicity(), f))
        throw std::invalid_argument("vector has mass outside the component supports");
    double scale = norm(f);
    if (!(scale > 0.0)) throw std::invalid_argument("cannot normalize the zero vector");
    ModulatedStepVector g = std::complex<double>(1.0 / scale, 0.0) * f;

    PurityReport rep;
    rep.norms.push_back(1.0);
    // S is an isometry for every verified context, so ||S^n S*^n g|| is just
    // ||S*^n g|| and the n-th step reuses the (n-1)-th.
    for (int n = 1; n <= n_max; ++n) {
        g = apply_S_star(ctx, g);
        double p = norm(g);
        rep.norms.push_back(p);
        if (p < rep.min_norm) {
            rep.min_norm = p;
            rep.argmin = n;
        }
    }
    return rep;
}

RealStep martingale_average(long N, const ModulatedStepVector& f, int n) {
    if (N < 2) throw std::invalid_argument("modulus must be at least 2");
    if (n < 0) throw std::invalid_argument("depth must be nonnegative");
    RealStep g = squared_profile(f);
    if (n == 0) return g;

    const long fibers = checked_power(N, n, "martingale_average");
    Rational period = Rational(1) / Rational(pow_z(N, n));

    // X_n is 1/N^n periodic: reduce every breakpoint into one period window,
    // evaluate there, then tile the circle with the profile.
    std::vector<Rational> rel;
    rel.reserve(g.partition().cells());
    for (const Rational& b : g.partition().breakpoints())
        rel.push_back(b - Rational(floor_q((b + period / 2) / period)) * period);
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
    ensure_cells(rel.size() * static_cast<std::size_t>(fibers), "martingale_average");

    std::vector<std::pair<Rational, double>> cells;
    cells.reserve(rel.size() * static_cast<std::size_t>(fibers));
    for (std::size_t i = 0; i < rel.size(); ++i) {
        const Rational& lo = rel[i];
        Rational hi = i + 1 < rel.size() ? rel[i + 1] : rel.front() + period;
        Rational mid = (lo + hi) / 2;
        double acc = 0.0;
        for (long j = 0; j < fibers; ++j) acc += g.at(reduce_mod1(mid + j * period));
        double val = acc / static_cast<double>(fibers);
        for (long j = 0; j < fibers; ++j) cells.emplace_back(reduce_mod1(lo + j * period), val);
    }
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Rational> bps;
    std::vector<double> vals;
    bps.reserve(cells.size());
    vals.reserve(cells.size());
    for (auto& cell : cells) {
        bps.push_back(std::move(cell.first));
        vals.push_back(cell.second);
    }
    return RealStep(Partition(std::move(bps)), std::move(vals)).simplified();
}

double martingale_tower_deviation(long N, const ModulatedStepVector& f, int n) {
    RealStep xn = martingale_average(N, f, n);
    RealStep xn1 = martingale_average(N, f, n + 1);
    Rational p = Rational(1) / Rational(pow_z(N, n + 1));
    RealStep avg = RealStep::constant(0.0);
    for (long i = 0; i < N; ++i) avg = avg + translate(xn, Rational(-(i * p)));
    avg = avg.map([&](double v) { return v / static_cast<double>(N); });
    return max_abs_diff(avg, xn1);
}

MartingaleReport martingale_report(long N, const ModulatedStepVector& f, int n_max) {
    if (n_max < 1) throw std::invalid_argument("need at least one depth");
    MartingaleReport rep;
    rep.norm_sq = inner_product(f, f).real();

    Partition common = Partition::whole();
    for (const auto& t : f.terms())
        for (const auto& comp : t.coeffs) common = refine(common, comp.partition());
    for (std::size_t i = 0; i < common.cells(); ++i) rep.grid.push_back(common.midpoint(i));

    rep.exact = f.terms().size() <= 1;
    if (rep.exact) {
        RealStep g = squared_profile(f);
        double gmax = 0.0;
        for (double v : g.values()) gmax = std::max(gmax, std::abs(v));
        rep.bound_constant = static_cast<double>(g.partition().cells()) * gmax;
        for (int n = 1; n <= n_max; ++n) {
            RealStep xn = martingale_average(N, f, n);
            double dev = 0.0;
            for (double v : xn.values()) dev = std::max(dev, std::abs(v - rep.norm_sq));
            rep.max_deviation.push_back(dev);
        }
    } else {
        rep.bound_constant = std::numeric_limits<double>::quiet_NaN();
        for (int n = 1; n <= n_max; ++n) {
            const long fibers = checked_power(N, n, "martingale_report");
            Rational period = Rational(1) / Rational(pow_z(N, n));
            double dev = 0.0;
            for (const Rational& x : rep.grid) {
                double acc = 0.0;
                for (long j = 0; j < fibers; ++j) acc += f.squared_length_at(reduce_mod1(x + j * period));
                dev = std::max(dev, std::abs(acc / static_cast<double>(fibers) - rep.norm_sq));
            }
            rep.max_deviation.push_back(dev);
        }
    }

    double power = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        power *= static_cast<double>(N);
        rep.fitted_constant = std::max(rep.fitted_constant, rep.max_deviation[static_cast<std::size_t>(n - 1)] * power);
    }
    return rep;
}

NormIdentityReport norm_identity_raw(const OperatorContext& ctx, const ModulatedStepVector& f, int n) {
    if (n < 1) throw std::invalid_argument("depth must be at least 1");
    const long N = ctx.modulus();
    const long fibers = checked_power(N, n, "norm_identity_raw");
    ModulatedStepVector fn = apply_S_star_power(ctx, f, n);

    Partition common = Partition::whole();
    for (const auto& t : fn.terms())
        for (const auto& comp : t.coeffs) common = refine(common, comp.partition());
    std::vector<Rational> push;
    push.push_back(rat(-1, 2));
    Rational scale{Rational(pow_z(N, n))};
    for (const auto& t : f.terms())
        for (const auto& comp : t.coeffs)
            for (const Rational& b : comp.partition().breakpoints()) push.push_back(reduce_mod1(b * scale));
    common = refine(common, Partition(std::move(push)));

    NormIdentityReport rep;
    rep.samples = common.cells();
    for (std::size_t i = 0; i < common.cells(); ++i) {
        Rational mid = common.midpoint(i);
        double lhs = fn.squared_length_at(mid);
        double rhs = 0.0;
        for (long j = 0; j < fibers; ++j) rhs += f.squared_length_at(fiber_point(mid, N, n, j));
        rhs /= static_cast<double>(fibers);
        rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
    }
    return rep;
}

NormIdentityReport norm_identity_check(const OperatorContext& ctx, const ModulatedStepVector& g, int n) {
    return norm_identity_raw(ctx, apply_S_power(ctx, g, n), n);
}

bool RealLineGrid::contains(const Rational& y) const {
    if (y < -xmax || y > xmax) return false;
    Rational idx = (y + xmax) / step;
    return idx.get_den() == 1;
}

std::size_t RealLineGrid::index_of(const Rational& y) const {
    Rational idx = (y + xmax) / step;
    if (idx.get_den() != 1 || idx < 0 || idx >= Rational(static_cast<long>(samples.size())))
        throw std::out_of_range("point off the grid");
    return static_cast<std::size_t>(idx.get_num().get_ui());
}

RealLineGrid scaling_product(const OperatorContext& ctx, int rank, int depth, const Rational& xmax,
                             const Rational& step, bool parallel) {
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    if (!(step > 0) || !(xmax > 0)) throw std::invalid_argument("grid parameters must be positive");
    Rational count_q = xmax / step;
    if (count_q.get_den() != 1) throw std::invalid_argument("step must divide xmax");
    LowPassCertificate cert = check_lowpass(ctx.filter(), rank);
    if (!cert.valid)
        throw std::invalid_argument("filter has no low-pass certificate at this rank: " + cert.reason);

    mpz_class total = 2 * count_q.get_num() + 1;
    ensure_cells(total.fits_ulong_p() ? total.get_ui() : cell_budget() + 1, "scaling_product");
    const long count = total.get_si();

    RealLineGrid grid;
    grid.xmax = xmax;
    grid.step = step;
    std::vector<Rational> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) pts.push_back(-xmax + i * step);

    StepMatrix H = to_step_matrix(ctx.filter());
    grid.samples = kernels::scaling_samples(H, ctx.modulus(), rank, depth, pts, parallel);
    return grid;
}

GramReport gram_multiplicity(const RealLineGrid& phi, int k_trunc, double rank_tol, bool parallel) {
    if (k_trunc < 0) throw std::invalid_argument("truncation must be nonnegative");
    Rational half_q = rat(1, 2) / phi.step;
    if (half_q.get_den() != 1) throw std::invalid_argument("grid step must divide 1/2");
    const long half = half_q.get_num().get_si();

    std::vector<Eigen::VectorXcd> gens;
    gens.reserve(phi.size());
    for (const auto& m : phi.samples) gens.push_back(m.diagonal());

    GramReport rep;
    rep.step = phi.step;
    std::vector<std::vector<std::size_t>> groups;
    groups.reserve(static_cast<std::size_t>(2 * half));
    for (long t = -half; t < half; ++t) {
        Rational x = t * phi.step;
        rep.points.push_back(x);
        std::vector<std::size_t> group;
        group.reserve(static_cast<std::size_t>(2 * k_trunc + 1));
        for (int k = -k_trunc; k <= k_trunc; ++k) {
            Rational y = x + k;
            if (phi.contains(y)) group.push_back(phi.index_of(y));
        }
        groups.push_back(std::move(group));
    }
    rep.ranks = kernels::gram_ranks(gens, groups, rank_tol, parallel);
    return rep;
}

std::complex<double> LineProfile::at(const Rational& x) const {
    for (const auto& p : pieces)
        if (x >= p.lo && x < p.hi) return p.value;
    return {0.0, 0.0};
}

std::vector<Rational> LineProfile::breakpoints() const {
    std::vector<Rational> out;
    out.reserve(2 * pieces.size());
    for (const auto& p : pieces) {
        out.push_back(p.lo);
        out.push_back(p.hi);
    }
    return out;
}

std::size_t count_scaling_mismatches(const RealLineGrid& phi, int entry_i, int entry_j, const LineProfile& expected,
                                     double tol, int guard_cells) {
    std::vector<Rational> bps = expected.breakpoints();
    Rational guard = Rational(guard_cells) * phi.step;
    std::size_t bad = 0;
    for (std::size_t idx = 0; idx < phi.size(); ++idx) {
        Rational x = phi.point(idx);
        bool near = false;
        for (const Rational& b : bps) {
            Rational d = x - b;
            if (d < 0) d = -d;
            if (d <= guard) {
                near = true;
                break;
            }
        }
        if (near) continue;
        if (std::abs(phi.samples[idx](entry_i, entry_j) - expected.at(x)) > tol) ++bad;
    }
    return bad;
}

std::size_t count_gram_mismatches(const GramReport& report, const IntStep& expected, int guard_cells) {
    Rational guard = Rational(guard_cells) * report.step;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const Rational& x = report.points[i];
        bool near = false;
        for (const Rational& b : expected.partition().breakpoints()) {
            Rational d = reduce_mod1(x - b);
            if (d < 0) d = -d;
            if (d <= guard) {
                near = true;
                break;
            }
        }
        if (near) continue;
        if (report.ranks[i] != expected.at(x)) ++bad;
    }
    return bad;
}

} // namespace gmra
