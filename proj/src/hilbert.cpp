#include "gmra/hilbert.hpp"

#include "gmra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace gmra {

namespace {

constexpr std::complex<double> kZero{0.0, 0.0};

std::complex<double> cis(double theta) { return {std::cos(theta), std::sin(theta)}; }

// e^{2 pi i r} with exact argument reduction of the rational r.
std::complex<double> unit_phase(const Rational& r) {
    return cis(2.0 * std::numbers::pi * to_double(reduce_mod1(r)));
}

long checked_fiber_count(long N, int power, const char* where) {
    mpz_class p = pow_z(N, power);
    ensure_cells(p.fits_ulong_p() ? p.get_ui() : cell_budget() + 1, where);
    return p.get_si();
}

bool exactly_zero(const CxStep& s) {
    for (const auto& v : s.values())
        if (v != kZero) return false;
    return true;
}

// integral over [lo, hi) of e^{2 pi i Delta x} dx, Delta != 0; written as
// phase(center) * sin(pi u) / (pi Delta) with u = Delta * (hi - lo), the sine
// folded to [-1/2, 1/2) so large exact arguments lose no precision. The fold
// must pick the nearest integer: a floor fold sends u slightly below an
// integer to r just under 1, where to_double rounds onto 1 and sin(pi r)
// collapses to the sin(pi) residue. Dividing that by a tiny pi*Delta turns
// roundoff into an O(1/Delta) error, which is what deep purity tails probe.
std::complex<double> character_integral(const Rational& lo, const Rational& hi, const Rational& delta) {
    Rational u = delta * (hi - lo);
    Rational k = floor_q(u + rat(1, 2));
    Rational r = u - k;
    double s = std::sin(std::numbers::pi * to_double(r));
    if (mpz_odd_p(k.get_num().get_mpz_t())) s = -s;
    std::complex<double> phase = unit_phase(delta * (lo + hi) / 2);
    return phase * (s / (std::numbers::pi * to_double(delta)));
}

} // namespace

ModulatedStepVector::ModulatedStepVector(int components, std::vector<ModulatedTerm> terms) : c_(components) {
    if (c_ <= 0) throw std::invalid_argument("vector needs at least one component");
    for (const auto& t : terms)
        if (static_cast<int>(t.coeffs.size()) != c_)
            throw std::invalid_argument("term has wrong number of components");
    std::sort(terms.begin(), terms.end(),
              [](const ModulatedTerm& a, const ModulatedTerm& b) { return a.freq < b.freq; });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().freq == t.freq) {
            auto& acc = terms_.back();
            for (int i = 0; i < c_; ++i) acc.coeffs[i] = acc.coeffs[i] + t.coeffs[i];
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const ModulatedTerm& t) {
        return std::all_of(t.coeffs.begin(), t.coeffs.end(), exactly_zero);
    });
    for (auto& t : terms_)
        for (auto& comp : t.coeffs) comp = comp.simplified();
}

std::vector<std::complex<double>> ModulatedStepVector::eval(const Rational& canonical_x) const {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(c_), kZero);
    for (const auto& t : terms_) {
        std::complex<double> ph = unit_phase(t.freq * canonical_x);
        for (int i = 0; i < c_; ++i) out[static_cast<std::size_t>(i)] += ph * t.coeffs[static_cast<std::size_t>(i)].at(canonical_x);
    }
    return out;
}

double ModulatedStepVector::squared_length_at(const Rational& canonical_x) const {
    double acc = 0.0;
    for (const auto& v : eval(canonical_x)) acc += std::norm(v);
    return acc;
}

ModulatedStepVector operator+(const ModulatedStepVector& a, const ModulatedStepVector& b) {
    if (a.components() != b.components()) throw std::invalid_argument("component count mismatch");
    std::vector<ModulatedTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return {a.components(), std::move(terms)};
}

ModulatedStepVector operator-(const ModulatedStepVector& a, const ModulatedStepVector& b) {
    return a + std::complex<double>(-1.0, 0.0) * b;
}

ModulatedStepVector operator*(const std::complex<double>& s, const ModulatedStepVector& a) {
    std::vector<ModulatedTerm> terms = a.terms();
    for (auto& t : terms)
        for (auto& comp : t.coeffs) comp = comp.map([&](const std::complex<double>& v) { return s * v; });
    return {a.components(), std::move(terms)};
}

std::complex<double> inner_product(const ModulatedStepVector& f, const ModulatedStepVector& g) {
    if (f.components() != g.components()) throw std::invalid_argument("component count mismatch");
    std::complex<double> acc = kZero;
    for (const auto& s : f.terms()) {
        for (const auto& t : g.terms()) {
            Rational delta = s.freq - t.freq;
            for (int i = 0; i < f.components(); ++i) {
                CxStep prod = zip(s.coeffs[static_cast<std::size_t>(i)], t.coeffs[static_cast<std::size_t>(i)],
                                  [](const std::complex<double>& x, const std::complex<double>& y) { return x * std::conj(y); });
                if (delta == 0) {
                    acc += integral(prod);
                } else {
                    const Partition& p = prod.partition();
                    for (std::size_t cell = 0; cell < p.cells(); ++cell) {
                        if (prod.value(cell) == kZero) continue;
                        acc += prod.value(cell) * character_integral(p.lo(cell), p.hi(cell), delta);
                    }
                }
            }
        }
    }
    return acc;
}

double norm(const ModulatedStepVector& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

ModulatedStepVector mask_to_supports(const MultiplicityFunction& m, const ModulatedStepVector& f) {
    auto sigma = support_sets(m);
    if (static_cast<int>(sigma.size()) != f.components()) throw std::invalid_argument("component count mismatch");
    std::vector<ModulatedTerm> terms = f.terms();
    for (auto& t : terms)
        for (int i = 0; i < f.components(); ++i)
            t.coeffs[static_cast<std::size_t>(i)] =
                zip(t.coeffs[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(i)],
                    [](const std::complex<double>& v, long ind) { return ind != 0 ? v : kZero; });
    return {f.components(), std::move(terms)};
}

bool supports_ok(const MultiplicityFunction& m, const ModulatedStepVector& f) {
    auto sigma = support_sets(m);
    if (static_cast<int>(sigma.size()) != f.components()) return false;
    for (const auto& t : f.terms())
        for (int i = 0; i < f.components(); ++i) {
            IntStep bad = zip(t.coeffs[static_cast<std::size_t>(i)], sigma[static_cast<std::size_t>(i)],
                              [](const std::complex<double>& v, long ind) { return (ind == 0 && v != kZero) ? 1L : 0L; });
            for (long b : bad.values())
                if (b != 0) return false;
        }
    return true;
}

OperatorContext::OperatorContext(FilterMatrix H, double tol) : H_(std::move(H)) {
    SupportReport cols = verify_support(H_);
    if (!cols.pass()) throw std::invalid_argument("filter violates the column support law");
    SupportReport rows = verify_row_support(H_);
    if (!rows.pass()) throw std::invalid_argument("filter violates the row support law");
    FilterEqReport eq = verify_filter_equation(H_, tol);
    if (!eq.pass()) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "filter equation fails, max deviation %.3e", eq.max_deviation);
        throw std::invalid_argument(buf);
    }
}

ModulatedStepVector apply_rho(long gamma, const ModulatedStepVector& f) {
    std::vector<ModulatedTerm> terms = f.terms();
    for (auto& t : terms) t.freq += gamma;
    return {f.components(), std::move(terms)};
}

namespace {

// Common refinement matrix-vector product; optionally conjugates the matrix.
std::vector<CxStep> apply_cellwise(const StepMatrix& M, const std::vector<CxStep>& v, bool conjugate_matrix) {
    Partition common = M.part;
    for (const auto& comp : v) common = refine(common, comp.partition());
    StepMatrix Mr = M.refined_to(common);
    std::vector<CxStep> vr;
    vr.reserve(v.size());
    for (const auto& comp : v) vr.push_back(comp.refined_to(common));

    const int c = static_cast<int>(v.size());
    std::vector<std::vector<std::complex<double>>> out(
        static_cast<std::size_t>(c), std::vector<std::complex<double>>(common.cells(), kZero));
    for (std::size_t cell = 0; cell < common.cells(); ++cell) {
        Eigen::VectorXcd x(c);
        for (int j = 0; j < c; ++j) x(j) = vr[static_cast<std::size_t>(j)].value(cell);
        Eigen::MatrixXcd A = Mr.cells[cell];
        if (conjugate_matrix) A = A.conjugate();
        Eigen::VectorXcd y = A * x;
        for (int i = 0; i < c; ++i) out[static_cast<std::size_t>(i)][cell] = y(i);
    }
    std::vector<CxStep> res;
    res.reserve(v.size());
    for (int i = 0; i < c; ++i) res.emplace_back(common, std::move(out[static_cast<std::size_t>(i)]));
    return res;
}

// e^{-2 pi i gamma k(x)} with k(x) = floor(N^power x + 1/2), the integer the
// canonical representative of N^power x discards. Constant 1 for integer
// frequencies, so callers skip it there.
CxStep dilation_wrap_phase(const Rational& gamma, long N, int power, const char* where) {
    mpz_class p = pow_z(N, power);
    ensure_cells(p.fits_ulong_p() ? p.get_ui() : cell_budget() + 1, where);
    std::vector<Rational> bps;
    bps.push_back(rat(-1, 2));
    mpz_class two_p = 2 * p;
    mpz_class t = 1 - p / 2 - (mpz_odd_p(p.get_mpz_t()) ? 1 : 0);
    for (; 2 * t - 1 < p; ++t) {
        mpz_class num = 2 * t - 1;
        Rational b = Rational(num) / Rational(two_p);
        if (b > rat(-1, 2) && b < rat(1, 2)) bps.push_back(b);
    }
    Partition part(std::move(bps));
    std::vector<std::complex<double>> vals;
    vals.reserve(part.cells());
    Rational p_q(p);
    for (std::size_t i = 0; i < part.cells(); ++i) {
        Rational k = floor_q(p_q * part.lo(i) + rat(1, 2));
        vals.push_back(unit_phase(-gamma * k));
    }
    return {std::move(part), std::move(vals)};
}

// e^{-2 pi i gamma e_j(x)} with e_j(x) = 1 when (x + j) / N^power falls in
// the upper half [1/2, ...), else 0.
CxStep fiber_wrap_phase(const Rational& gamma, long N, int power, long j) {
    Rational b = Rational(pow_z(N, power)) / 2 - j;
    std::complex<double> wrapped = unit_phase(-gamma);
    if (b <= rat(-1, 2)) return CxStep::constant(wrapped);
    if (b >= rat(1, 2)) return CxStep::constant({1.0, 0.0});
    return {Partition({rat(-1, 2), b}), {{1.0, 0.0}, wrapped}};
}

std::vector<CxStep> zero_components(int c) {
    return std::vector<CxStep>(static_cast<std::size_t>(c), CxStep::constant(kZero));
}

} // namespace

ModulatedStepVector apply_S_power(const OperatorContext& ctx, const ModulatedStepVector& f, int n) {
    if (n < 0) throw std::invalid_argument("power must be nonnegative");
    if (f.components() != ctx.components()) throw std::invalid_argument("component count mismatch");
    if (n == 0) return f;
    const long N = ctx.modulus();
    const int c = ctx.components();

    StepMatrix Ht = to_step_matrix(ctx.filter());
    for (auto& cell : Ht.cells) cell = cell.transpose().eval();
    StepMatrix P = Ht;
    for (int d = 1; d < n; ++d) P = matmul(P, pullback_matrix(Ht, N, d));

    Rational scale(pow_z(N, n));
    std::vector<ModulatedTerm> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        std::vector<CxStep> pulled;
        pulled.reserve(static_cast<std::size_t>(c));
        for (const auto& comp : t.coeffs) pulled.push_back(pullback_dilation(comp, N, n));
        std::vector<CxStep> coeffs = apply_cellwise(P, pulled, false);
        if (t.freq.get_den() != 1) {
            CxStep phase = dilation_wrap_phase(t.freq, N, n, "apply_S_power");
            for (auto& comp : coeffs) comp = comp * phase;
        }
        out.push_back({t.freq * scale, std::move(coeffs)});
    }
    return {c, std::move(out)};
}

ModulatedStepVector apply_S_star_power(const OperatorContext& ctx, const ModulatedStepVector& f, int n) {
    if (n < 0) throw std::invalid_argument("power must be nonnegative");
    if (f.components() != ctx.components()) throw std::invalid_argument("component count mismatch");
    if (n == 0) return f;
    const long N = ctx.modulus();
    const int c = ctx.components();
    const long fibers = checked_fiber_count(N, n, "apply_S_star_power");

    StepMatrix H = to_step_matrix(ctx.filter());
    StepMatrix R = n == 1 ? H : pullback_matrix(H, N, n - 1);
    for (int d = n - 2; d >= 0; --d) R = matmul(R, d == 0 ? H : pullback_matrix(H, N, d));

    Rational scale = Rational(1) / Rational(pow_z(N, n));
    std::vector<ModulatedTerm> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        std::vector<CxStep> acc = zero_components(c);
        for (long j = 0; j < fibers; ++j) {
            StepMatrix Rj = compose_fiber_matrix(R, N, n, j);
            std::vector<CxStep> cj;
            cj.reserve(static_cast<std::size_t>(c));
            for (const auto& comp : t.coeffs) cj.push_back(compose_fiber(comp, N, n, j));
            std::vector<CxStep> piece = apply_cellwise(Rj, cj, true);

            std::complex<double> s = unit_phase(t.freq * j * scale);
            CxStep wrap = fiber_wrap_phase(t.freq, N, n, j);
            for (int i = 0; i < c; ++i) {
                CxStep scaled = piece[static_cast<std::size_t>(i)].map(
                    [&](const std::complex<double>& v) { return to_double(scale) * s * v; });
                acc[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i)] + scaled * wrap;
            }
        }
        for (auto& comp : acc) comp = comp.simplified();
        out.push_back({t.freq * scale, std::move(acc)});
    }
    return {c, std::move(out)};
}

ModulatedStepVector apply_S(const OperatorContext& ctx, const ModulatedStepVector& f) {
    return apply_S_power(ctx, f, 1);
}

ModulatedStepVector apply_S_star(const OperatorContext& ctx, const ModulatedStepVector& f) {
    return apply_S_star_power(ctx, f, 1);
}

double check_intertwining(const OperatorContext& ctx, long gamma, const ModulatedStepVector& f) {
    ModulatedStepVector lhs = apply_S(ctx, apply_rho(gamma, f));
    ModulatedStepVector rhs = apply_rho(ctx.modulus() * gamma, apply_S(ctx, f));
    return norm(lhs - rhs);
}

ModulatedStepVector random_k_vector(const MultiplicityFunction& m, std::uint64_t seed, int terms, int cells) {
    const int c = m.bound();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> freq_dist(-3, 3);
    std::uniform_int_distribution<long> bp_dist(-210, 209); // breakpoints k/420
    std::uniform_real_distribution<double> val_dist(-1.0, 1.0);

    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<ModulatedTerm> built;
        built.reserve(static_cast<std::size_t>(terms));
        for (int t = 0; t < terms; ++t) {
            ModulatedTerm term;
            term.freq = rat(freq_dist(rng));
            term.coeffs.reserve(static_cast<std::size_t>(c));
            for (int i = 0; i < c; ++i) {
                std::vector<Rational> bps;
                bps.push_back(rat(-1, 2));
                for (int b = 0; b < cells; ++b) bps.push_back(rat(bp_dist(rng), 420));
                Partition part(std::move(bps));
                std::vector<std::complex<double>> vals;
                vals.reserve(part.cells());
                for (std::size_t cell = 0; cell < part.cells(); ++cell)
                    vals.emplace_back(val_dist(rng), val_dist(rng));
                term.coeffs.emplace_back(std::move(part), std::move(vals));
            }
            built.push_back(std::move(term));
        }
        ModulatedStepVector candidate = mask_to_supports(m, ModulatedStepVector(c, std::move(built)));
        if (norm(candidate) > 1e-6) return candidate;
    }
    throw std::runtime_error("support sets too small to hit with random data");
}

} // namespace gmra
