#include "gmra/circle.hpp"

#include <cstdlib>
#include <stdexcept>

namespace gmra {

std::size_t cell_budget() {
    static const std::size_t budget = [] {
        if (const char* env = std::getenv("GMRA_CELL_BUDGET")) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1000000);
    }();
    return budget;
}

void ensure_cells(std::size_t cells, const char* where) {
    if (cells > cell_budget())
        throw DepthTooLarge(std::string(where) + ": would materialize " + std::to_string(cells) +
                            " cells, budget is " + std::to_string(cell_budget()) +
                            " (set GMRA_CELL_BUDGET to raise)");
}

mpz_class floor_q(const Rational& q) {
    mpz_class out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Rational reduce_mod1(const Rational& q) {
    Rational shifted = q + rat(1, 2);
    return q - floor_q(shifted);
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    mpz_class n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------

Partition::Partition(std::vector<Rational> breakpoints) {
    if (breakpoints.empty()) throw std::invalid_argument("partition needs at least one breakpoint");
    bps_.reserve(breakpoints.size());
    for (Rational& b : breakpoints) bps_.push_back(reduce_mod1(b));
    std::sort(bps_.begin(), bps_.end());
    bps_.erase(std::unique(bps_.begin(), bps_.end()), bps_.end());
    ensure_cells(bps_.size(), "partition");
}

Rational Partition::hi(std::size_t i) const {
    return i + 1 < bps_.size() ? bps_[i + 1] : bps_[0] + 1;
}

Rational Partition::midpoint(std::size_t i) const {
    return reduce_mod1((lo(i) + hi(i)) / 2);
}

std::size_t Partition::cell_of(const Rational& x) const {
    if (x < bps_.front()) return bps_.size() - 1; // wrap cell
    auto it = std::upper_bound(bps_.begin(), bps_.end(), x);
    return static_cast<std::size_t>(it - bps_.begin()) - 1;
}

Partition refine(const Partition& a, const Partition& b) {
    std::vector<Rational> merged;
    merged.reserve(a.cells() + b.cells());
    std::merge(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(),
               b.breakpoints().end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return Partition(std::move(merged));
}

double max_abs_diff(const CxStep& a, const CxStep& b) {
    double worst = 0;
    zip(a, b, [&](const std::complex<double>& x, const std::complex<double>& y) {
        worst = std::max(worst, std::abs(x - y));
        return 0;
    });
    return worst;
}

double max_abs_diff(const RealStep& a, const RealStep& b) {
    double worst = 0;
    zip(a, b, [&](double x, double y) {
        worst = std::max(worst, std::abs(x - y));
        return 0;
    });
    return worst;
}

Rational integral_exact(const IntStep& f) {
    Rational sum = 0;
    for (std::size_t i = 0; i < f.partition().cells(); ++i)
        sum += f.partition().length(i) * rat(f.value(i));
    return sum;
}

std::complex<double> integral(const CxStep& f) {
    std::complex<double> sum = 0;
    for (std::size_t i = 0; i < f.partition().cells(); ++i)
        sum += to_double(f.partition().length(i)) * f.value(i);
    return sum;
}

double integral(const RealStep& f) {
    double sum = 0;
    for (std::size_t i = 0; i < f.partition().cells(); ++i)
        sum += to_double(f.partition().length(i)) * f.value(i);
    return sum;
}

// ---------------------------------------------------------------------------

std::vector<CirclePoint> preimages(const CirclePoint& omega, long N, int power) {
    mpz_class scale = pow_z(N, power);
    ensure_cells(scale.fits_ulong_p() ? scale.get_ui() : cell_budget() + 1, "preimages");
    std::vector<CirclePoint> out;
    out.reserve(scale.get_ui());
    for (mpz_class j = 0; j < scale; ++j)
        out.emplace_back(Rational(omega.value() + Rational(j)) / Rational(scale));
    return out;
}

std::vector<CirclePoint> kernel_points(long N, int power) {
    mpz_class scale = pow_z(N, power);
    ensure_cells(scale.fits_ulong_p() ? scale.get_ui() : cell_budget() + 1, "kernel_points");
    std::vector<CirclePoint> out;
    out.reserve(scale.get_ui());
    for (mpz_class j = 0; j < scale; ++j) out.emplace_back(Rational(j) / Rational(scale));
    return out;
}

CirclePoint section_point(const CirclePoint& omega, long N) {
    return CirclePoint(omega.value() / N);
}

Rational fiber_point(const Rational& omega, long N, int power, long j) {
    return reduce_mod1((omega + j) / Rational(pow_z(N, power)));
}

std::vector<Rational> fiber_breakpoints(const std::vector<Rational>& bps, long N, int power, long j) {
    mpz_class scale = pow_z(N, power);
    Rational scale_q{scale};
    std::vector<Rational> out;
    out.reserve(bps.size() + 2);
    // The branch omega -> (omega + j)/N^n is discontinuous as a circle map at
    // the representative wrap, and once more where the raw value crosses 1/2.
    out.push_back(rat(-1, 2));
    Rational ejump = scale_q / 2 - j;
    if (ejump > rat(-1, 2) && ejump < rat(1, 2)) out.push_back(ejump);
    for (const Rational& b : bps) {
        Rational cand = b * scale_q - j;
        Rational omega0 = cand - Rational(floor_q((cand + rat(1, 2)) / scale_q)) * scale_q;
        if (omega0 < rat(1, 2)) out.push_back(omega0);
    }
    return out;
}

} // namespace gmra
