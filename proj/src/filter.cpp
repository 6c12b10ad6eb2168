#include "gmra/filter.hpp"

#include <cmath>

namespace gmra {

FilterMatrix::FilterMatrix(std::vector<std::vector<CxStep>> entries, MultiplicityFunction m)
    : entries_(std::move(entries)), m_(std::move(m)), part_(Partition::whole()) {
    const std::size_t c = static_cast<std::size_t>(m_.bound());
    if (entries_.size() != c) throw std::invalid_argument("filter: need c rows, c = multiplicity bound");
    Partition common = m_.values().partition();
    for (const auto& row : entries_) {
        if (row.size() != c) throw std::invalid_argument("filter: matrix must be square");
        for (const auto& e : row) common = refine(common, e.partition());
    }
    for (auto& row : entries_)
        for (auto& e : row) e = e.refined_to(common);
    part_ = common;
}

Eigen::MatrixXcd FilterMatrix::eval(const Rational& x) const {
    const std::size_t idx = part_.cell_of(x);
    Eigen::MatrixXcd out(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) out(i, j) = entry(i, j).value(idx);
    return out;
}

StepMatrix StepMatrix::refined_to(const Partition& finer) const {
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(finer.cells());
    for (std::size_t i = 0; i < finer.cells(); ++i) out.push_back(at(finer.lo(i)));
    return {finer, std::move(out)};
}

StepMatrix to_step_matrix(const FilterMatrix& H) {
    std::vector<Eigen::MatrixXcd> cells;
    cells.reserve(H.partition().cells());
    for (std::size_t t = 0; t < H.partition().cells(); ++t) {
        Eigen::MatrixXcd M(H.dim(), H.dim());
        for (int i = 0; i < H.dim(); ++i)
            for (int j = 0; j < H.dim(); ++j) M(i, j) = H.entry(i, j).value(t);
        cells.push_back(std::move(M));
    }
    return {H.partition(), std::move(cells)};
}

StepMatrix compose_fiber_matrix(const StepMatrix& M, long N, int power, long j) {
    Partition p(fiber_breakpoints(M.part.breakpoints(), N, power, j));
    std::vector<Eigen::MatrixXcd> cells;
    cells.reserve(p.cells());
    for (std::size_t i = 0; i < p.cells(); ++i) cells.push_back(M.at(fiber_point(p.lo(i), N, power, j)));
    return {std::move(p), std::move(cells)};
}

StepMatrix pullback_matrix(const StepMatrix& M, long N, int power) {
    mpz_class scale = 1;
    for (int k = 0; k < power; ++k) scale *= N;
    mpz_class total = scale * static_cast<unsigned long>(M.part.cells());
    ensure_cells(total.fits_ulong_p() ? total.get_ui() : cell_budget() + 1, "pullback_matrix");
    Rational scale_q{scale};
    std::vector<Rational> nb;
    for (const Rational& b : M.part.breakpoints())
        for (mpz_class t = 0; t < scale; ++t) nb.push_back(reduce_mod1((b + Rational(t)) / scale_q));
    Partition p(std::move(nb));
    std::vector<Eigen::MatrixXcd> cells;
    cells.reserve(p.cells());
    for (std::size_t i = 0; i < p.cells(); ++i) cells.push_back(M.at(reduce_mod1(p.lo(i) * scale_q)));
    return {std::move(p), std::move(cells)};
}

StepMatrix matmul(const StepMatrix& A, const StepMatrix& B) {
    Partition common = refine(A.part, B.part);
    StepMatrix a = A.refined_to(common);
    StepMatrix b = B.refined_to(common);
    std::vector<Eigen::MatrixXcd> cells;
    cells.reserve(common.cells());
    for (std::size_t i = 0; i < common.cells(); ++i) cells.push_back(a.cells[i] * b.cells[i]);
    return {std::move(common), std::move(cells)};
}

// ---------------------------------------------------------------------------

SupportReport verify_support(const FilterMatrix& H) {
    SupportReport report;
    const Partition& p = H.partition();
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j) {
            const CxStep& e = H.entry(i, j);
            for (std::size_t t = 0; t < p.cells(); ++t) {
                if (e.value(t) == std::complex<double>(0.0, 0.0)) continue;
                if (H.multiplicity().at(p.lo(t)) < j + 1)
                    report.violations.push_back({i + 1, j + 1, p.lo(t), p.hi(t), e.value(t)});
            }
        }
    return report;
}

SupportReport verify_row_support(const FilterMatrix& H) {
    SupportReport report;
    IntStep m_after = pullback_dilation(H.multiplicity().values(), H.modulus());
    Partition common = refine(H.partition(), m_after.partition());
    IntStep mr = m_after.refined_to(common);
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j) {
            CxStep e = H.entry(i, j).refined_to(common);
            for (std::size_t t = 0; t < common.cells(); ++t)
                if (e.value(t) != std::complex<double>(0.0, 0.0) && mr.value(t) < i + 1)
                    report.violations.push_back({i + 1, j + 1, common.lo(t), common.hi(t), e.value(t)});
        }
    return report;
}

// Shared core of the equation checks: given the fiber matrices M_j on a
// common partition refining m's, test sum_j M_j M_j* = scale * Sigma(omega).
static FilterEqReport fiber_identity(const std::vector<StepMatrix>& fibers,
                                     const MultiplicityFunction& m, double scale, double tol) {
    FilterEqReport report;
    report.tolerance = tol;
    Partition common = m.values().partition();
    for (const auto& f : fibers) common = refine(common, f.part);
    std::vector<StepMatrix> rf;
    rf.reserve(fibers.size());
    for (const auto& f : fibers) rf.push_back(f.refined_to(common));
    const int c = static_cast<int>(rf.front().cells.front().rows());
    for (std::size_t t = 0; t < common.cells(); ++t) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(c, c);
        for (const auto& f : rf) sum += f.cells[t] * f.cells[t].adjoint();
        const long mv = m.at(common.lo(t));
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j) {
                const double target = (i == j && mv >= i + 1) ? scale : 0.0;
                const double dev = std::abs(sum(i, j) - std::complex<double>(target, 0.0));
                report.max_deviation = std::max(report.max_deviation, dev);
                if (dev > tol) report.violations.push_back({common.lo(t), common.hi(t), i + 1, j + 1, dev});
            }
    }
    return report;
}

FilterEqReport verify_filter_equation(const FilterMatrix& H, double tol) {
    StepMatrix SM = to_step_matrix(H);
    std::vector<StepMatrix> fibers;
    for (long j = 0; j < H.modulus(); ++j) fibers.push_back(compose_fiber_matrix(SM, H.modulus(), 1, j));
    return fiber_identity(fibers, H.multiplicity(), static_cast<double>(H.modulus()), tol);
}

FilterEqReport verify_superfilter(const FilterMatrix& H, int depth, double tol) {
    if (depth < 1) throw std::invalid_argument("superfilter depth must be >= 1");
    const long N = H.modulus();
    long fibers_n = 1;
    for (int d = 0; d < depth; ++d) {
        ensure_cells(static_cast<std::size_t>(fibers_n) * static_cast<std::size_t>(N), "verify_superfilter");
        fibers_n *= N;
    }
    StepMatrix SM = to_step_matrix(H);
    std::vector<StepMatrix> fibers;
    fibers.reserve(static_cast<std::size_t>(fibers_n));
    for (long j = 0; j < fibers_n; ++j) {
        long modulus_d = 1;
        StepMatrix prod;
        bool first = true;
        for (int d = 1; d <= depth; ++d) {
            modulus_d *= N;
            StepMatrix factor = compose_fiber_matrix(SM, N, d, j % modulus_d);
            prod = first ? std::move(factor) : matmul(prod, factor);
            first = false;
        }
        fibers.push_back(std::move(prod));
    }
    double scale = std::pow(static_cast<double>(N), depth);
    FilterEqReport report = fiber_identity(fibers, H.multiplicity(), scale, tol);
    return report;
}

LowPassCertificate check_lowpass(const FilterMatrix& H, int rank, double tol) {
    LowPassCertificate cert;
    cert.rank = rank;
    if (rank < 1 || rank > H.dim()) {
        cert.reason = "rank must lie in [1, c]";
        return cert;
    }
    Rational radius = rat(1, 2);
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j)
            radius = std::min(radius, constancy_radius_at_zero(H.entry(i, j)));
    if (radius == 0) {
        cert.reason = "an entry jumps at 0";
        return cert;
    }
    cert.radius = radius;
    const double root_n = std::sqrt(static_cast<double>(H.modulus()));
    Eigen::MatrixXcd at0 = H.eval(Rational(0));
    for (int i = 0; i < H.dim(); ++i)
        for (int j = 0; j < H.dim(); ++j) {
            const double target = (i == j && i < rank) ? root_n : 0.0;
            cert.max_block_deviation =
                std::max(cert.max_block_deviation, std::abs(at0(i, j) - std::complex<double>(target, 0.0)));
        }
    cert.valid = cert.max_block_deviation <= tol;
    if (!cert.valid) cert.reason = "value at 0 is not the rank-" + std::to_string(rank) + " block";
    return cert;
}

// ---------------------------------------------------------------------------
// Synthesis. Points of the circle are written omega + k/N with omega in the
// cross-section C = [-1/(2N), 1/(2N)); for fixed omega the rows of H along
// the translates form vectors indexed by (column j, translate k) which must
// be mutually orthogonal with squared norm N where m(N*omega) demands them.
// Coordinates with k = 0 are reserved last so the rank-a identity block near
// 0 stays clean.
// ---------------------------------------------------------------------------

FilterMatrix synthesize(const MultiplicityFunction& m, int rank) {
    RankWindow window = rank_window(m);
    if (!window.contains(rank)) {
        std::string bounds = window.empty ? "(empty window: " + window.reason + ")"
                                          : "[" + std::to_string(window.lo) + ", " + std::to_string(window.hi) + "]";
        throw RankOutOfWindow("rank " + std::to_string(rank) + " not admissible, window " + bounds);
    }
    const long N = m.modulus();
    const int c = m.bound();
    const Rational half_cell = rat(1, 2 * N);
    const Rational eps = std::min(window.radius, half_cell);
    const Rational w = eps / N;

    std::vector<Rational> cb{-half_cell, -w, w};
    for (const Rational& b : m.values().partition().breakpoints()) {
        cb.push_back(b / N);
        for (long k = 0; k < N; ++k) {
            Rational r = reduce_mod1(b - rat(k, N));
            if (r >= -half_cell && r < half_cell) cb.push_back(r);
        }
    }
    std::sort(cb.begin(), cb.end());
    cb.erase(std::unique(cb.begin(), cb.end()), cb.end());

    std::vector<Rational> full;
    full.reserve(cb.size() * static_cast<std::size_t>(N));
    for (const Rational& b : cb)
        for (long k = 0; k < N; ++k) full.push_back(reduce_mod1(b + rat(k, N)));
    Partition circle(std::move(full));

    const double root_n = std::sqrt(static_cast<double>(N));
    std::vector<std::vector<std::vector<std::complex<double>>>> vals(
        static_cast<std::size_t>(c),
        std::vector<std::vector<std::complex<double>>>(static_cast<std::size_t>(c),
                                                       std::vector<std::complex<double>>(circle.cells(), 0.0)));

    for (std::size_t t = 0; t < cb.size(); ++t) {
        const Rational& lo = cb[t];
        const bool in_window = lo >= -w && lo < w;
        std::vector<long> mvals(static_cast<std::size_t>(N));
        for (long k = 0; k < N; ++k) mvals[static_cast<std::size_t>(k)] = m.at(reduce_mod1(lo + rat(k, N)));
        const long rows = m.at(reduce_mod1(lo * N));

        // (column j, translate k) coordinates in seed order: k = 1..N-1 first,
        // the identity translate k = 0 last, columns ascending within each k.
        std::vector<std::pair<int, long>> coords;
        for (long k = 1; k < N; ++k)
            for (long j = 1; j <= mvals[static_cast<std::size_t>(k)]; ++j) coords.emplace_back(static_cast<int>(j), k);
        const std::size_t off_identity = coords.size();
        for (long j = 1; j <= mvals[0]; ++j) coords.emplace_back(static_cast<int>(j), 0L);

        std::vector<std::pair<int, long>> assignment; // row i-1 -> (j, k)
        if (in_window) {
            for (long i = 1; i <= std::min<long>(rank, rows); ++i) {
                if (i > mvals[0])
                    throw InsufficientDimensions("synthesize: identity block exceeds m near 0");
                assignment.emplace_back(static_cast<int>(i), 0L);
            }
            const long extra = rows - static_cast<long>(assignment.size());
            if (extra > static_cast<long>(off_identity))
                throw InsufficientDimensions("synthesize: not enough off-identity coordinates near 0");
            for (long r = 0; r < extra; ++r) assignment.push_back(coords[static_cast<std::size_t>(r)]);
        } else {
            if (rows > static_cast<long>(coords.size()))
                throw InsufficientDimensions("synthesize: fiber dimension below required rows");
            for (long r = 0; r < rows; ++r) assignment.push_back(coords[static_cast<std::size_t>(r)]);
        }

        for (std::size_t i = 0; i < assignment.size(); ++i) {
            const auto [j, k] = assignment[i];
            const std::size_t cell = circle.cell_of(reduce_mod1(lo + rat(k, N)));
            vals[i][static_cast<std::size_t>(j - 1)][cell] = root_n;
        }
    }

    std::vector<std::vector<CxStep>> entries;
    entries.reserve(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) {
        std::vector<CxStep> row;
        row.reserve(static_cast<std::size_t>(c));
        for (int j = 0; j < c; ++j)
            row.emplace_back(circle, vals[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        entries.push_back(std::move(row));
    }
    return FilterMatrix(std::move(entries), m);
}

} // namespace gmra
