#include "gmra/kernels.hpp"

#include <cmath>

namespace gmra::kernels {

namespace {

Eigen::MatrixXcd scaling_point(const StepMatrix& H, long N, int rank, int depth, const Rational& x) {
    const Eigen::Index c = H.cells.front().rows();
    const double root = std::sqrt(static_cast<double>(N));
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(c, c);
    Rational y = x;
    for (int j = 1; j <= depth; ++j) {
        y = y / N;
        M = M * (H.at(reduce_mod1(y)) / root);
    }
    for (Eigen::Index col = rank; col < c; ++col) M.col(col).setZero();
    return M;
}

int rank_of_group(const std::vector<Eigen::VectorXcd>& generators, const std::vector<std::size_t>& group,
                  double rank_tol) {
    if (group.empty()) return 0;
    const Eigen::Index c = generators[group.front()].size();
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(c, c);
    for (std::size_t idx : group) G += generators[idx] * generators[idx].adjoint();
    const double trace = G.trace().real();
    if (!(trace > 0.0)) return 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    int rank = 0;
    for (Eigen::Index i = 0; i < c; ++i)
        if (es.eigenvalues()(i) > rank_tol * trace) ++rank;
    return rank;
}

} // namespace

std::vector<Eigen::MatrixXcd> scaling_samples(const StepMatrix& H, long N, int rank, int depth,
                                              const std::vector<Rational>& points, bool parallel) {
    std::vector<Eigen::MatrixXcd> out(points.size());
    const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = scaling_point(H, N, rank, depth, points[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<int> gram_ranks(const std::vector<Eigen::VectorXcd>& generators,
                            const std::vector<std::vector<std::size_t>>& groups, double rank_tol, bool parallel) {
    std::vector<int> out(groups.size());
    const long n = static_cast<long>(groups.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = rank_of_group(generators, groups[static_cast<std::size_t>(i)], rank_tol);
    return out;
}

} // namespace gmra::kernels
