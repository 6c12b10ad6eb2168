#pragma once

#include "gmra/filter.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace gmra::kernels {

// Depth-fold product of filter samples at x/N^j, j = 1..depth, scaled by
// N^(-1/2) per factor, with columns beyond `rank` zeroed by the low-pass
// block. The serial and OpenMP paths produce byte-identical results; points
// are independent.
std::vector<Eigen::MatrixXcd> scaling_samples(const StepMatrix& H, long N, int rank, int depth,
                                              const std::vector<Rational>& points, bool parallel);

// Numerical rank of one PSD Gram matrix per group: G_t is the sum of outer
// products of the generator vectors listed in groups[t]; rank counts
// eigenvalues above rank_tol times the trace.
std::vector<int> gram_ranks(const std::vector<Eigen::VectorXcd>& generators,
                            const std::vector<std::vector<std::size_t>>& groups, double rank_tol, bool parallel);

} // namespace gmra::kernels
