#pragma once

#include "gmra/circle.hpp"
#include "gmra/multiplicity.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace gmra {

inline constexpr double kDefaultValueTol = 1e-12;

// c-by-c matrix of complex step functions. All entries live on one common
// partition which also refines the partition of the attached multiplicity
// function, so support checks are cellwise.
class FilterMatrix {
public:
    FilterMatrix(std::vector<std::vector<CxStep>> entries, MultiplicityFunction m);

    int dim() const { return static_cast<int>(entries_.size()); }
    long modulus() const { return m_.modulus(); }
    const MultiplicityFunction& multiplicity() const { return m_; }
    const Partition& partition() const { return part_; }

    // Row i, column j, 0-based.
    const CxStep& entry(int i, int j) const { return entries_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    Eigen::MatrixXcd eval(const Rational& canonical_x) const;

private:
    std::vector<std::vector<CxStep>> entries_;
    MultiplicityFunction m_;
    Partition part_;
};

// Matrix-valued step function used for fiber products.
struct StepMatrix {
    Partition part;
    std::vector<Eigen::MatrixXcd> cells;

    StepMatrix() : part(Partition::whole()) {}
    StepMatrix(Partition p, std::vector<Eigen::MatrixXcd> c) : part(std::move(p)), cells(std::move(c)) {}

    const Eigen::MatrixXcd& at(const Rational& canonical_x) const { return cells[part.cell_of(canonical_x)]; }
    StepMatrix refined_to(const Partition& finer) const;
};

StepMatrix to_step_matrix(const FilterMatrix& H);
StepMatrix compose_fiber_matrix(const StepMatrix& M, long N, int power, long j);
StepMatrix pullback_matrix(const StepMatrix& M, long N, int power);
StepMatrix matmul(const StepMatrix& A, const StepMatrix& B);

// ---------------------------------------------------------------------------
// Verification reports. Violations carry the offending cell so failures are
// reproducible; support checks require exact zeroes, numeric identities use a
// tolerance.
// ---------------------------------------------------------------------------

struct SupportViolation {
    int i; // 1-based row
    int j; // 1-based column
    Rational lo, hi;
    std::complex<double> value;
};

struct SupportReport {
    std::vector<SupportViolation> violations;
    bool pass() const { return violations.empty(); }
};

// Column law: h_{ij} vanishes off sigma_j.
SupportReport verify_support(const FilterMatrix& H);

// Row law (consequence of the filter equation): h_{ij}(zeta) != 0 forces
// N*zeta mod 1 into sigma_i.
SupportReport verify_row_support(const FilterMatrix& H);

struct EqViolation {
    Rational lo, hi;
    int i, j; // 1-based entry of the fiber-sum matrix
    double deviation;
};

struct FilterEqReport {
    double max_deviation = 0;
    double tolerance = kDefaultValueTol;
    std::vector<EqViolation> violations;
    bool pass() const { return violations.empty(); }
};

// sum over the N preimages zeta of omega of H(zeta) H*(zeta) = N * Sigma(omega),
// Sigma = diag(indicator of sigma_i).
FilterEqReport verify_filter_equation(const FilterMatrix& H, double tol = kDefaultValueTol);

// Depth-n variant with products of H along dilation orbits and N^n fibers.
FilterEqReport verify_superfilter(const FilterMatrix& H, int depth, double tol = kDefaultValueTol);

struct LowPassCertificate {
    bool valid = false;
    int rank = 0;
    Rational radius;            // all entries constant on (-radius, radius)
    double max_block_deviation = 0;
    std::string reason;
};

// H constant near 0 with value sqrt(N) on the first `rank` diagonal entries
// and 0 elsewhere.
LowPassCertificate check_lowpass(const FilterMatrix& H, int rank, double tol = kDefaultValueTol);

// ---------------------------------------------------------------------------
// Synthesis: build a low-pass filter of the requested rank for a consistent
// multiplicity function. Throws RankOutOfWindow if `rank` is not admissible.
// Output is exact (every value is 0 or sqrt(N)) and deterministic.
// ---------------------------------------------------------------------------

FilterMatrix synthesize(const MultiplicityFunction& m, int rank);

} // namespace gmra
