#pragma once

#include "gmra/circle.hpp"

#include <string>
#include <vector>

namespace gmra {

// Integer-valued step function 0 <= m <= c on the circle together with the
// dilation modulus N it is meant to be consistent with.
class MultiplicityFunction {
public:
    MultiplicityFunction(IntStep values, int c, long N);

    const IntStep& values() const { return values_; }
    int bound() const { return c_; }
    long modulus() const { return N_; }

    long at(const Rational& canonical_x) const { return values_.at(canonical_x); }

private:
    IntStep values_;
    int c_;
    long N_;
};

// One cell of a pointwise integer comparison, with both sides recorded.
struct CellWitness {
    Rational lo;
    Rational hi;
    long lhs;
    long rhs;
};

struct ConsistencyReport {
    bool holds = true;
    std::vector<CellWitness> violations; // cells with m > fiber sum
};

struct IdentityReport {
    bool holds = true;
    std::vector<CellWitness> mismatches; // cells with m + mt != fiber sum, lhs = m + mt
};

// T(omega) = sum over the N preimages zeta of omega of m(zeta), exact.
IntStep fiber_sum(const MultiplicityFunction& m);

// The consistency inequality m(omega) <= T(omega), certified cell by cell.
ConsistencyReport check_consistency_inequality(const MultiplicityFunction& m);

// Complementary multiplicity T - m. Throws ConsistencyViolation if the
// inequality fails (the complement would go negative).
MultiplicityFunction complement(const MultiplicityFunction& m);

// Verifies m(omega) + mt(omega) = T(omega) cell by cell.
IdentityReport check_consistency_identity(const MultiplicityFunction& m, const MultiplicityFunction& mt);

// sigma_i = {omega : m(omega) >= i} as 0/1 indicators, i = 1..c. Nested.
std::vector<IntStep> support_sets(const MultiplicityFunction& m);

// Admissible scaling-space ranks a: positive integers with
// m(0) - mt(0) <= a <= m(0) on a punctured symmetric neighborhood of 0.
struct RankWindow {
    bool empty = true;
    int lo = 0;
    int hi = -1;
    Rational radius; // both m and mt are constant on (-radius, radius)
    std::string reason;

    bool contains(int a) const { return !empty && a >= lo && a <= hi; }
};

RankWindow rank_window(const MultiplicityFunction& m);

} // namespace gmra
