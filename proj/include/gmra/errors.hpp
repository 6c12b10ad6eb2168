#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmra {

// A multiplicity function violated the consistency inequality (or an
// operation that presupposes consistency was asked to proceed anyway).
class ConsistencyViolation : public std::runtime_error {
public:
    explicit ConsistencyViolation(const std::string& what) : std::runtime_error(what) {}
};

// Requested low-pass rank lies outside the admissible window.
class RankOutOfWindow : public std::runtime_error {
public:
    explicit RankOutOfWindow(const std::string& what) : std::runtime_error(what) {}
};

// Defensive: the orthogonal-completion step ran out of coordinates. With a
// consistent multiplicity function this cannot happen.
class InsufficientDimensions : public std::runtime_error {
public:
    explicit InsufficientDimensions(const std::string& what) : std::runtime_error(what) {}
};

// A symbolic operation would materialize more cells than the configured
// budget allows (iterated dilation pullbacks grow cell counts by N each).
class DepthTooLarge : public std::runtime_error {
public:
    explicit DepthTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Maximum number of partition cells any single operation may materialize.
// Default 1e6; override with the GMRA_CELL_BUDGET environment variable.
std::size_t cell_budget();

// Throws DepthTooLarge if `cells` exceeds the budget.
void ensure_cells(std::size_t cells, const char* where);

} // namespace gmra
