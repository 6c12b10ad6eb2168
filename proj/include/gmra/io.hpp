#pragma once

#include "gmra/diagnostics.hpp"
#include "gmra/filter.hpp"
#include "gmra/hilbert.hpp"

#include <stdexcept>
#include <string>

namespace gmra::io {

// Parse failure with a JSON-pointer-style location.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& pointer, const std::string& message)
        : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(pointer) {}

    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// Rationals serialize as "p/q" in lowest terms with q > 0; complex values as
// [re, im] pairs (bare numbers parse as real); step functions as
// {"pieces":[{"lo":"-1/7","hi":"1/7","value":...}, ...]} with pieces sorted,
// disjoint, and gaps reading as zero. Dumps list every cell and are
// byte-stable for identical inputs.

// {"N":2,"c":2,"pieces":[...]} with integer values.
std::string dump_multiplicity(const MultiplicityFunction& m);
MultiplicityFunction parse_multiplicity(const std::string& text);

// {"N":2,"c":2,"scale":"sqrtN","entries":[[stepfn,...],...],"m":{...}}.
// With the scale flag, stored values are multiplied by sqrt(N) on load and
// divided on dump, so indicator filters round-trip with exact payloads. The
// embedded multiplicity is optional on input if one is supplied separately.
std::string dump_filter(const FilterMatrix& H);
FilterMatrix parse_filter(const std::string& text);
FilterMatrix parse_filter(const std::string& text, MultiplicityFunction m);

// {"terms":[{"freq":"1/2","coeffs":[stepfn, ...]}]}. Component count is
// validated against expected_components when that is nonnegative, otherwise
// inferred (which requires at least one term).
std::string dump_vector(const ModulatedStepVector& f);
ModulatedStepVector parse_vector(const std::string& text, int expected_components = -1);

// {"step":"1/2240","pieces":[{"lo","hi","value":rank}, ...]} with equal-rank
// runs merged.
std::string dump_gram_report(const GramReport& report);

// Header x,e00_re,e00_im,...; one row per grid point, entries row-major.
std::string dump_scaling_csv(const RealLineGrid& grid);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace gmra::io
