#pragma once

#include "gmra/diagnostics.hpp"
#include "gmra/filter.hpp"

namespace gmra::demo {

// N = 2, c = 2 two-generator wavelet-set data: multiplicity 2 on [-1/7,1/7),
// 1 on [-2/7,-1/7), [1/7,2/7), [-1/2,-3/7) and [3/7,1/2), 0 elsewhere; its
// complement is identically 1.
MultiplicityFunction journe_multiplicity();

// Diagonal rank-2 low-pass filter for it: h11 = sqrt(2) on
// [-2/7,-1/4) u [-1/7,1/7) u [1/4,2/7), h22 = sqrt(2) on [-1/14,1/14).
FilterMatrix journe_filter();

// N = 2, c = 3 data: multiplicity 3 on [-1/15,1/15), 2 on +-[1/15,2/15),
// 1 on +-[2/15,4/15) and +-[7/15,1/2), 0 elsewhere. Three filters for it,
// sharing the first row sqrt(2) on [-2/15,2/15) u +-[1/4,4/15).
MultiplicityFunction three_level_multiplicity();
FilterMatrix three_level_filter_a(); // rank 2; diagonal second row
FilterMatrix three_level_filter_b(); // rank 2; second row spills into column 3
FilterMatrix three_level_filter_c(); // rank 3; diagonal

// One-component helpers: the half-cell low-pass filter sqrt(2) on
// [-1/4,1/4), and the constant-1 filter (valid but not low-pass; its S fixes
// constants, so it is the stock non-pure example).
FilterMatrix haar_filter();
FilterMatrix all_ones_filter();

// Limits the truncated scaling products of journe_filter converge to, and
// the translation multiplicity their Gram ranks reproduce.
LineProfile journe_phi1_profile(); // chi of [-4/7,-1/2) u [-2/7,2/7) u [1/2,4/7)
LineProfile journe_phi2_profile(); // chi of [-1/7,1/7)
IntStep journe_translation_multiplicity(); // 1 on [-1/2,-3/7) u [-2/7,2/7) u [3/7,1/2)

} // namespace gmra::demo
