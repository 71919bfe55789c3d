#pragma once

#include "dtssfn/transforms.hpp"

#include <span>

namespace dtssfn::detail {

// Filters in correlation form: approx[k] = sum_m analysis_lo[m] * x[(2k + m) mod n].
// Synthesis places coefficient k at offsets 2k + m with synthesis_lo/hi[m].
// Values are the standard published decomposition/reconstruction filters;
// the analysis arrays are the time-reversed decomposition filters.
struct FilterBank {
  std::span<const double> analysis_lo;
  std::span<const double> analysis_hi;
  std::span<const double> synthesis_lo;
  std::span<const double> synthesis_hi;
};

/// Throws std::logic_error for non-wavelet tags.
FilterBank filter_bank(TransformTag tag);

}  // namespace dtssfn::detail
