#pragma once

#include "pampa/scheme_high.hpp"

#include <vector>

namespace pampa {

struct MoodOptions {
  bool enabled = true;
  /// Relaxed discrete maximum principle on the depth average.
  bool dmp = true;
  double dmp_absolute = 1e-4;
  double dmp_relative = 1e-3;
};

struct FlagState {
  std::vector<char> elements;
  std::vector<char> dofs;
  int flagged_elements = 0;
  int flagged_dofs = 0;

  [[nodiscard]] bool any() const { return flagged_elements > 0; }
};

/// Admissibility of `candidate` against the step-start field `previous`.
/// Flags an element for non-finite values or depth/temperature below the
/// floors at its average, boundary points or centroid, and (if enabled)
/// for a depth average outside the relaxed range of the previous averages
/// over its neighborhood. DoFs of flagged elements are flagged.
FlagState detect(const Discretization& disc, const SolutionField& candidate,
                 const SolutionField& previous, const MoodOptions& options);

/// One SSP-RK3 step with a-posteriori limiting. The high-order candidate is
/// checked; flagged averages and point values are recomputed over the whole
/// step with the first-order schemes, unflagged entities keeping their
/// candidate stage values. Entities still inadmissible afterwards are
/// clipped to the floors, or reset to the step-start state if non-finite.
/// Returns the flags of the candidate.
FlagState guarded_step(const Discretization& disc, SolutionField& field, double t, double dt,
                       const MoodOptions& options, Workspace& ws);

}  // namespace pampa
