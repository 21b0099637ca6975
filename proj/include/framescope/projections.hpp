#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "framescope/core.hpp"
#include "framescope/rng.hpp"
#include "framescope/spark.hpp"

namespace framescope {

// Concatenation of all subspace bases into one frame, with provenance:
// origin[k] = (subspace index, column within its basis).
struct PooledFrame {
  Frame frame;
  std::vector<std::pair<int, int>> origin;
};

PooledFrame pool_bases(const ProjectionSystem& system);

// Necessary condition for projection-system recovery: the pooled frame must
// have the complement property.  Exact for real systems; for complex systems
// it is necessary evidence only.
ComplementReport projections_necessary_check(const ProjectionSystem& system);

// Redraws each subspace basis by a random orthogonal change of coordinates.
ProjectionSystem resample_bases(const ProjectionSystem& system, Rng& rng);

// Re-runs the pooled-frame verdict under `resamples` random intra-subspace
// re-parameterizations and reports whether all runs agree.  The verdict is a
// property of the subspaces, not the stored bases, so disagreement flags a
// numerical margin problem.  Real field only.
bool resampled_verdict_stability(const ProjectionSystem& system, int resamples,
                                 std::uint64_t seed);

// Gaussian matrix orthonormalized by QR with positive diagonal convention.
Eigen::MatrixXcd haar_orthonormal(Rng& rng, int rows, int cols, Field field);

}  // namespace framescope
