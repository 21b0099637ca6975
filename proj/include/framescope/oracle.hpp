#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "framescope/core.hpp"

namespace framescope {

// Candidate preimages, one representative per phase class, sorted
// lexicographically on the canonicalized vectors.  residuals[k] is the sum
// of squared measurement misfits of candidates[k].
struct RecoveryResult {
  std::vector<Eigen::VectorXcd> candidates;
  std::vector<double> residuals;
};

// Exact real recovery: pick a spanning subset of m frame vectors (greedy
// pivoted rank), enumerate the 2^m sign patterns of their measured
// magnitudes in Gray-code order, solve each linear system, and keep the
// solutions consistent with all n measurements.  Requires a spanning frame
// ("underdetermined" otherwise) and m <= 10; throws DataError("infeasible
// measurements") when nothing fits.
RecoveryResult recover_real(const Frame& frame, const Measurements& meas);

// Complex recovery by random-restart damped Gauss-Newton on the squared
// measurement misfit.  Collects every local minimizer below tol::residual;
// throws DataError("no candidate found") if the budget yields none.
RecoveryResult recover_complex(const Frame& frame, const Measurements& meas,
                               int restarts, std::uint64_t seed);

// Searches for two signals with equal measurements that are not equal up to
// a global phase.  Real frames use the complement-property witness
// construction (exact); complex frames first hunt a deficient direction and
// build the pair from its orthogonal complement, then fall back to measuring
// a random signal and inverting.  Returned pairs are re-verified through
// measure: per-measurement magnitude gap < tol::pair_gap and phase verdict
// != EqualUpToGlobalPhase.
std::optional<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>
find_measurement_equal_pair(const Frame& frame, int restarts,
                            std::uint64_t seed);

}  // namespace framescope
