#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "framescope/core.hpp"
#include "framescope/types.hpp"

namespace framescope {

// Exhaustive subset enumeration is 2^n; past this it is refused.
inline constexpr int kMaxExhaustiveN = 30;

// Index subset I whose span and complement span both miss full dimension.
struct SubsetWitness {
  std::vector<int> indices;  // 0-based, strictly increasing
  int span_dim_I = 0;
  int span_dim_Ic = 0;
};

struct ComplementReport {
  bool holds = false;
  std::optional<SubsetWitness> witness;
};

// Rank of [columns] against the relative singular-value cutoff.
int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol = tol::rank);
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol = tol::rank);

int span_rank(const std::vector<Eigen::VectorXcd>& vectors,
              double rel_tol = tol::rank);

// Every subset or its complement must span.  Subsets are enumerated by
// increasing size, lexicographic within a size, so the first failing subset
// is deterministic.  Throws InfeasibleError for n > kMaxExhaustiveN.
ComplementReport has_complement_property(const Frame& frame);

// Every m-subset spans.  Requires n >= m.
bool is_full_spark(const Frame& frame);

// Sampling fallback for frames too large for the exhaustive check: draws
// random subsets and reports the first violation found, if any.  A miss is
// evidence, not proof.
std::optional<SubsetWitness> mc_complement_scan(const Frame& frame,
                                                int samples,
                                                std::uint64_t seed);

}  // namespace framescope
