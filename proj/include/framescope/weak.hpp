#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "framescope/core.hpp"
#include "framescope/types.hpp"

namespace framescope {

// Pairwise products p_ij = x_i * x_j, i != j.  Symmetric; the diagonal is
// unused and stored as zero.
struct ProductRelations {
  int dim = 0;
  Eigen::MatrixXd products;
};

// Entries in {-1, 0, +1}; canonicalized so the first nonzero entry is +1.
struct SignPattern {
  Eigen::VectorXi signs;
};

// m+1 vectors in R^m: the all-ones vector, then ones - 2 e_i for each i.
// Does weak phase retrieval for m <= 3 despite being too small for
// phaseless reconstruction.  For m >= 4 it does not: measurement equality
// under this family forces, per coordinate, a_i = b_i or a_i + b_i = sum(a)
// (up to a global flip), and with four or more coordinates such pairs can
// conflict in sign; real_verdict constructs one.  Requires m >= 2.
Frame weak_pr_frame(int m);

ProductRelations extract_products(const Eigen::VectorXd& x);

// Signs on K = {i : some p_ij != 0}, fixed by sign(min K) = +1 and
// propagated through the products of the minimum index.  Coordinates outside
// K get 0.  Inconsistent products (a triple with negative product, or a
// member of K unreachable from min K) raise DataError.
SignPattern recover_signs(const ProductRelations& products,
                          double tol = tol::product);

// |x_i| = sqrt(p_ij p_ik / p_jk) whenever two partners j, k with all three
// products nonzero exist; all such choices must agree to 1e-8.  Entries
// without a supporting triple are nullopt.
std::vector<std::optional<double>> recover_magnitudes(
    const ProductRelations& products, double tol = tol::product);

// Structure report for a measurement-equal pair of the weak kind.
struct WeakPairReport {
  // Case families for a product-equal pair (may overlap):
  bool x_vanishes_y_singleton = false;  // some i: x_i = 0 and y zero off i
  int x_case_index = -1;
  bool y_vanishes_x_singleton = false;  // the mirrored case
  int y_case_index = -1;
  bool common_support_case = false;     // neither singleton case applies

  std::vector<int> common_support;      // indices with both entries nonzero
  int sign_theta = +1;                  // +1 same signs, -1 opposite, on support
  bool off_support_zero = false;        // both vanish outside common support
  bool magnitudes_forced = false;       // common support >= 3 points
  bool magnitudes_equal = false;        // |x_i| = |y_i| on support (1e-8)
};

// Precondition: extract_products(x) == extract_products(y) entrywise within
// tol::product; otherwise InputError.
WeakPairReport classify_pair(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y,
                             double tol = tol::product);

struct WeakVerdict {
  bool holds = false;  // Monte-Carlo evidence when true
  int trials = 0;
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> counterexample;
  // Measurement-equal pair whose pairwise products disagree, if one ever
  // appears; recorded as an artifact, not a failure.
  std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> product_mismatch;
};

// Random signals are measured and every exact preimage is compared against
// the original; any Distinct pair falsifies weak phase retrieval.  Real
// field only.
WeakVerdict weak_verdict(const Frame& frame, int trials, std::uint64_t seed);

}  // namespace framescope
