#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "framescope/types.hpp"

namespace framescope {

// Ordered measurement frame in R^m or C^m.  Vectors are stored with complex
// entries; a real-field frame must have exactly zero imaginary parts.
// Treat instances as immutable after construction.
struct Frame {
  Frame(Field field, int dim, std::vector<Eigen::VectorXcd> vectors);

  Field field;
  int dim;
  std::vector<Eigen::VectorXcd> vectors;

  int n() const { return static_cast<int>(vectors.size()); }
  Eigen::MatrixXcd matrix() const;  // dim x n, one column per vector
  Eigen::MatrixXd real_matrix() const;

  // Zero vectors are permitted; analysis layers surface them.
  std::vector<int> zero_vector_indices(double tol = 1e-14) const;
};

Frame make_real_frame(int dim, const std::vector<Eigen::VectorXd>& vectors);

// Subspaces given by orthonormal bases (dim x D_i column blocks).
struct ProjectionSystem {
  ProjectionSystem(Field field, int dim,
                   std::vector<Eigen::MatrixXcd> subspaces);

  Field field;
  int dim;
  std::vector<Eigen::MatrixXcd> subspaces;

  int count() const { return static_cast<int>(subspaces.size()); }
};

using Measurements = Eigen::VectorXd;

enum class PhaseVerdict { EqualUpToGlobalPhase, WeaklyEqual, Distinct };

inline const char* phase_verdict_name(PhaseVerdict v) {
  switch (v) {
    case PhaseVerdict::EqualUpToGlobalPhase: return "EqualUpToGlobalPhase";
    case PhaseVerdict::WeaklyEqual: return "WeaklyEqual";
    default: return "Distinct";
  }
}

struct PhaseRelation {
  PhaseVerdict verdict;
  // Unimodular factor relating the inputs; meaningful for the first two
  // verdicts.  1 by convention when the common support is empty.
  std::optional<Complex> phase;
};

// sum_i x_i * conj(y_i); linear in the first argument.
Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

// Squared-magnitude measurements |<x, phi_i>|^2.
Measurements measure(const Frame& frame, const Eigen::VectorXcd& x);
Measurements measure(const Frame& frame, const Eigen::VectorXd& x);

// ||P_i x||^2 per subspace.
Measurements measure_projections(const ProjectionSystem& system,
                                 const Eigen::VectorXcd& x);
Measurements measure_projections(const ProjectionSystem& system,
                                 const Eigen::VectorXd& x);

// Classifies x against y up to a global unimodular phase, and failing that,
// up to per-coordinate phases on the common support.  Coordinates with
// magnitude <= tol * max|entry| are treated as exact zeros; the global phase
// is taken in closed form from the largest-magnitude common-support
// coordinate.
PhaseRelation compare_phases(const Eigen::VectorXcd& x,
                             const Eigen::VectorXcd& y,
                             double tol = tol::phase);

// R^{2M} image of z: real parts first, then imaginary parts.
Eigen::VectorXd realify(const Eigen::VectorXcd& z);
Eigen::VectorXcd unrealify(const Eigen::VectorXd& v);

// Field-checked variant: realification is a complex-field operation.
Eigen::VectorXd realify(Field field, const Eigen::VectorXcd& z);

}  // namespace framescope
