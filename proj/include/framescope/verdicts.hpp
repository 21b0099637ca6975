#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "framescope/core.hpp"
#include "framescope/spark.hpp"

namespace framescope {

enum class RetrievalProperty {
  PhaselessReconstruction,
  PhaseRetrieval,
  WeakPhaseRetrieval,
  None,
};

inline const char* retrieval_property_name(RetrievalProperty p) {
  switch (p) {
    case RetrievalProperty::PhaselessReconstruction:
      return "PhaselessReconstruction";
    case RetrievalProperty::PhaseRetrieval: return "PhaseRetrieval";
    case RetrievalProperty::WeakPhaseRetrieval: return "WeakPhaseRetrieval";
    default: return "None";
  }
}

// Two signals with equal measurements that are not equal up to a global
// phase; falsifies injectivity modulo phase.
struct MeasurementEqualPair {
  Eigen::VectorXcd x;
  Eigen::VectorXcd y;
};

// Direction u where the realified rank-one span drops below 2M-1.
struct DeficientDirection {
  Eigen::VectorXcd u;
  int dim_s_u = 0;
};

using Certificate =
    std::variant<SubsetWitness, MeasurementEqualPair, DeficientDirection>;

struct RetrievalVerdict {
  RetrievalProperty property = RetrievalProperty::None;
  std::optional<Certificate> certificate;
  std::string method;  // how the verdict was reached, incl. Monte-Carlo caveats
};

// Real-field decision: the complement property settles phaseless
// reconstruction exactly; on failure the verdict downgrades through weak
// phase retrieval (Monte-Carlo) to None, carrying a counterexample pair.
RetrievalVerdict real_verdict(const Frame& frame, int weak_trials = 200,
                              std::uint64_t seed = 0);

// Constructive pair (x+y, x-y) from a complement-property witness: x is a
// unit vector orthogonal to the subset span, y one orthogonal to the
// complement span.  Measurements agree exactly; the pair fails global phase
// equivalence whenever x and y are numerically independent.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> counterexample_pair(
    const Frame& frame, const SubsetWitness& witness);

// n x 2M real matrix whose row i is realify(<u, phi_i> phi_i).
Eigen::MatrixXd s_u_matrix(const Frame& frame, const Eigen::VectorXcd& u);

// dim of the real span of the rows above.
int s_u_dimension(const Frame& frame, const Eigen::VectorXcd& u);

struct InjectivityReport {
  bool no_violation = false;  // Monte-Carlo evidence, never proof
  int trials = 0;
  int required_dim = 0;  // 2M-1
  int min_dim = 0;
  int max_dim = 0;
  Eigen::VectorXcd worst_u;  // direction attaining min_dim
};

// Samples random unit directions and checks dim S(u) >= 2M-1.  The rank can
// never exceed 2M-1 (every row is orthogonal to realify(iu)); exceeding it
// indicates a numerical failure and throws std::logic_error.
InjectivityReport complex_injectivity_check(const Frame& frame, int trials,
                                            std::uint64_t seed);

struct FalsifierHit {
  Eigen::VectorXcd u;
  double residual = 0.0;  // (2M-1)-th singular value at u
};

// Searches the unit sphere for a direction where the (2M-1)-th singular
// value of the S(u) row matrix vanishes; projected-gradient descent with
// multiplicative perturbation restarts.  Success threshold: tol::falsifier.
std::optional<FalsifierHit> complex_falsifier(const Frame& frame, int restarts,
                                              std::uint64_t seed);

// max_n |<phi_n phi_n^* u, iu>_R|; identically zero in exact arithmetic.
double lemma_orthogonality_check(const Frame& frame, const Eigen::VectorXcd& u);

// max_n of the polarization defect
// | (|<u+v,phi>|^2 - |<u-v,phi>|^2) - 4 <phi phi^* u, v>_R |,
// normalized by the largest magnitude involved in that term.
double polarization_check(const Frame& frame, const Eigen::VectorXcd& u,
                          const Eigen::VectorXcd& v);

// Angle theta with arg(a+b) = arg(e^{i theta}(a-b)) mod pi wherever both are
// nonzero: atan2(2 Im(conj(a) b), |a|^2 - |b|^2), and pi/2 when |a| = |b|
// within tolerance.  Requires (a, b) != (0, 0).
double tan_theta(Complex a, Complex b, double tol = tol::phase);

struct KnownBounds {
  int lower = 0;              // below this, no frame can work
  int generic_sufficient = 0; // generic frames of this size work
  std::string note;
};

// Real: (2m-1, 2m-1).  Complex: lower 4m-4-2a with a the ones in the binary
// expansion of m-1, tightened to 4m-4 when m = 2^k + 1; generic sufficient
// 4m-4.  The complex lower bound is not tight for every m (11 vectors
// suffice in C^4).
KnownBounds known_bounds(int m, Field field);

}  // namespace framescope
