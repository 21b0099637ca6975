#pragma once

#include <complex>
#include <stdexcept>

namespace framescope {

using Complex = std::complex<double>;

enum class Field { Real, Complex };

inline const char* field_name(Field f) {
  return f == Field::Real ? "real" : "complex";
}

// Dimension or field mismatch, or an otherwise unusable argument.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A stored object violates its construction invariants.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input data is internally inconsistent or unsatisfiable.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exhaustive check exceeds the desk-scale cap.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shared tolerances.  All defaults assume O(1)-scaled inputs; rank cuts are
// relative to the largest singular value.
namespace tol {
inline constexpr double orth = 1e-10;      // basis orthonormality
inline constexpr double rank = 1e-8;       // numerical-rank cutoff, relative
inline constexpr double phase = 1e-8;      // default compare_phases tolerance
inline constexpr double product = 1e-9;    // pairwise-product consistency
inline constexpr double pair_gap = 1e-9;   // measurement-equal pair gap
inline constexpr double residual = 1e-9;   // recovery misfit acceptance
inline constexpr double dedup = 1e-6;      // candidate-class merging
inline constexpr double falsifier = 1e-6;  // deficient-direction residual
}  // namespace tol

}  // namespace framescope
