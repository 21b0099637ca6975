#include "framescope/core.hpp"

#include <cmath>
#include <string>

namespace framescope {

namespace {

template <typename Err>
void check_real_entries(const Eigen::VectorXcd& v, const char* what) {
  for (int i = 0; i < v.size(); ++i) {
    if (v(i).imag() != 0.0) {
      throw Err(std::string(what) +
                " carries nonzero imaginary parts in a real-field "
                "context");
    }
  }
}

void check_signal(Field field, int dim, const Eigen::VectorXcd& x) {
  if (x.size() != dim) {
    throw InputError("signal has dimension " + std::to_string(x.size()) +
                     ", expected " + std::to_string(dim));
  }
  if (field == Field::Real) check_real_entries<InputError>(x, "signal");
}

}  // namespace

Frame::Frame(Field field_, int dim_, std::vector<Eigen::VectorXcd> vectors_)
    : field(field_), dim(dim_), vectors(std::move(vectors_)) {
  if (dim < 1) throw ValidationError("frame dimension must be >= 1");
  if (vectors.empty()) throw ValidationError("frame needs at least one vector");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) {
      throw ValidationError("frame vector " + std::to_string(i) +
                            " has length " + std::to_string(vectors[i].size()) +
                            ", expected " + std::to_string(dim));
    }
    if (field == Field::Real) {
      check_real_entries<ValidationError>(vectors[i], "frame vector");
    }
  }
}

Eigen::MatrixXcd Frame::matrix() const {
  Eigen::MatrixXcd a(dim, n());
  for (int j = 0; j < n(); ++j) a.col(j) = vectors[j];
  return a;
}

Eigen::MatrixXd Frame::real_matrix() const {
  if (field != Field::Real) {
    throw InputError("real_matrix requires a real-field frame");
  }
  return matrix().real();
}

std::vector<int> Frame::zero_vector_indices(double tol) const {
  double top = 0.0;
  for (const auto& v : vectors) top = std::max(top, v.norm());
  const double thr = tol * std::max(1.0, top);
  std::vector<int> out;
  for (int i = 0; i < n(); ++i) {
    if (vectors[i].norm() <= thr) out.push_back(i);
  }
  return out;
}

Frame make_real_frame(int dim, const std::vector<Eigen::VectorXd>& vectors) {
  std::vector<Eigen::VectorXcd> lifted;
  lifted.reserve(vectors.size());
  for (const auto& v : vectors) lifted.emplace_back(v.cast<Complex>());
  return Frame(Field::Real, dim, std::move(lifted));
}

ProjectionSystem::ProjectionSystem(Field field_, int dim_,
                                   std::vector<Eigen::MatrixXcd> subspaces_)
    : field(field_), dim(dim_), subspaces(std::move(subspaces_)) {
  if (dim < 1) throw ValidationError("system dimension must be >= 1");
  if (subspaces.empty()) {
    throw ValidationError("projection system needs at least one subspace");
  }
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    const auto& b = subspaces[i];
    const std::string where = "subspace " + std::to_string(i);
    if (b.rows() != dim) {
      throw ValidationError(where + " has ambient dimension " +
                            std::to_string(b.rows()) + ", expected " +
                            std::to_string(dim));
    }
    if (b.cols() < 1 || b.cols() > dim) {
      throw ValidationError(where + " has invalid basis size " +
                            std::to_string(b.cols()));
    }
    if (field == Field::Real) {
      for (int c = 0; c < b.cols(); ++c) {
        check_real_entries<ValidationError>(b.col(c), "subspace basis vector");
      }
    }
    const Eigen::MatrixXcd gram = b.adjoint() * b;
    const double defect =
        (gram - Eigen::MatrixXcd::Identity(b.cols(), b.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (defect > tol::orth) {
      throw ValidationError(where + " basis is not orthonormal (defect " +
                            std::to_string(defect) + ")");
    }
  }
}

Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  // Eigen's dot conjugates its object argument.
  return y.dot(x);
}

Measurements measure(const Frame& frame, const Eigen::VectorXcd& x) {
  check_signal(frame.field, frame.dim, x);
  Measurements out(frame.n());
  for (int i = 0; i < frame.n(); ++i) {
    out(i) = std::norm(inner(x, frame.vectors[i]));
  }
  return out;
}

Measurements measure(const Frame& frame, const Eigen::VectorXd& x) {
  return measure(frame, Eigen::VectorXcd(x.cast<Complex>()));
}

Measurements measure_projections(const ProjectionSystem& system,
                                 const Eigen::VectorXcd& x) {
  check_signal(system.field, system.dim, x);
  Measurements out(system.count());
  for (int i = 0; i < system.count(); ++i) {
    // Orthonormal columns: ||P_i x||^2 = sum_j |<x, b_j>|^2.
    out(i) = (system.subspaces[i].adjoint() * x).squaredNorm();
  }
  return out;
}

Measurements measure_projections(const ProjectionSystem& system,
                                 const Eigen::VectorXd& x) {
  return measure_projections(system, Eigen::VectorXcd(x.cast<Complex>()));
}

PhaseRelation compare_phases(const Eigen::VectorXcd& x,
                             const Eigen::VectorXcd& y, double tol) {
  if (x.size() != y.size()) {
    throw InputError("compare_phases needs equal dimensions");
  }
  if (tol <= 0.0) throw InputError("compare_phases tolerance must be > 0");
  const double scale = std::max(x.norm(), y.norm());
  if (scale == 0.0) {
    return {PhaseVerdict::EqualUpToGlobalPhase, Complex(1.0, 0.0)};
  }
  const double peak =
      std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff());
  const double support_thr = tol * peak;

  // Largest-magnitude common-support coordinate fixes the candidate phase.
  int pivot = -1;
  double best = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double ax = std::abs(x(i));
    const double ay = std::abs(y(i));
    if (ax > support_thr && ay > support_thr && std::min(ax, ay) > best) {
      best = std::min(ax, ay);
      pivot = i;
    }
  }

  Complex theta(1.0, 0.0);
  if (pivot >= 0) {
    const Complex ratio = x(pivot) * std::conj(y(pivot));
    theta = ratio / std::abs(ratio);
  }
  if ((x - theta * y).norm() <= tol * scale) {
    return {PhaseVerdict::EqualUpToGlobalPhase, theta};
  }
  if (pivot < 0) {
    // Disjoint supports: weakly equal by convention.
    return {PhaseVerdict::WeaklyEqual, Complex(1.0, 0.0)};
  }
  for (int i = 0; i < x.size(); ++i) {
    const double ax = std::abs(x(i));
    const double ay = std::abs(y(i));
    if (ax <= support_thr || ay <= support_thr) continue;
    const Complex px = x(i) / ax;
    const Complex py = theta * y(i) / ay;
    if (std::abs(px - py) > tol) return {PhaseVerdict::Distinct, std::nullopt};
  }
  return {PhaseVerdict::WeaklyEqual, theta};
}

Eigen::VectorXd realify(const Eigen::VectorXcd& z) {
  Eigen::VectorXd out(2 * z.size());
  out.head(z.size()) = z.real();
  out.tail(z.size()) = z.imag();
  return out;
}

Eigen::VectorXcd unrealify(const Eigen::VectorXd& v) {
  if (v.size() % 2 != 0) {
    throw InputError("unrealify needs an even-length vector");
  }
  const int m = static_cast<int>(v.size()) / 2;
  Eigen::VectorXcd out(m);
  for (int i = 0; i < m; ++i) out(i) = Complex(v(i), v(m + i));
  return out;
}

Eigen::VectorXd realify(Field field, const Eigen::VectorXcd& z) {
  if (field != Field::Complex) {
    throw InputError("realify is a complex-field operation");
  }
  return realify(z);
}

}  // namespace framescope
