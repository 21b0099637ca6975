#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "framescope/core.hpp"
#include "framescope/rng.hpp"

namespace testutil {

using framescope::Complex;

inline Eigen::VectorXd rvec(std::initializer_list<double> entries) {
  Eigen::VectorXd v(entries.size());
  int i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

inline Eigen::VectorXcd cvec(std::initializer_list<Complex> entries) {
  Eigen::VectorXcd v(entries.size());
  int i = 0;
  for (const Complex& e : entries) v(i++) = e;
  return v;
}

inline framescope::Frame rframe(
    int dim, std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Eigen::VectorXd> vs;
  for (const auto& r : rows) vs.push_back(rvec(r));
  return framescope::make_real_frame(dim, vs);
}

inline framescope::Frame cframe(
    int dim, std::initializer_list<std::initializer_list<Complex>> rows) {
  std::vector<Eigen::VectorXcd> vs;
  for (const auto& r : rows) vs.push_back(cvec(r));
  return framescope::Frame(framescope::Field::Complex, dim, std::move(vs));
}

inline bool exactly_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() == 0.0;
}

inline framescope::Frame gaussian_frame(framescope::Field field, int m, int n,
                                        std::uint64_t seed) {
  framescope::Rng rng(seed);
  std::vector<Eigen::VectorXcd> vs;
  for (int i = 0; i < n; ++i) {
    if (field == framescope::Field::Real) {
      vs.push_back(rng.gaussian_vec(m).cast<Complex>().eval());
    } else {
      vs.push_back(rng.cgaussian_vec(m));
    }
  }
  return framescope::Frame(field, m, std::move(vs));
}

}  // namespace testutil
