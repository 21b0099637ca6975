#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "framescope/types.hpp"

namespace framescope {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic generator.  Independent streams are derived from a master
// seed in counter mode, so trial k sees the same draws no matter how trials
// are scheduled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static Rng derived(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    std::uint64_t d = splitmix64(s);
    d ^= splitmix64(s);
    return Rng(d);
  }

  double gaussian() { return normal_(gen_); }
  double uniform() { return unif_(gen_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next_u64() { return gen_(); }

  Complex cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  Eigen::VectorXd gaussian_vec(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = gaussian();
    return v;
  }

  Eigen::VectorXcd cgaussian_vec(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = cgaussian();
    return v;
  }

  Eigen::VectorXd unit_real(int n) {
    for (;;) {
      Eigen::VectorXd v = gaussian_vec(n);
      const double norm = v.norm();
      if (norm > 1e-9) return v / norm;
    }
  }

  Eigen::VectorXcd unit_complex(int n) {
    for (;;) {
      Eigen::VectorXcd v = cgaussian_vec(n);
      const double norm = v.norm();
      if (norm > 1e-9) return v / norm;
    }
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace framescope
