#include "framescope/projections.hpp"

namespace framescope {

PooledFrame pool_bases(const ProjectionSystem& system) {
  std::vector<Eigen::VectorXcd> vectors;
  std::vector<std::pair<int, int>> origin;
  for (int i = 0; i < system.count(); ++i) {
    const auto& b = system.subspaces[i];
    for (int j = 0; j < b.cols(); ++j) {
      vectors.push_back(b.col(j));
      origin.emplace_back(i, j);
    }
  }
  return {Frame(system.field, system.dim, std::move(vectors)),
          std::move(origin)};
}

ComplementReport projections_necessary_check(const ProjectionSystem& system) {
  return has_complement_property(pool_bases(system).frame);
}

Eigen::MatrixXcd haar_orthonormal(Rng& rng, int rows, int cols, Field field) {
  if (rows < 1 || cols < 1 || cols > rows) {
    throw InputError("haar_orthonormal: invalid shape");
  }
  if (field == Field::Real) {
    Eigen::MatrixXd g(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) g(i, j) = rng.gaussian();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q =
        qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
    const Eigen::MatrixXd r =
        qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (int j = 0; j < cols; ++j) {
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q.cast<Complex>();
  }
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
  const Eigen::MatrixXcd r =
      qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= std::conj(d) / mag;
  }
  return q;
}

ProjectionSystem resample_bases(const ProjectionSystem& system, Rng& rng) {
  std::vector<Eigen::MatrixXcd> resampled;
  resampled.reserve(system.subspaces.size());
  for (const auto& b : system.subspaces) {
    const int d = static_cast<int>(b.cols());
    const Eigen::MatrixXcd rot = haar_orthonormal(rng, d, d, system.field);
    resampled.push_back(b * rot);
  }
  return ProjectionSystem(system.field, system.dim, std::move(resampled));
}

bool resampled_verdict_stability(const ProjectionSystem& system, int resamples,
                                 std::uint64_t seed) {
  if (system.field != Field::Real) {
    throw InputError(
        "resampled_verdict_stability is defined for real systems");
  }
  std::optional<bool> first;
  for (int r = 0; r < resamples; ++r) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(r));
    const ProjectionSystem drawn = resample_bases(system, rng);
    const bool verdict = projections_necessary_check(drawn).holds;
    if (!first) {
      first = verdict;
    } else if (verdict != *first) {
      return false;
    }
  }
  return true;
}

}  // namespace framescope
