#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <utility>
#include <vector>

#include "framescope/projections.hpp"
#include "test_util.hpp"

using namespace framescope;
using testutil::rvec;

namespace {

Eigen::MatrixXcd real_basis(int dim,
                            std::initializer_list<std::initializer_list<double>>
                                cols) {
  Eigen::MatrixXcd b(dim, cols.size());
  int j = 0;
  for (const auto& c : cols) {
    int i = 0;
    for (double e : c) b(i++, j) = Complex(e);
    ++j;
  }
  return b;
}

ProjectionSystem random_system(int dim, const std::vector<int>& dims,
                               std::uint64_t seed, Field field = Field::Real) {
  Rng rng(seed);
  std::vector<Eigen::MatrixXcd> subs;
  for (int d : dims) subs.push_back(haar_orthonormal(rng, dim, d, field));
  return ProjectionSystem(field, dim, std::move(subs));
}

Eigen::MatrixXcd projector(const Eigen::MatrixXcd& basis) {
  return basis * basis.adjoint();
}

}  // namespace

TEST_CASE("pool_bases concatenates with provenance") {
  const ProjectionSystem sys(
      Field::Real, 3,
      {real_basis(3, {{1, 0, 0}, {0, 1, 0}}), real_basis(3, {{0, 0, 1}})});
  const PooledFrame pooled = pool_bases(sys);
  CHECK(pooled.frame.n() == 3);
  CHECK(pooled.frame.dim == 3);
  REQUIRE(pooled.origin.size() == 3);
  CHECK(pooled.origin[0] == std::pair<int, int>{0, 0});
  CHECK(pooled.origin[1] == std::pair<int, int>{0, 1});
  CHECK(pooled.origin[2] == std::pair<int, int>{1, 0});
  CHECK((pooled.frame.vectors[2] -
         Eigen::Vector3cd(Complex(0), Complex(0), Complex(1)))
            .norm() == 0.0);
}

TEST_CASE("necessary check fails for coordinate lines in R^2") {
  const ProjectionSystem sys(
      Field::Real, 2, {real_basis(2, {{1, 0}}), real_basis(2, {{0, 1}})});
  const ComplementReport r = projections_necessary_check(sys);
  CHECK(!r.holds);
  REQUIRE(r.witness.has_value());
}

TEST_CASE("necessary check fails when one subspace is duplicated") {
  // Two copies of the same plane leave the pooled vectors inside it.
  const auto plane = real_basis(3, {{1, 0, 0}, {0, 1, 0}});
  const ProjectionSystem sys(Field::Real, 3, {plane, plane});
  CHECK(!projections_necessary_check(sys).holds);
}

TEST_CASE("necessary check passes for generic systems") {
  for (int t = 0; t < 10; ++t) {
    const ProjectionSystem sys = random_system(3, {2, 2, 2}, 100 + t);
    CHECK(projections_necessary_check(sys).holds);
  }
}

TEST_CASE("haar_orthonormal produces valid bases in both fields") {
  Rng rng(1);
  const Eigen::MatrixXcd qr_ = haar_orthonormal(rng, 4, 2, Field::Real);
  CHECK((qr_.adjoint() * qr_ - Eigen::MatrixXcd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(qr_.imag().cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXcd qc = haar_orthonormal(rng, 4, 4, Field::Complex);
  CHECK((qc.adjoint() * qc - Eigen::MatrixXcd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  CHECK_THROWS_AS(haar_orthonormal(rng, 2, 3, Field::Real), InputError);
}

TEST_CASE("resample_bases keeps every subspace, changes its basis") {
  const ProjectionSystem sys = random_system(4, {2, 3}, 17);
  Rng rng(23);
  const ProjectionSystem re = resample_bases(sys, rng);
  REQUIRE(re.count() == sys.count());
  for (int i = 0; i < sys.count(); ++i) {
    const auto gap = (projector(sys.subspaces[i]) - projector(re.subspaces[i]))
                         .cwiseAbs()
                         .maxCoeff();
    CHECK(gap < 1e-10);  // same subspace
    CHECK((sys.subspaces[i] - re.subspaces[i]).cwiseAbs().maxCoeff() > 1e-3);
  }
}

TEST_CASE("projection measurements are basis-independent") {
  const ProjectionSystem sys = random_system(3, {2, 2}, 31);
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const ProjectionSystem re = resample_bases(sys, rng);
    const Eigen::VectorXd x = rng.gaussian_vec(3);
    const Measurements a = measure_projections(sys, x);
    const Measurements b = measure_projections(re, x);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("verdict stability: one resample is trivially stable") {
  const ProjectionSystem sys = random_system(3, {2, 2, 2}, 3);
  CHECK(resampled_verdict_stability(sys, 1, 0));
}

TEST_CASE("verdict stability holds for generic and failing systems alike") {
  const ProjectionSystem good = random_system(3, {2, 2, 2}, 51);
  REQUIRE(projections_necessary_check(good).holds);
  CHECK(resampled_verdict_stability(good, 20, 0));

  // A failing verdict must keep failing: the property belongs to the
  // subspaces, not the sampled bases.
  const auto plane = real_basis(3, {{1, 0, 0}, {0, 1, 0}});
  const ProjectionSystem bad(Field::Real, 3, {plane, plane});
  REQUIRE(!projections_necessary_check(bad).holds);
  CHECK(resampled_verdict_stability(bad, 20, 0));
}

TEST_CASE("verdict stability is a real-field operation") {
  const ProjectionSystem sys = random_system(3, {2, 2}, 8, Field::Complex);
  CHECK_THROWS_AS(resampled_verdict_stability(sys, 2, 0), InputError);
}
