// End-to-end acceptance checks.  Each criterion prints one [PASS]/[FAIL]
// line with its runtime; the process exits nonzero if any criterion fails
// or overruns its budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "framescope/oracle.hpp"
#include "framescope/projections.hpp"
#include "framescope/spark.hpp"
#include "framescope/verdicts.hpp"
#include "framescope/weak.hpp"
#include "test_util.hpp"

using namespace framescope;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string name, double budget_s)
      : number_(number), name_(std::move(name)), budget_s_(budget_s),
        start_(std::chrono::steady_clock::now()) {}

  void fail(const std::string& why) {
    if (failure_.empty()) failure_ = why;
  }

  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }

  ~Criterion() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_).count();
    if (secs > budget_s_) {
      fail("runtime " + std::to_string(secs) + " s over budget");
    }
    const bool ok = failure_.empty();
    std::printf("[%s] %d. %s (%.2f s, budget %.0f s)%s%s\n",
                ok ? "PASS" : "FAIL", number_, name_.c_str(), secs, budget_s_,
                ok ? "" : ": ", failure_.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }

 private:
  int number_;
  std::string name_;
  double budget_s_;
  std::string failure_;
  std::chrono::steady_clock::time_point start_;
};

double pair_angle(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const double c = std::abs(inner(a, b)) / (a.norm() * b.norm());
  return std::acos(std::min(1.0, c));
}

Eigen::VectorXi expected_signs(const Eigen::VectorXd& x) {
  Eigen::VectorXi s = Eigen::VectorXi::Zero(x.size());
  int nonzero = 0;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) != 0.0) {
      s(i) = x(i) > 0 ? 1 : -1;
      ++nonzero;
    }
  }
  if (nonzero < 2) return Eigen::VectorXi::Zero(x.size());
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) != 0) {
      if (s(i) < 0) s = -s;
      break;
    }
  }
  return s;
}

void criterion_1_complement_transition() {
  Criterion c(1, "complement-property transition at 2m-1 vectors", 30);
  for (int m = 2; m <= 5; ++m) {
    for (int t = 0; t < 100; ++t) {
      const Frame plus =
          testutil::gaussian_frame(Field::Real, m, 2 * m - 1, 1000 * m + t);
      if (!has_complement_property(plus).holds) {
        c.fail("CP failed at m=" + std::to_string(m) + " n=2m-1 trial " +
               std::to_string(t));
      }
      const Frame minus =
          testutil::gaussian_frame(Field::Real, m, 2 * m - 2, 2000 * m + t);
      if (has_complement_property(minus).holds) {
        c.fail("CP held at m=" + std::to_string(m) + " n=2m-2 trial " +
               std::to_string(t));
      }
    }
  }
}

void criterion_2_constructive_pairs() {
  Criterion c(2, "constructive measurement-equal pairs from failing subsets",
              10);
  int built = 0;
  for (int m = 2; m <= 5 && built < 100; ++m) {
    for (int t = 0; t < 25 && built < 100; ++t) {
      const Frame f =
          testutil::gaussian_frame(Field::Real, m, 2 * m - 2, 2000 * m + t);
      const ComplementReport rep = has_complement_property(f);
      if (rep.holds) {
        c.fail("expected CP failure at m=" + std::to_string(m));
        continue;
      }
      const auto [x, y] = counterexample_pair(f, *rep.witness);
      const double gap =
          (measure(f, x) - measure(f, y)).cwiseAbs().maxCoeff();
      c.require(gap <= 1e-9, "measurement gap " + std::to_string(gap));
      const double angle = pair_angle(x, y);
      c.require(angle > 1e-6, "pair collapsed, angle " + std::to_string(angle));
      ++built;
    }
  }
  c.require(built == 100, "built only " + std::to_string(built) + " pairs");
}

void criterion_3_rank_criterion() {
  Criterion c(3, "rank criterion: dim S(u) pinned at 2M-1", 120);
  for (int m = 2; m <= 3; ++m) {
    const int required = 2 * m - 1;
    for (int t = 0; t < 50; ++t) {
      const Frame f =
          testutil::gaussian_frame(Field::Complex, m, 4 * m - 4, 3000 * m + t);
      Rng rng = Rng::derived(42, 3000 * m + t);
      for (int k = 0; k < 1000; ++k) {
        const int dim = s_u_dimension(f, rng.unit_complex(m));
        if (dim != required) {
          c.fail("dim S(u) = " + std::to_string(dim) + " at m=" +
                 std::to_string(m) + " frame " + std::to_string(t));
          break;
        }
      }
    }
  }
  const Frame seven = testutil::gaussian_frame(Field::Complex, 3, 7, 123);
  const auto hit = complex_falsifier(seven, 200, 123);
  if (!hit.has_value()) {
    c.fail("falsifier missed the deficient direction on a 7-vector frame");
  } else {
    c.require(hit->residual < 1e-6,
              "falsifier residual " + std::to_string(hit->residual));
  }
}

void criterion_4_identity_suite() {
  Criterion c(4, "measurement identity suite", 10);
  double worst_orth = 0.0, worst_polar = 0.0, worst_angle = 0.0;
  for (int t = 0; t < 10000; ++t) {
    Rng rng = Rng::derived(7, t);
    const int m = 2 + t % 5;
    const Frame f = testutil::gaussian_frame(Field::Complex, m, 3,
                                             900000 + t);
    const Eigen::VectorXcd u = rng.cgaussian_vec(m);
    const Eigen::VectorXcd v = rng.cgaussian_vec(m);
    worst_orth = std::max(worst_orth, lemma_orthogonality_check(f, u));
    worst_polar = std::max(worst_polar, polarization_check(f, u, v));

    Complex a = rng.cgaussian();
    Complex b = rng.cgaussian();
    if (t % 10 == 0) b *= std::abs(a) / std::abs(b);  // forced |a| = |b|
    const double theta = tan_theta(a, b);
    const Complex sum = a + b;
    const Complex diff = std::polar(1.0, theta) * (a - b);
    if (std::abs(sum) < 1e-12 || std::abs(diff) < 1e-12) continue;
    const Complex rel = sum * std::conj(diff);
    worst_angle = std::max(
        worst_angle, std::atan2(std::abs(rel.imag()), std::abs(rel.real())));
  }
  c.require(worst_orth < 1e-11,
            "orthogonality deviation " + std::to_string(worst_orth));
  c.require(worst_polar < 1e-11,
            "polarization deviation " + std::to_string(worst_polar));
  c.require(worst_angle <= 1e-9,
            "angle relation deviation " + std::to_string(worst_angle));
}

void criterion_5_weak_round_trip() {
  Criterion c(5, "weak retrieval sign/magnitude round trip", 30);
  for (int m = 3; m <= 8; ++m) {
    int patterns = 1;
    for (int i = 0; i < m; ++i) patterns *= 3;
    Rng rng = Rng::derived(5, m);
    for (int code = 0; code < patterns; ++code) {
      for (int draw = 0; draw < 20; ++draw) {
        Eigen::VectorXd x(m);
        int cdx = code;
        int support = 0;
        for (int i = 0; i < m; ++i) {
          const int trit = cdx % 3;
          cdx /= 3;
          const double mag = rng.uniform(0.5, 2.0);
          x(i) = trit == 0 ? 0.0 : (trit == 1 ? mag : -mag);
          support += trit != 0;
        }
        const ProductRelations p = extract_products(x);
        const SignPattern s = recover_signs(p);
        if ((s.signs - expected_signs(x)).cwiseAbs().maxCoeff() != 0) {
          c.fail("sign mismatch at m=" + std::to_string(m) + " pattern " +
                 std::to_string(code));
          return;
        }
        const auto mags = recover_magnitudes(p);
        for (int i = 0; i < m; ++i) {
          const bool should = x(i) != 0.0 && support >= 3;
          if (should != mags[i].has_value()) {
            c.fail("magnitude support mismatch at m=" + std::to_string(m));
            return;
          }
          if (should &&
              std::abs(*mags[i] - std::abs(x(i))) >
                  1e-8 * std::max(1.0, std::abs(x(i)))) {
            c.fail("magnitude off at m=" + std::to_string(m));
            return;
          }
        }
      }
    }
  }

  for (int m = 3; m <= 8; ++m) {
    const Frame f = weak_pr_frame(m);
    Rng rng = Rng::derived(55, m);
    int accepted = 0;
    while (accepted < 100) {
      const double s = rng.uniform(-2.0, 2.0);
      const double a = rng.uniform(-2.0, 2.0);
      if (std::abs(s) < 0.1 || std::abs(a) < 0.1 || std::abs(s - a) < 0.1 ||
          std::abs(s - 2 * a) < 0.1) {
        continue;
      }
      Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
      Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
      x(0) = a;
      x(1) = s - a;
      y(0) = s - a;
      y(1) = a;
      if ((measure(f, x) - measure(f, y)).cwiseAbs().maxCoeff() != 0.0) {
        c.fail("swap pair not measurement-equal at m=" + std::to_string(m));
        return;
      }
      const PhaseRelation rel =
          compare_phases(x.cast<Complex>(), y.cast<Complex>());
      if (rel.verdict != PhaseVerdict::WeaklyEqual) {
        c.fail("swap pair not WeaklyEqual-not-Equal at m=" +
               std::to_string(m));
        return;
      }
      ++accepted;
    }
  }
}

void criterion_6_oracle_agreement() {
  Criterion c(6, "pair oracle agrees with the complement criterion", 120);
  int disagreements = 0;
  int checked = 0;
  for (int m = 2; m <= 5; ++m) {
    for (int n : {2 * m - 2, 2 * m - 1}) {
      for (int t = 0; t < 25; ++t) {
        const Frame f =
            testutil::gaussian_frame(Field::Real, m, n, 6000 * m + 100 * n + t);
        const bool cp = has_complement_property(f).holds;
        const bool found =
            find_measurement_equal_pair(f, 10, 60 + t).has_value();
        if (found == cp) ++disagreements;
        ++checked;
      }
    }
  }
  c.require(checked == 200, "checked " + std::to_string(checked));
  c.require(disagreements == 0,
            std::to_string(disagreements) + " disagreements");
}

void criterion_7_projection_stability() {
  Criterion c(7, "projection verdicts survive basis resampling", 60);
  for (int t = 0; t < 20; ++t) {
    Rng rng = Rng::derived(77, t);
    std::vector<Eigen::MatrixXcd> bases;
    for (int k = 0; k < 3; ++k) {
      bases.push_back(haar_orthonormal(rng, 3, 2, Field::Real));
    }
    const ProjectionSystem sys(Field::Real, 3, bases);
    if (!resampled_verdict_stability(sys, 50, 7000 + t)) {
      c.fail("unstable verdict on system " + std::to_string(t));
    }
  }
}

void criterion_8_bounds_table() {
  Criterion c(8, "bounds table hand values", 5);
  const KnownBounds r3 = known_bounds(3, Field::Real);
  c.require(r3.lower == 5 && r3.generic_sufficient == 5,
            "real m=3 bounds off");
  const KnownBounds c4 = known_bounds(4, Field::Complex);
  c.require(c4.lower == 8 && c4.generic_sufficient == 12,
            "complex m=4 bounds off");
  const KnownBounds c5 = known_bounds(5, Field::Complex);
  c.require(c5.lower == 16, "complex m=5 lower bound off");
}

}  // namespace

int main() {
  criterion_1_complement_transition();
  criterion_2_constructive_pairs();
  criterion_3_rank_criterion();
  criterion_4_identity_suite();
  criterion_5_weak_round_trip();
  criterion_6_oracle_agreement();
  criterion_7_projection_stability();
  criterion_8_bounds_table();
  if (g_failures == 0) {
    std::printf("acceptance: all 8 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
