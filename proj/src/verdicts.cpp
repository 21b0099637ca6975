#include "framescope/verdicts.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "framescope/parallel.hpp"
#include "framescope/rng.hpp"
#include "framescope/weak.hpp"

namespace framescope {

namespace {

// Least right singular vector of the stacked orthogonality constraints
// rows = phi_i^* for i in idx.  Empty constraint set: e_1 by convention.
Eigen::VectorXcd least_constrained_vector(const Frame& frame,
                                          const std::vector<int>& idx) {
  const int m = frame.dim;
  if (idx.empty()) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
    e(0) = 1.0;
    return e;
  }
  if (frame.field == Field::Real) {
    Eigen::MatrixXd a(static_cast<int>(idx.size()), m);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      a.row(r) = frame.vectors[idx[r]].real().transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    return svd.matrixV().col(m - 1).cast<Complex>();
  }
  Eigen::MatrixXcd a(static_cast<int>(idx.size()), m);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    a.row(r) = frame.vectors[idx[r]].adjoint();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(m - 1);
}

// Re-picks x inside the constraint null space but orthogonal to y; used when
// the default singular vector happens to align with y.
std::optional<Eigen::VectorXcd> orthogonal_null_vector(
    const Frame& frame, const std::vector<int>& idx,
    const Eigen::VectorXcd& y) {
  const int m = frame.dim;
  const int rows = static_cast<int>(idx.size()) + 1;
  Eigen::MatrixXcd a(rows, m);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    a.row(r) = frame.vectors[idx[r]].adjoint();
  }
  a.row(rows - 1) = y.adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  Eigen::VectorXcd x = svd.matrixV().col(m - 1);
  double defect = std::abs(inner(x, y));
  for (int r = 0; r < static_cast<int>(idx.size()); ++r) {
    defect = std::max(defect, std::abs(inner(x, frame.vectors[idx[r]])));
  }
  if (defect > 1e-8) return std::nullopt;
  return x;
}

}  // namespace

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> counterexample_pair(
    const Frame& frame, const SubsetWitness& witness) {
  const int n = frame.n();
  const int m = frame.dim;
  std::vector<int> idx = witness.indices;
  std::sort(idx.begin(), idx.end());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= n || (i > 0 && idx[i] == idx[i - 1])) {
      throw std::logic_error("counterexample_pair: malformed witness indices");
    }
  }
  std::vector<int> comp;
  comp.reserve(n - idx.size());
  {
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      if (k < idx.size() && idx[k] == i) {
        ++k;
      } else {
        comp.push_back(i);
      }
    }
  }
  std::vector<Eigen::VectorXcd> side_i, side_c;
  for (int i : idx) side_i.push_back(frame.vectors[i]);
  for (int i : comp) side_c.push_back(frame.vectors[i]);
  if (span_rank(side_i) >= m || span_rank(side_c) >= m) {
    throw std::logic_error(
        "counterexample_pair: witness subset does not violate the "
        "complement property");
  }

  Eigen::VectorXcd x = least_constrained_vector(frame, idx);
  const Eigen::VectorXcd y = least_constrained_vector(frame, comp);
  if (std::abs(inner(x, y)) > 1.0 - 1e-12) {
    // Degenerate tie; look for an independent direction in the null space.
    if (auto alt = orthogonal_null_vector(frame, idx, y)) x = *alt;
  }
  return {x + y, x - y};
}

RetrievalVerdict real_verdict(const Frame& frame, int weak_trials,
                              std::uint64_t seed) {
  if (frame.field != Field::Real) {
    throw InputError("real_verdict requires a real-field frame");
  }
  const ComplementReport cp = has_complement_property(frame);
  if (cp.holds) {
    return {RetrievalProperty::PhaselessReconstruction, std::nullopt,
            "complement property verified by exhaustive subset enumeration"};
  }
  const auto pair = counterexample_pair(frame, *cp.witness);
  Certificate cert = MeasurementEqualPair{pair.first, pair.second};
  const PhaseRelation rel = compare_phases(pair.first, pair.second);
  if (rel.verdict == PhaseVerdict::Distinct) {
    return {RetrievalProperty::None, cert,
            "complement property fails and the witness pair is not even "
            "weakly phase-equal"};
  }
  const WeakVerdict wv = weak_verdict(frame, weak_trials, seed);
  if (wv.holds) {
    return {RetrievalProperty::WeakPhaseRetrieval, cert,
            "complement property fails; no weak violation in " +
                std::to_string(weak_trials) +
                " random inversions (Monte-Carlo evidence)"};
  }
  if (wv.counterexample) {
    cert = MeasurementEqualPair{
        wv.counterexample->first.cast<Complex>(),
        wv.counterexample->second.cast<Complex>()};
  }
  return {RetrievalProperty::None, cert,
          "measurement-equal pair with conflicting coordinate signs"};
}

Eigen::MatrixXd s_u_matrix(const Frame& frame, const Eigen::VectorXcd& u) {
  if (frame.field != Field::Complex) {
    throw InputError("s_u_matrix requires a complex-field frame");
  }
  if (u.size() != frame.dim) {
    throw InputError("s_u_matrix: direction has wrong dimension");
  }
  if (u.norm() == 0.0) {
    throw InputError("s_u_matrix: direction must be nonzero");
  }
  Eigen::MatrixXd a(frame.n(), 2 * frame.dim);
  for (int i = 0; i < frame.n(); ++i) {
    const Complex c = inner(u, frame.vectors[i]);
    a.row(i) = realify(Eigen::VectorXcd(c * frame.vectors[i])).transpose();
  }
  return a;
}

int s_u_dimension(const Frame& frame, const Eigen::VectorXcd& u) {
  return numerical_rank(s_u_matrix(frame, u));
}

InjectivityReport complex_injectivity_check(const Frame& frame, int trials,
                                            std::uint64_t seed) {
  if (frame.field != Field::Complex) {
    throw InputError("complex_injectivity_check requires a complex frame");
  }
  if (trials < 1) throw InputError("trials must be >= 1");
  const int required = 2 * frame.dim - 1;

  std::vector<int> dims(trials, 0);
  std::vector<Eigen::VectorXcd> directions(trials);
  parallel_for(trials, [&](int t) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
    directions[t] = rng.unit_complex(frame.dim);
    dims[t] = s_u_dimension(frame, directions[t]);
  });

  InjectivityReport rep;
  rep.trials = trials;
  rep.required_dim = required;
  rep.min_dim = dims[0];
  rep.max_dim = dims[0];
  rep.worst_u = directions[0];
  for (int t = 0; t < trials; ++t) {
    if (dims[t] > required) {
      // Rows are orthogonal to realify(iu), so the rank cannot exceed 2M-1.
      throw std::logic_error("s_u rank exceeded its ceiling");
    }
    if (dims[t] < rep.min_dim) {
      rep.min_dim = dims[t];
      rep.worst_u = directions[t];
    }
    rep.max_dim = std::max(rep.max_dim, dims[t]);
  }
  rep.no_violation = rep.min_dim >= required;
  return rep;
}

namespace {

// Objective sigma_{2M-1}(S(u)) as a function of the realified direction,
// with its gradient from the singular vectors.  The matrix is linear in the
// realified coordinates, so dsigma/dp_j = w^T (dA/dp_j) v.
class FalsifierObjective {
 public:
  explicit FalsifierObjective(const Frame& frame)
      : frame_(frame), m_(frame.dim), n_(frame.n()), k_(2 * frame.dim - 2) {
    deriv_.reserve(2 * m_);
    for (int j = 0; j < 2 * m_; ++j) {
      Eigen::MatrixXd d(n_, 2 * m_);
      for (int i = 0; i < n_; ++i) {
        const Complex factor = j < m_
                                   ? std::conj(frame.vectors[i](j))
                                   : Complex(0, 1) *
                                         std::conj(frame.vectors[i](j - m_));
        d.row(i) =
            realify(Eigen::VectorXcd(factor * frame.vectors[i])).transpose();
      }
      deriv_.push_back(std::move(d));
    }
  }

  bool trivially_deficient() const { return n_ < 2 * m_ - 1; }

  double value(const Eigen::VectorXd& p) const {
    const Eigen::MatrixXd a = s_u_matrix(frame_, unrealify(p));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues()(k_);
  }

  double value_and_gradient(const Eigen::VectorXd& p,
                            Eigen::VectorXd& grad) const {
    const Eigen::MatrixXd a = s_u_matrix(frame_, unrealify(p));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double f = svd.singularValues()(k_);
    const Eigen::VectorXd w = svd.matrixU().col(k_);
    const Eigen::VectorXd v = svd.matrixV().col(k_);
    grad.resize(2 * m_);
    for (int j = 0; j < 2 * m_; ++j) grad(j) = w.dot(deriv_[j] * v);
    return f;
  }

 private:
  const Frame& frame_;
  int m_, n_, k_;
  std::vector<Eigen::MatrixXd> deriv_;
};

// Projected-gradient descent on the unit sphere with Armijo backtracking.
double sphere_descent(const FalsifierObjective& obj, Eigen::VectorXd& p,
                      int max_iters, double stop_value) {
  double f = obj.value(p);
  double step = 0.5;
  Eigen::VectorXd grad;
  for (int it = 0; it < max_iters && f > stop_value; ++it) {
    f = obj.value_and_gradient(p, grad);
    if (f <= stop_value) break;
    Eigen::VectorXd tangent = grad - grad.dot(p) * p;
    const double gnorm = tangent.squaredNorm();
    if (gnorm < 1e-24) break;
    double alpha = step;
    bool moved = false;
    while (alpha > 1e-14) {
      Eigen::VectorXd q = (p - alpha * tangent).normalized();
      const double fq = obj.value(q);
      if (fq <= f - 1e-4 * alpha * gnorm) {
        p = q;
        f = fq;
        step = std::min(alpha * 1.5, 4.0);
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return f;
}

}  // namespace

std::optional<FalsifierHit> complex_falsifier(const Frame& frame, int restarts,
                                              std::uint64_t seed) {
  if (frame.field != Field::Complex) {
    throw InputError("complex_falsifier requires a complex frame");
  }
  if (restarts < 1) throw InputError("restarts must be >= 1");
  const int m = frame.dim;
  const FalsifierObjective obj(frame);

  if (obj.trivially_deficient()) {
    // Fewer than 2M-1 rows: every direction is deficient.
    Rng rng = Rng::derived(seed, 0);
    return FalsifierHit{rng.unit_complex(m), 0.0};
  }

  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_p;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(r));
    Eigen::VectorXd p = realify(rng.unit_complex(m));
    double f = sphere_descent(obj, p, 400, 1e-9);
    // Multiplicative perturbation rounds around a stalled point.
    for (int kick = 0; kick < 3 && f > 1e-9; ++kick) {
      Eigen::VectorXd q = p;
      for (int i = 0; i < q.size(); ++i) {
        q(i) *= 1.0 + 0.02 * rng.gaussian();
        q(i) += 0.002 * rng.gaussian();
      }
      q.normalize();
      const double fq = sphere_descent(obj, q, 200, 1e-9);
      if (fq < f) {
        f = fq;
        p = q;
      }
    }
    if (f < best_f) {
      best_f = f;
      best_p = p;
    }
    if (best_f < tol::falsifier) break;
  }
  if (best_f < tol::falsifier) {
    return FalsifierHit{unrealify(best_p), best_f};
  }
  return std::nullopt;
}

double lemma_orthogonality_check(const Frame& frame,
                                 const Eigen::VectorXcd& u) {
  if (frame.field != Field::Complex) {
    throw InputError("lemma_orthogonality_check requires a complex frame");
  }
  if (u.size() != frame.dim) {
    throw InputError("lemma_orthogonality_check: wrong direction dimension");
  }
  double worst = 0.0;
  for (int i = 0; i < frame.n(); ++i) {
    const Complex c = inner(u, frame.vectors[i]);
    const Eigen::VectorXcd v = c * frame.vectors[i];
    // <v, iu>_R = Im <v, u>
    worst = std::max(worst, std::abs(std::imag(inner(v, u))));
  }
  return worst;
}

double polarization_check(const Frame& frame, const Eigen::VectorXcd& u,
                          const Eigen::VectorXcd& v) {
  if (frame.field != Field::Complex) {
    throw InputError("polarization_check requires a complex frame");
  }
  if (u.size() != frame.dim || v.size() != frame.dim) {
    throw InputError("polarization_check: wrong signal dimension");
  }
  const Eigen::VectorXcd sum = u + v;
  const Eigen::VectorXcd diff = u - v;
  double worst = 0.0;
  for (int i = 0; i < frame.n(); ++i) {
    const auto& phi = frame.vectors[i];
    const double lhs1 = std::norm(inner(sum, phi));
    const double lhs2 = std::norm(inner(diff, phi));
    const double rhs =
        4.0 * std::real(inner(u, phi) * std::conj(inner(v, phi)));
    const double scale =
        std::max({1.0, lhs1, lhs2, std::abs(rhs)});
    worst = std::max(worst, std::abs((lhs1 - lhs2) - rhs) / scale);
  }
  return worst;
}

double tan_theta(Complex a, Complex b, double tol) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma == 0.0 && mb == 0.0) {
    throw InputError("tan_theta needs a nonzero scalar pair");
  }
  if (std::abs(ma - mb) <= tol * std::max(ma, mb)) {
    return M_PI / 2.0;
  }
  return std::atan2(2.0 * std::imag(std::conj(a) * b), ma * ma - mb * mb);
}

KnownBounds known_bounds(int m, Field field) {
  if (m < 1) throw InputError("known_bounds needs m >= 1");
  if (field == Field::Real) {
    return {2 * m - 1, 2 * m - 1,
            "generic frames of 2m-1 vectors suffice; no frame of 2m-2 "
            "vectors works"};
  }
  if (m == 1) {
    return {1, 1, "a single nonzero functional recovers |x| in one complex "
                  "dimension"};
  }
  const int alpha = std::popcount(static_cast<unsigned>(m - 1));
  const bool power_of_two_plus_one = alpha == 1;
  KnownBounds kb;
  kb.generic_sufficient = 4 * m - 4;
  if (power_of_two_plus_one) {
    kb.lower = 4 * m - 4;
    kb.note =
        "for m = 2^k + 1 no frame of fewer than 4m-4 vectors works; "
        "generic frames of 4m-4 vectors suffice";
  } else {
    kb.lower = 4 * m - 4 - 2 * alpha;
    kb.note =
        "lower bound 4m-4-2a with a the ones in the binary expansion of "
        "m-1; generic frames of 4m-4 vectors suffice; the 4m-4 count is "
        "not tight for every m (11 vectors suffice in C^4)";
  }
  return kb;
}

}  // namespace framescope
