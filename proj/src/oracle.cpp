#include "framescope/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "framescope/rng.hpp"
#include "framescope/spark.hpp"
#include "framescope/verdicts.hpp"
#include "lm_internal.hpp"

namespace framescope {

namespace {

void check_measurements(const Frame& frame, const Measurements& meas) {
  if (meas.size() != frame.n()) {
    throw InputError("measurement count " + std::to_string(meas.size()) +
                     " does not match frame size " +
                     std::to_string(frame.n()));
  }
  for (int i = 0; i < meas.size(); ++i) {
    if (!(meas(i) > -1e-12)) {
      throw InputError("measurement " + std::to_string(i) +
                       " is negative");
    }
  }
}

// Lexicographic on (re, im) coordinate pairs; exact comparison is fine for
// deterministic ordering.
bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

Eigen::VectorXcd canonical_phase(const Eigen::VectorXcd& z) {
  int pivot = -1;
  double best = 0.0;
  for (int i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > best) {
      best = std::abs(z(i));
      pivot = i;
    }
  }
  if (pivot < 0 || best <= 0.0) return z;
  const Complex phase = z(pivot) / best;
  return z * std::conj(phase);
}

Eigen::VectorXd canonical_sign(const Eigen::VectorXd& x) {
  const double thr = 1e-9 * std::max(1.0, x.cwiseAbs().maxCoeff());
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > thr) return x(i) < 0.0 ? Eigen::VectorXd(-x) : x;
  }
  return x;
}

// Merges phase-equal duplicates, sorts, and packages the result.
RecoveryResult dedup_and_sort(std::vector<Eigen::VectorXcd> cands,
                              const Frame& frame, const Measurements& meas) {
  std::vector<Eigen::VectorXcd> kept;
  for (const auto& c : cands) {
    bool duplicate = false;
    for (const auto& k : kept) {
      if (compare_phases(c, k, tol::dedup).verdict ==
          PhaseVerdict::EqualUpToGlobalPhase) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), lex_less);
  RecoveryResult out;
  for (const auto& k : kept) {
    const Measurements got = measure(frame, k);
    out.candidates.push_back(k);
    out.residuals.push_back((got - meas).squaredNorm());
  }
  return out;
}

}  // namespace

RecoveryResult recover_real(const Frame& frame, const Measurements& meas) {
  if (frame.field != Field::Real) {
    throw InputError("recover_real requires a real-field frame");
  }
  const int m = frame.dim;
  const int n = frame.n();
  if (m > 10) {
    throw InfeasibleError("sign enumeration infeasible: m = " +
                          std::to_string(m) + " exceeds 10");
  }
  check_measurements(frame, meas);
  Measurements clamped = meas.cwiseMax(0.0);

  const Eigen::MatrixXd cols = frame.real_matrix();

  // Greedy pivoted selection of a spanning subset of m vectors.
  std::vector<int> pivots;
  {
    Eigen::MatrixXd resid = cols;
    std::vector<bool> used(n, false);
    double top = 0.0;
    for (int j = 0; j < n; ++j) top = std::max(top, cols.col(j).norm());
    for (int step = 0; step < m; ++step) {
      int pick = -1;
      double best = 0.0;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double norm = resid.col(j).norm();
        if (norm > best) {
          best = norm;
          pick = j;
        }
      }
      if (pick < 0 || best <= tol::rank * std::max(top, 1.0)) break;
      used[pick] = true;
      pivots.push_back(pick);
      const Eigen::VectorXd u = resid.col(pick) / best;
      for (int j = 0; j < n; ++j) {
        if (!used[j]) resid.col(j) -= u * u.dot(resid.col(j));
      }
    }
  }
  if (static_cast<int>(pivots.size()) < m) {
    throw DataError("underdetermined: frame does not span the space");
  }
  std::sort(pivots.begin(), pivots.end());

  Eigen::MatrixXd basis(m, m);
  Eigen::VectorXd mags(m);
  for (int i = 0; i < m; ++i) {
    basis.row(i) = cols.col(pivots[i]).transpose();
    mags(i) = std::sqrt(clamped(pivots[i]));
  }
  const Eigen::MatrixXd solver = basis.inverse();

  const auto misfit = [&](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double d = std::pow(cols.col(j).dot(x), 2) - clamped(j);
      s += d * d;
    }
    return s;
  };

  // Gray-code walk over sign patterns reuses the factorization: exactly one
  // right-hand-side entry flips per step.
  std::vector<Eigen::VectorXcd> accepted;
  std::vector<int> eps(m, 1);
  Eigen::VectorXd x = solver * mags;
  const std::uint64_t total = 1ull << m;
  for (std::uint64_t t = 0; t < total; ++t) {
    if (t > 0) {
      const int b = std::countr_zero(t);
      eps[b] = -eps[b];
      x += 2.0 * eps[b] * mags(b) * solver.col(b);
    }
    if (misfit(x) <= tol::residual) {
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) rhs(i) = eps[i] * mags(i);
      const Eigen::VectorXd clean = solver * rhs;
      if (misfit(clean) <= tol::residual) {
        accepted.push_back(canonical_sign(clean).cast<Complex>());
      }
    }
  }
  if (accepted.empty()) throw DataError("infeasible measurements");
  return dedup_and_sort(std::move(accepted), frame, clamped);
}

RecoveryResult recover_complex(const Frame& frame, const Measurements& meas,
                               int restarts, std::uint64_t seed) {
  if (frame.field != Field::Complex) {
    throw InputError("recover_complex requires a complex-field frame");
  }
  if (restarts < 1) throw InputError("restarts must be >= 1");
  check_measurements(frame, meas);
  const int m = frame.dim;
  const int n = frame.n();
  Measurements clamped = meas.cwiseMax(0.0);

  if (clamped.maxCoeff() <= 1e-12) {
    // Only the zero signal measures to zero under any frame.
    std::vector<Eigen::VectorXcd> zero{Eigen::VectorXcd::Zero(m)};
    return dedup_and_sort(std::move(zero), frame, clamped);
  }

  double frame_energy = 0.0;
  for (const auto& v : frame.vectors) frame_energy += v.squaredNorm();
  const double start_norm =
      frame_energy > 0.0 ? std::sqrt(m * clamped.sum() / frame_energy) : 1.0;

  const auto eval = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r,
                        Eigen::MatrixXd& j) {
    const Eigen::VectorXcd z = unrealify(p);
    r.resize(n);
    j.resize(n, 2 * m);
    for (int i = 0; i < n; ++i) {
      const Complex c = inner(z, frame.vectors[i]);
      r(i) = std::norm(c) - clamped(i);
      for (int k = 0; k < m; ++k) {
        const Complex d = std::conj(c) * std::conj(frame.vectors[i](k));
        j(i, k) = 2.0 * d.real();
        j(i, m + k) = -2.0 * d.imag();
      }
    }
  };

  std::vector<Eigen::VectorXcd> found;
  for (int rs = 0; rs < restarts; ++rs) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(rs));
    Eigen::VectorXcd z0 = rng.cgaussian_vec(m);
    z0 *= start_norm / z0.norm();
    const detail::LmOutcome got =
        detail::lm_minimize(realify(z0), eval, 200, 1e-22);
    if (got.objective < tol::residual) {
      found.push_back(canonical_phase(unrealify(got.params)));
    }
  }
  if (found.empty()) throw DataError("no candidate found");
  return dedup_and_sort(std::move(found), frame, clamped);
}

namespace {

bool pair_is_valid(const Frame& frame, const Eigen::VectorXcd& x,
                   const Eigen::VectorXcd& y) {
  const Measurements mx = measure(frame, x);
  const Measurements my = measure(frame, y);
  double gap = 0.0;
  for (int i = 0; i < mx.size(); ++i) {
    gap = std::max(gap, std::abs(std::sqrt(mx(i)) - std::sqrt(my(i))));
  }
  if (gap >= tol::pair_gap) return false;
  return compare_phases(x, y).verdict != PhaseVerdict::EqualUpToGlobalPhase;
}

// Drives the measurement gap of a nearly-equal pair to machine precision.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> polish_pair(
    const Frame& frame, const Eigen::VectorXcd& x0,
    const Eigen::VectorXcd& y0) {
  const int m = frame.dim;
  const int n = frame.n();
  const auto eval = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r,
                        Eigen::MatrixXd& j) {
    const Eigen::VectorXcd x = unrealify(p.head(2 * m));
    const Eigen::VectorXcd y = unrealify(p.tail(2 * m));
    r.resize(n);
    j.setZero(n, 4 * m);
    for (int i = 0; i < n; ++i) {
      const Complex cx = inner(x, frame.vectors[i]);
      const Complex cy = inner(y, frame.vectors[i]);
      r(i) = std::norm(cx) - std::norm(cy);
      for (int k = 0; k < m; ++k) {
        const Complex dx = std::conj(cx) * std::conj(frame.vectors[i](k));
        const Complex dy = std::conj(cy) * std::conj(frame.vectors[i](k));
        j(i, k) = 2.0 * dx.real();
        j(i, m + k) = -2.0 * dx.imag();
        j(i, 2 * m + k) = -2.0 * dy.real();
        j(i, 3 * m + k) = 2.0 * dy.imag();
      }
    }
  };
  Eigen::VectorXd p(4 * m);
  p.head(2 * m) = realify(x0);
  p.tail(2 * m) = realify(y0);
  const detail::LmOutcome got = detail::lm_minimize(p, eval, 150, 1e-26);
  return {unrealify(Eigen::VectorXd(got.params.head(2 * m))),
          unrealify(Eigen::VectorXd(got.params.tail(2 * m)))};
}

}  // namespace

std::optional<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>
find_measurement_equal_pair(const Frame& frame, int restarts,
                            std::uint64_t seed) {
  if (restarts < 1) throw InputError("restarts must be >= 1");
  const int m = frame.dim;

  if (frame.field == Field::Real) {
    if (frame.n() <= kMaxExhaustiveN) {
      const ComplementReport cp = has_complement_property(frame);
      if (cp.holds) return std::nullopt;  // exact: no such pair exists
      const auto pair = counterexample_pair(frame, *cp.witness);
      if (pair_is_valid(frame, pair.first, pair.second)) return pair;
    }
    // Invert random measurements and look for a second phase class.
    const int tries = std::min(restarts, 16);
    for (int t = 0; t < tries; ++t) {
      Rng rng = Rng::derived(seed, 1000 + static_cast<std::uint64_t>(t));
      const Eigen::VectorXd x = rng.gaussian_vec(m);
      const Eigen::VectorXcd xc = x.cast<Complex>();
      RecoveryResult rec;
      try {
        rec = recover_real(frame, measure(frame, x));
      } catch (const DataError&) {
        continue;
      } catch (const InfeasibleError&) {
        return std::nullopt;
      }
      for (const auto& cand : rec.candidates) {
        if (compare_phases(xc, cand).verdict !=
                PhaseVerdict::EqualUpToGlobalPhase &&
            pair_is_valid(frame, xc, cand)) {
          return std::make_pair(xc, cand);
        }
      }
    }
    return std::nullopt;
  }

  // Complex: a deficient direction yields the pair directly.  Stack the
  // S(u) rows with realify(iu); any unit null vector v gives (u+v, u-v)
  // measurement-equal to first order, then the pair is polished exactly.
  if (const auto hit = complex_falsifier(frame, restarts, seed)) {
    const Eigen::VectorXcd& u = hit->u;
    const Eigen::MatrixXd rows = s_u_matrix(frame, u);
    Eigen::MatrixXd stacked(rows.rows() + 1, 2 * m);
    stacked.topRows(rows.rows()) = rows;
    stacked.bottomRows(1) =
        realify(Eigen::VectorXcd(Complex(0, 1) * u)).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    const Eigen::VectorXcd v = unrealify(svd.matrixV().col(2 * m - 1));
    auto [x, y] = polish_pair(frame, u + v, u - v);
    if (pair_is_valid(frame, x, y)) return std::make_pair(x, y);
  }

  // Fall back to inverting random measurements.
  const int tries = std::max(1, restarts / 20);
  for (int t = 0; t < tries; ++t) {
    Rng rng = Rng::derived(seed, 5000 + static_cast<std::uint64_t>(t));
    const Eigen::VectorXcd x = rng.cgaussian_vec(m);
    const Measurements meas = measure(frame, x);
    RecoveryResult rec;
    try {
      rec = recover_complex(frame, meas, 20, rng.next_u64());
    } catch (const DataError&) {
      continue;
    }
    for (const auto& cand : rec.candidates) {
      if (compare_phases(x, cand).verdict ==
          PhaseVerdict::EqualUpToGlobalPhase) {
        continue;
      }
      auto [px, py] = polish_pair(frame, x, cand);
      if (pair_is_valid(frame, px, py)) return std::make_pair(px, py);
    }
  }
  return std::nullopt;
}

}  // namespace framescope
