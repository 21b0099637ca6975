#include "framescope/weak.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framescope/oracle.hpp"
#include "framescope/rng.hpp"
#include "framescope/spark.hpp"

namespace framescope {

namespace {

int sign_of(double x, double tol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

void check_products(const ProductRelations& p, double tol) {
  if (p.dim < 1 || p.products.rows() != p.dim || p.products.cols() != p.dim) {
    throw InputError("product matrix shape does not match dim");
  }
  for (int i = 0; i < p.dim; ++i) {
    for (int j = i + 1; j < p.dim; ++j) {
      if (std::abs(p.products(i, j) - p.products(j, i)) > tol) {
        throw DataError("product matrix is not symmetric");
      }
    }
  }
}

}  // namespace

Frame weak_pr_frame(int m) {
  if (m < 2) throw InputError("weak_pr_frame needs m >= 2");
  std::vector<Eigen::VectorXd> vectors;
  vectors.reserve(m + 1);
  vectors.push_back(Eigen::VectorXd::Ones(m));
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
    v(i) = -1.0;
    vectors.push_back(v);
  }
  return make_real_frame(m, vectors);
}

ProductRelations extract_products(const Eigen::VectorXd& x) {
  const int m = static_cast<int>(x.size());
  if (m < 1) throw InputError("extract_products needs a nonempty vector");
  ProductRelations p;
  p.dim = m;
  p.products = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j) p.products(i, j) = x(i) * x(j);
    }
  }
  return p;
}

SignPattern recover_signs(const ProductRelations& p, double tol) {
  check_products(p, tol);
  const int m = p.dim;

  // Realizable products have a positive product around every nonzero triple.
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        const double a = p.products(i, j);
        const double b = p.products(i, k);
        const double c = p.products(j, k);
        if (std::abs(a) > tol && std::abs(b) > tol && std::abs(c) > tol &&
            a * b * c < -tol * tol * tol) {
          throw DataError("inconsistent products: negative triple at (" +
                          std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ")");
        }
      }
    }
  }

  SignPattern out;
  out.signs = Eigen::VectorXi::Zero(m);
  int anchor = -1;
  for (int i = 0; i < m && anchor < 0; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && std::abs(p.products(i, j)) > tol) {
        anchor = i;
        break;
      }
    }
  }
  if (anchor < 0) return out;  // no product information at all

  out.signs(anchor) = 1;
  for (int k = 0; k < m; ++k) {
    if (k == anchor) continue;
    bool in_support = false;
    for (int j = 0; j < m; ++j) {
      if (j != k && std::abs(p.products(k, j)) > tol) {
        in_support = true;
        break;
      }
    }
    if (!in_support) continue;
    const int s = sign_of(p.products(anchor, k), tol);
    if (s == 0) {
      throw DataError(
          "inconsistent products: supported index " + std::to_string(k) +
          " has no product with the anchor index");
    }
    out.signs(k) = s;
  }
  return out;
}

std::vector<std::optional<double>> recover_magnitudes(
    const ProductRelations& p, double tol) {
  check_products(p, tol);
  const int m = p.dim;
  std::vector<std::optional<double>> out(m);
  for (int i = 0; i < m; ++i) {
    std::optional<double> value;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < m; ++k) {
        if (k == i) continue;
        const double pij = p.products(i, j);
        const double pik = p.products(i, k);
        const double pjk = p.products(j, k);
        if (std::abs(pij) <= tol || std::abs(pik) <= tol ||
            std::abs(pjk) <= tol) {
          continue;
        }
        const double r2 = pij * pik / pjk;
        if (r2 <= 0.0) {
          throw DataError("inconsistent products: negative radicand for |a_" +
                          std::to_string(i) + "|");
        }
        const double mag = std::sqrt(r2);
        if (!value) {
          value = mag;
        } else if (std::abs(mag - *value) > 1e-8 * std::max(1.0, *value)) {
          throw DataError("inconsistent products: magnitude estimates for "
                          "|a_" + std::to_string(i) + "| disagree");
        }
      }
    }
    out[i] = value;
  }
  return out;
}

WeakPairReport classify_pair(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y, double tol) {
  if (x.size() != y.size()) {
    throw InputError("classify_pair needs equal dimensions");
  }
  const int m = static_cast<int>(x.size());
  const ProductRelations px = extract_products(x);
  const ProductRelations py = extract_products(y);
  const double mismatch =
      (px.products - py.products).cwiseAbs().maxCoeff();
  if (mismatch > tol) {
    throw InputError("classify_pair precondition: pairwise products differ "
                     "by " + std::to_string(mismatch));
  }

  WeakPairReport rep;
  std::vector<bool> sx(m), sy(m);
  int nx = 0, ny = 0;
  for (int i = 0; i < m; ++i) {
    sx[i] = std::abs(x(i)) > tol;
    sy[i] = std::abs(y(i)) > tol;
    nx += sx[i];
    ny += sy[i];
  }

  // Singleton families: one side vanishes at i, the other lives only on i.
  for (int i = 0; i < m; ++i) {
    if (!sx[i] && ny - (sy[i] ? 1 : 0) == 0) {
      rep.x_vanishes_y_singleton = true;
      rep.x_case_index = i;
      break;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (!sy[i] && nx - (sx[i] ? 1 : 0) == 0) {
      rep.y_vanishes_x_singleton = true;
      rep.y_case_index = i;
      break;
    }
  }
  rep.common_support_case =
      !rep.x_vanishes_y_singleton && !rep.y_vanishes_x_singleton;

  for (int i = 0; i < m; ++i) {
    if (sx[i] && sy[i]) rep.common_support.push_back(i);
  }
  rep.off_support_zero = true;
  for (int i = 0; i < m; ++i) {
    const bool common = sx[i] && sy[i];
    if (!common && (sx[i] || sy[i])) rep.off_support_zero = false;
  }

  int theta = 0;
  for (int i : rep.common_support) {
    const int s = sign_of(x(i), tol) * sign_of(y(i), tol);
    if (theta == 0) {
      theta = s;
    } else if (s != theta) {
      throw DataError("sign relation conflict on product-equal pair");
    }
  }
  rep.sign_theta = theta == 0 ? +1 : theta;

  rep.magnitudes_forced = rep.common_support.size() >= 3;
  rep.magnitudes_equal = true;
  for (int i : rep.common_support) {
    if (std::abs(std::abs(x(i)) - std::abs(y(i))) >
        1e-8 * std::max(1.0, std::abs(x(i)))) {
      rep.magnitudes_equal = false;
    }
  }
  return rep;
}

WeakVerdict weak_verdict(const Frame& frame, int trials, std::uint64_t seed) {
  if (frame.field != Field::Real) {
    throw InputError("weak_verdict requires a real-field frame");
  }
  if (trials < 1) throw InputError("trials must be >= 1");
  const int m = frame.dim;
  WeakVerdict out;
  out.trials = trials;

  std::vector<Eigen::VectorXcd> vecs(frame.vectors.begin(),
                                     frame.vectors.end());
  const bool spanning = span_rank(vecs) >= m;

  if (!spanning) {
    // A direction invisible to every vector: reflecting across it preserves
    // all measurements, and generic signals change sign pattern under it.
    Eigen::MatrixXd a(frame.n(), m);
    for (int i = 0; i < frame.n(); ++i) {
      a.row(i) = frame.vectors[i].real().transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd z = svd.matrixV().col(m - 1);
    for (int t = 0; t < trials; ++t) {
      Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
      const Eigen::VectorXd x = rng.gaussian_vec(m);
      const Eigen::VectorXd y = x - 2.0 * x.dot(z) * z;
      const PhaseRelation rel =
          compare_phases(x.cast<Complex>(), y.cast<Complex>());
      if (rel.verdict == PhaseVerdict::Distinct) {
        out.holds = false;
        out.counterexample = std::make_pair(x, y);
        return out;
      }
    }
    out.holds = true;
    return out;
  }

  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t));
    const Eigen::VectorXd x = rng.gaussian_vec(m);
    const Measurements meas = measure(frame, x);
    const RecoveryResult rec = recover_real(frame, meas);
    for (const auto& cand : rec.candidates) {
      const Eigen::VectorXd y = cand.real();
      const PhaseRelation rel =
          compare_phases(x.cast<Complex>(), cand);
      if (rel.verdict == PhaseVerdict::Distinct) {
        out.holds = false;
        out.counterexample = std::make_pair(x, y);
        return out;
      }
      if (!out.product_mismatch) {
        const double gap = (extract_products(x).products -
                            extract_products(y).products)
                               .cwiseAbs()
                               .maxCoeff();
        const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
        if (gap > tol::product * scale * scale) {
          out.product_mismatch = std::make_pair(x, y);
        }
      }
    }
  }
  out.holds = true;
  return out;
}

}  // namespace framescope
