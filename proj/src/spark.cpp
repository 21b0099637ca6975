#include "framescope/spark.hpp"

#include <algorithm>
#include <string>

#include "framescope/rng.hpp"

namespace framescope {

namespace {

// Columns of `frame` selected by `idx`.
Eigen::MatrixXcd submatrix(const Frame& frame, const std::vector<int>& idx) {
  Eigen::MatrixXcd a(frame.dim, static_cast<int>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) a.col(j) = frame.vectors[idx[j]];
  return a;
}

std::vector<int> complement_of(const std::vector<int>& idx, int n) {
  std::vector<int> out;
  out.reserve(n - idx.size());
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    if (k < idx.size() && idx[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

// Enumerates k-subsets of {0..n-1} in lexicographic order.
template <typename Visit>
bool for_each_combination(int n, int k, Visit visit) {
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    if (visit(c)) return true;
    int i = k - 1;
    while (i >= 0 && c[i] == i + n - k) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

int span_rank(const std::vector<Eigen::VectorXcd>& vectors, double rel_tol) {
  if (vectors.empty()) return 0;
  Eigen::MatrixXcd a(vectors.front().size(),
                     static_cast<int>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != a.rows()) {
      throw InputError("span_rank: mixed vector lengths");
    }
    a.col(j) = vectors[j];
  }
  return numerical_rank(a, rel_tol);
}

ComplementReport has_complement_property(const Frame& frame) {
  const int n = frame.n();
  const int m = frame.dim;
  if (n > kMaxExhaustiveN) {
    throw InfeasibleError("exhaustive check infeasible: n = " +
                          std::to_string(n) + " exceeds " +
                          std::to_string(kMaxExhaustiveN));
  }

  // Checking I and its complement in one visit halves the enumeration; the
  // first failure in (size, lexicographic) order is the witness.
  for (int k = 0; k <= n / 2; ++k) {
    std::optional<SubsetWitness> found;
    for_each_combination(n, k, [&](const std::vector<int>& idx) {
      // Fewer than m vectors can never span; skip the decomposition then.
      const bool small_i = k < m;
      int rank_i = -1;
      if (!small_i) {
        rank_i = numerical_rank(submatrix(frame, idx));
        if (rank_i >= m) return false;
      }
      const std::vector<int> comp = complement_of(idx, n);
      const bool small_c = static_cast<int>(comp.size()) < m;
      int rank_c = -1;
      if (!small_c) {
        rank_c = numerical_rank(submatrix(frame, comp));
        if (rank_c >= m) return false;
      }
      SubsetWitness w;
      w.indices = idx;
      w.span_dim_I =
          rank_i >= 0 ? rank_i : numerical_rank(submatrix(frame, idx));
      w.span_dim_Ic =
          rank_c >= 0 ? rank_c : numerical_rank(submatrix(frame, comp));
      found = std::move(w);
      return true;
    });
    if (found) return {false, std::move(found)};
  }
  return {true, std::nullopt};
}

bool is_full_spark(const Frame& frame) {
  const int n = frame.n();
  const int m = frame.dim;
  if (n < m) {
    throw InputError("is_full_spark needs n >= m");
  }
  if (n > kMaxExhaustiveN) {
    throw InfeasibleError("exhaustive check infeasible: n = " +
                          std::to_string(n) + " exceeds " +
                          std::to_string(kMaxExhaustiveN));
  }
  bool deficient = for_each_combination(n, m, [&](const std::vector<int>& idx) {
    return numerical_rank(submatrix(frame, idx)) < m;
  });
  return !deficient;
}

std::optional<SubsetWitness> mc_complement_scan(const Frame& frame,
                                                int samples,
                                                std::uint64_t seed) {
  const int n = frame.n();
  const int m = frame.dim;
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(s));
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (rng.uniform() < 0.5) idx.push_back(i);
    }
    const std::vector<int> comp = complement_of(idx, n);
    const bool small_i = static_cast<int>(idx.size()) < m;
    const bool small_c = static_cast<int>(comp.size()) < m;
    int dim_i = small_i ? -1 : numerical_rank(submatrix(frame, idx));
    if (!small_i && dim_i >= m) continue;
    int dim_c = small_c ? -1 : numerical_rank(submatrix(frame, comp));
    if (!small_c && dim_c >= m) continue;
    SubsetWitness w;
    w.indices = idx;
    w.span_dim_I = dim_i >= 0 ? dim_i : numerical_rank(submatrix(frame, idx));
    w.span_dim_Ic = dim_c >= 0 ? dim_c : numerical_rank(submatrix(frame, comp));
    return w;
  }
  return std::nullopt;
}

}  // namespace framescope
