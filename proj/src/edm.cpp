#include "edm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ddgp {

namespace {

bool structurally_valid(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) return false;
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (std::abs(d(i, i)) > 1e-12 * scale) return false;
    for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
      if (!std::isfinite(d(i, j))) return false;
      if (std::abs(d(i, j) - d(j, i)) > 1e-12 * scale) return false;
      if (d(i, j) < -1e-12 * scale) return false;
    }
  }
  return true;
}

// Flip the eigenvector so its first significant component is positive.
void fix_sign(Eigen::VectorXd& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!fn(idx)) return;
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
}

}  // namespace

SquaredEdm edm_from_realization(const Realization& x) {
  const Eigen::Index n = x.points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double sq = (x.points.row(i) - x.points.row(j)).squaredNorm();
      d(i, j) = sq;
      d(j, i) = sq;
    }
  }
  return {std::move(d)};
}

GramMatrix gram_from_edm(const SquaredEdm& d) {
  const Eigen::Index n = d.m.rows();
  if (d.m.cols() != n) throw std::invalid_argument("EDM must be square");
  const Eigen::MatrixXd j =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return {(-0.5 * j * d.m * j).eval()};
}

SquaredEdm edm_from_gram(const GramMatrix& g) {
  const Eigen::Index n = g.m.rows();
  if (g.m.cols() != n) throw std::invalid_argument("Gram matrix must be square");
  const Eigen::VectorXd diag = g.m.diagonal();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  return {(diag * ones.transpose() - 2.0 * g.m + ones * diag.transpose()).eval()};
}

RealizeResult realize_from_gram(const GramMatrix& g, int dimension, double tol) {
  const Eigen::Index n = g.m.rows();
  if (g.m.cols() != n) throw std::invalid_argument("Gram matrix must be square");
  if (dimension < 1) throw std::invalid_argument("dimension must be at least 1");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const double scale = values.cwiseAbs().maxCoeff();

  RealizeResult result;
  result.realization.points = Eigen::MatrixXd::Zero(n, dimension);
  if (scale == 0.0) return result;  // zero Gram: all points at the origin

  int significant = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values[i] < -tol * scale) {
      result.error = RealizeError::NotPsd;
      return result;
    }
    if (values[i] > tol * scale) ++significant;
  }
  if (significant > dimension) {
    result.error = RealizeError::RankTooHigh;
    return result;
  }

  // Largest eigenvalues first; Eigen returns them in ascending order.
  const int cols = static_cast<int>(std::min<Eigen::Index>(dimension, n));
  for (int c = 0; c < cols; ++c) {
    const Eigen::Index src = n - 1 - c;
    const double lambda = std::max(values[src], 0.0);
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    fix_sign(v);
    result.realization.points.col(c) = std::sqrt(lambda) * v;
  }
  return result;
}

bool is_valid_edm(const SquaredEdm& d, int dimension, double tol) {
  if (!structurally_valid(d.m)) return false;
  const GramMatrix g = gram_from_edm(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.m);
  if (solver.info() != Eigen::Success) return false;
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double scale = values.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  int significant = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < -tol * scale) return false;
    if (values[i] > tol * scale) ++significant;
  }
  return significant <= dimension;
}

int affine_rank(const Eigen::MatrixXd& points, double tol) {
  const Eigen::Index m = points.rows();
  if (m == 0) throw std::invalid_argument("point list must not be empty");
  if (m == 1) return 0;
  Eigen::MatrixXd diffs(m - 1, points.cols());
  for (Eigen::Index i = 1; i < m; ++i) {
    diffs.row(i - 1) = points.row(i) - points.row(0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  const double top = sigma[0];
  if (top == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > tol * top) ++rank;
  }
  return rank;
}

bool general_position(const Eigen::MatrixXd& points, int dimension, double tol) {
  const int m = static_cast<int>(points.rows());
  if (m == 0) throw std::invalid_argument("point list must not be empty");

  auto subset_independent = [&](const std::vector<int>& idx) {
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(idx.size()), points.cols());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      sub.row(static_cast<Eigen::Index>(r)) = points.row(idx[r]);
    }
    return affine_rank(sub, tol) == static_cast<int>(idx.size()) - 1;
  };

  if (m <= dimension + 1) {
    for (int size = 2; size <= m; ++size) {
      bool ok = true;
      for_each_subset(m, size, [&](const std::vector<int>& idx) {
        if (!subset_independent(idx)) {
          ok = false;
          return false;
        }
        return true;
      });
      if (!ok) return false;
    }
    return true;
  }

  if (affine_rank(points, tol) != dimension) return false;
  bool ok = true;
  for_each_subset(m, dimension + 1, [&](const std::vector<int>& idx) {
    if (!subset_independent(idx)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

}  // namespace ddgp
