#include "trilateration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ddgp {

namespace {

struct ReducedSystem {
  bool degenerate = false;
  std::string reason;
  Eigen::VectorXd particular;  // solution with the free coordinate set to 0
  Eigen::VectorXd direction;   // null-space vector with free coordinate 1
};

// Solves the (K-1) x K system A y = c by Gaussian elimination with full
// pivoting. The column never chosen as a pivot is the free unknown.
ReducedSystem reduce(Eigen::MatrixXd a, Eigen::VectorXd c, double tol) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());

  std::vector<int> row_perm(static_cast<std::size_t>(rows));
  std::vector<int> col_perm(static_cast<std::size_t>(cols));
  std::iota(row_perm.begin(), row_perm.end(), 0);
  std::iota(col_perm.begin(), col_perm.end(), 0);

  const double scale = rows > 0 ? a.cwiseAbs().maxCoeff() : 0.0;

  for (int step = 0; step < rows; ++step) {
    double best = -1.0;
    int best_r = -1, best_c = -1;
    for (int r = step; r < rows; ++r) {
      for (int ci = step; ci < cols; ++ci) {
        const double v = std::abs(a(row_perm[static_cast<std::size_t>(r)],
                                    col_perm[static_cast<std::size_t>(ci)]));
        if (v > best) {
          best = v;
          best_r = r;
          best_c = ci;
        }
      }
    }
    if (best <= tol * scale || scale == 0.0) {
      ReducedSystem out;
      out.degenerate = true;
      out.reason = "base points affinely dependent: linear system rank " +
                   std::to_string(step) + " < " + std::to_string(rows);
      return out;
    }
    std::swap(row_perm[static_cast<std::size_t>(step)],
              row_perm[static_cast<std::size_t>(best_r)]);
    std::swap(col_perm[static_cast<std::size_t>(step)],
              col_perm[static_cast<std::size_t>(best_c)]);

    const int pr = row_perm[static_cast<std::size_t>(step)];
    const int pc = col_perm[static_cast<std::size_t>(step)];
    for (int r = step + 1; r < rows; ++r) {
      const int rr = row_perm[static_cast<std::size_t>(r)];
      const double f = a(rr, pc) / a(pr, pc);
      for (int ci = step; ci < cols; ++ci) {
        const int cc = col_perm[static_cast<std::size_t>(ci)];
        a(rr, cc) -= f * a(pr, cc);
      }
      c(rr) -= f * c(pr);
    }
  }

  const int free_col = col_perm[static_cast<std::size_t>(cols - 1)];

  auto back_substitute = [&](const Eigen::VectorXd& rhs) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(rows);
    for (int step = rows - 1; step >= 0; --step) {
      const int rr = row_perm[static_cast<std::size_t>(step)];
      double sum = rhs(rr);
      for (int ci = step + 1; ci < rows; ++ci) {
        const int cc = col_perm[static_cast<std::size_t>(ci)];
        sum -= a(rr, cc) * z(ci);
      }
      z(step) = sum / a(rr, col_perm[static_cast<std::size_t>(step)]);
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
    for (int ci = 0; ci < rows; ++ci) {
      y(col_perm[static_cast<std::size_t>(ci)]) = z(ci);
    }
    return y;
  };

  ReducedSystem out;
  out.particular = back_substitute(c);

  Eigen::VectorXd neg_free = Eigen::VectorXd::Zero(rows);
  for (int r = 0; r < rows; ++r) neg_free(r) = -a(r, free_col);
  out.direction = back_substitute(neg_free);
  out.direction(free_col) = 1.0;
  return out;
}

}  // namespace

TrilaterationResult trilaterate(const Eigen::MatrixXd& base,
                                const Eigen::VectorXd& dist, double tol) {
  const int k = static_cast<int>(base.rows());
  if (base.cols() != k) throw std::invalid_argument("base must be K points in R^K");
  if (dist.size() != k) throw std::invalid_argument("need one distance per base point");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  for (int i = 0; i < k; ++i) {
    if (!(dist(i) > 0.0)) throw std::invalid_argument("distances must be positive");
  }

  // Retain the equation of the base point with the largest norm; subtracting
  // it from the others keeps the linear system well scaled.
  int pivot = 0;
  double best_norm = -1.0;
  for (int i = 0; i < k; ++i) {
    const double norm = base.row(i).squaredNorm();
    if (norm > best_norm) {
      best_norm = norm;
      pivot = i;
    }
  }

  Eigen::MatrixXd a(k - 1, k);
  Eigen::VectorXd c(k - 1);
  {
    int row = 0;
    const double pivot_norm = base.row(pivot).squaredNorm();
    const double pivot_d2 = dist(pivot) * dist(pivot);
    for (int i = 0; i < k; ++i) {
      if (i == pivot) continue;
      a.row(row) = 2.0 * (base.row(i) - base.row(pivot));
      c(row) = (base.row(i).squaredNorm() - pivot_norm) -
               (dist(i) * dist(i) - pivot_d2);
      ++row;
    }
  }

  ReducedSystem sys = reduce(std::move(a), std::move(c), tol);
  if (sys.degenerate) {
    TrilaterationResult result;
    result.kind = TrilaterationResult::Kind::Degenerate;
    result.degenerate_reason = sys.reason;
    return result;
  }

  // ||base_pivot - (y0 + t v)||^2 = d_pivot^2, a quadratic in t.
  const Eigen::VectorXd w = base.row(pivot).transpose() - sys.particular;
  const double alpha = sys.direction.squaredNorm();
  const double beta = -2.0 * sys.direction.dot(w);
  const double gamma = w.squaredNorm() - dist(pivot) * dist(pivot);

  const double b = beta / alpha;
  const double c0 = gamma / alpha;
  const double disc = b * b - 4.0 * c0;
  const double disc_scale = c0 * c0;

  const double max_d2 = dist.maxCoeff() * dist.maxCoeff();
  auto verified = [&](const Eigen::VectorXd& y) {
    for (int i = 0; i < k; ++i) {
      const double residual =
          std::abs((base.row(i).transpose() - y).squaredNorm() - dist(i) * dist(i));
      if (residual > tol * max_d2) return false;
    }
    return true;
  };
  auto point_at = [&](double t) {
    return (sys.particular + t * sys.direction).eval();
  };

  TrilaterationResult result;
  if (disc > tol * disc_scale) {
    const double s = std::sqrt(disc);
    const double q = -(b + std::copysign(s, b)) / 2.0;
    double t1 = q;
    double t2 = c0 / q;
    if (t1 < t2) std::swap(t1, t2);  // t1 is the larger free coordinate
    Eigen::VectorXd y1 = point_at(t1);
    Eigen::VectorXd y2 = point_at(t2);
    const bool ok1 = verified(y1);
    const bool ok2 = verified(y2);
    if (ok1 && ok2) {
      result.kind = TrilaterationResult::Kind::TwoPositions;
      result.y_plus = std::move(y1);
      result.y_minus = std::move(y2);
    } else if (ok1 || ok2) {
      result.kind = TrilaterationResult::Kind::SinglePosition;
      result.y = ok1 ? std::move(y1) : std::move(y2);
    } else {
      result.kind = TrilaterationResult::Kind::NoPosition;
    }
  } else if (disc >= -tol * disc_scale) {
    Eigen::VectorXd y = point_at(-b / 2.0);
    if (verified(y)) {
      result.kind = TrilaterationResult::Kind::SinglePosition;
      result.y = std::move(y);
    } else {
      result.kind = TrilaterationResult::Kind::NoPosition;
    }
  } else {
    result.kind = TrilaterationResult::Kind::NoPosition;
  }
  return result;
}

}  // namespace ddgp
