#pragma once

#include <string>

#include <Eigen/Dense>

namespace ddgp {

// Outcome of intersecting K spheres in R^K.
struct TrilaterationResult {
  enum class Kind { NoPosition, TwoPositions, SinglePosition, Degenerate };

  Kind kind = Kind::NoPosition;
  // TwoPositions: y_plus is the root with the larger free coordinate.
  Eigen::VectorXd y_plus;
  Eigen::VectorXd y_minus;
  // SinglePosition.
  Eigen::VectorXd y;
  // Degenerate.
  std::string degenerate_reason;
};

// Finds the points at the given distances from K base points in R^K.
//
// The sphere equations are reduced to a linear system by subtracting the
// equation of the base point with the largest norm; the (K-1) x K system is
// solved by Gaussian elimination with full pivoting, which leaves the best
// conditioned column as the free unknown. Substituting back into the retained
// sphere equation gives a quadratic in the free unknown. Roots are verified
// against all K original equations within tol * max(dist)^2; roots failing
// verification are discarded.
//
// Degenerate is returned when the linear system has rank below K-1 within
// tolerance, i.e. the base points are affinely dependent and the solution set
// is a continuum. A discriminant within tol of zero (relative to the square
// of the normalized constant term) yields SinglePosition.
//
// base: K x K, one base point per row; dist: K positive distances.
TrilaterationResult trilaterate(const Eigen::MatrixXd& base,
                                const Eigen::VectorXd& dist, double tol);

}  // namespace ddgp
