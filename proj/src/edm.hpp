#pragma once

#include <Eigen/Dense>

namespace ddgp {

// Relative tolerance used for every rank/psd decision unless the caller
// supplies one: thresholds are tol times the largest absolute eigenvalue or
// singular value of the matrix at hand.
inline constexpr double kDefaultTol = 1e-9;

// An n x K matrix of point coordinates, one row per vertex.
struct Realization {
  Eigen::MatrixXd points;
};

// Symmetric, zero-diagonal matrix of squared pairwise distances.
struct SquaredEdm {
  Eigen::MatrixXd m;
};

// Symmetric matrix of inner products of the (centered) realization rows.
struct GramMatrix {
  Eigen::MatrixXd m;
};

SquaredEdm edm_from_realization(const Realization& x);

// G = -1/2 J D J with J = I - (1/n) 1 1^T.
GramMatrix gram_from_edm(const SquaredEdm& d);

// D = diag(G) 1^T - 2 G + 1 diag(G)^T.
SquaredEdm edm_from_gram(const GramMatrix& g);

enum class RealizeError { None, NotPsd, RankTooHigh };

struct RealizeResult {
  RealizeError error = RealizeError::None;
  Realization realization;
};

// Spectral factorization y = P^T sqrt(Lambda) truncated to the K largest
// eigenvalues. Eigenvalues below -tol*scale fail as NotPsd; more than K
// eigenvalues above tol*scale fail as RankTooHigh (scale = largest absolute
// eigenvalue). Eigenvector signs are fixed so the first significant component
// is positive, which makes the output deterministic.
RealizeResult realize_from_gram(const GramMatrix& g, int dimension,
                                double tol = kDefaultTol);

// True iff the centered Gram matrix of d is positive semidefinite within tol
// and has at most `dimension` significant positive eigenvalues. Structurally
// invalid input (asymmetric, nonzero diagonal, negative entries) is reported
// as not a valid EDM.
bool is_valid_edm(const SquaredEdm& d, int dimension, double tol = kDefaultTol);

// Rank of the matrix of differences to the first point; singular values below
// tol times the largest are treated as zero.
int affine_rank(const Eigen::MatrixXd& points, double tol = kDefaultTol);

// Every subset of size h+1 <= dimension+1 must span an affine subspace of
// dimension h. Checked exhaustively for short lists; longer lists are checked
// via the full-list rank plus all (dimension+1)-subsets.
bool general_position(const Eigen::MatrixXd& points, int dimension,
                      double tol = kDefaultTol);

}  // namespace ddgp
