#ifndef TIPI_ANALYSIS_PCA_HPP
#define TIPI_ANALYSIS_PCA_HPP

#include "tipi/common.hpp"

namespace tipi::analysis {

// Eigendecomposition of the covariance of a samples x channels chunk:
// eigenvalues sorted descending, ties broken by original index so results
// are reproducible.
struct Pca {
  VectorXd eigenvalues;  // descending
  MatrixXd components;   // columns are principal directions
};
Pca pca(const MatrixXd& chunk);

// Number of principal components needed to capture `ratio` of the chunk's
// variance, linearly interpolated between the discrete counts: with
// cumulative ratios r_k (r_0 = 0) and k the smallest index with r_k >= ratio,
// returns (k-1) + (ratio - r_{k-1}) / (r_k - r_{k-1}).
// A chunk with zero total variance has dimension 0 by convention.
double effective_dimension(const MatrixXd& chunk, double ratio = 0.95);

// Dissimilarity of the subspaces spanned by the first n_components principal
// directions of two chunks. With overlap matrix M_ij = |<p_i^A, p_j^B>|, the
// per-component matches are the row maxima of M for A and the column maxima
// for B; similarity = (||rowmax|| + ||colmax||) / (2 sqrt(n_components)),
// distance = 1 - similarity. Averaging the two directions keeps the distance
// exactly symmetric. Components past a chunk's numerical rank count as
// maximally dissimilar (match 0).
double chunk_overlap(const MatrixXd& chunk_a, const MatrixXd& chunk_b,
                     int n_components = 6);

} // namespace tipi::analysis

#endif
