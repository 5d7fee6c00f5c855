#ifndef TDA_PCA_HPP
#define TDA_PCA_HPP

#include <vector>

#include "tda/embedding.hpp"

namespace tda {

/// Output of projecting a cloud onto its top-l principal directions.
///
/// `eigenvalues` holds the full descending spectrum of the (uncentered by
/// default) second-moment matrix X^T X / n, with entries within 1e-12 of zero
/// clamped to exactly zero. `projected` holds the coordinates of each point in
/// the top-l eigenvector basis; pairwise distances of the projected points
/// equal the ambient distances of the orthogonal projections.
struct PcaResult {
    PointCloud projected;
    std::vector<double> eigenvalues; // all d of them, nonincreasing, >= 0
    std::vector<double> explained;   // per-component variance fractions
    std::size_t l = 0;
    bool centered = false;

    /// Number of strictly positive eigenvalues after clamping.
    std::size_t positive_count() const;

    /// Smallest positive eigenvalue (lambda_[l-tilde]); throws if the spectrum
    /// is entirely zero.
    double smallest_positive_eigenvalue() const;
};

/// Project onto the span of the top-l eigenvectors of X^T X / n (or of the
/// covariance of mean-centered data when `center` is set). Eigenvector signs
/// are fixed by making each vector's largest-magnitude entry positive.
PcaResult pca_project(const PointCloud& cloud, std::size_t l, bool center = false);

/// Right-hand side of the subspace-projection stability bound:
/// sup_err * (1 + 2*sup_norm*(sup_err + 2*sup_norm) / lambda_l).
double pca_bound_rhs(double sup_err, double sup_norm, double lambda_l);

/// Right-hand side of the stability bound for clouds near (not inside) an
/// l-dimensional subspace:
/// d_HV + (d_HV + sup_err) * (1 + 2*sup_norm*(d_HV + sup_err + sup_norm) / lambda_l).
double pca_near_subspace_bound_rhs(double d_HV, double sup_err, double sup_norm, double lambda_l);

} // namespace tda

#endif
