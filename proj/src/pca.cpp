#include "tda/pca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "tda/errors.hpp"

namespace tda {

namespace {
constexpr double kEigenvalueClamp = 1e-12;
}

std::size_t PcaResult::positive_count() const {
    std::size_t k = 0;
    while (k < eigenvalues.size() && eigenvalues[k] > 0.0) ++k;
    return k;
}

double PcaResult::smallest_positive_eigenvalue() const {
    std::size_t k = positive_count();
    if (k == 0) throw ComputationError("second-moment matrix has no positive eigenvalues");
    return eigenvalues[k - 1];
}

PcaResult pca_project(const PointCloud& cloud, std::size_t l, bool center) {
    cloud.validate();
    const std::size_t d = cloud.d();
    const std::size_t n = cloud.n();
    if (l < 1 || l > d)
        throw ConfigError("pca target dimension l = " + std::to_string(l) +
                          " must lie in [1, " + std::to_string(d) + "]");

    Eigen::MatrixXd data = cloud.points;
    if (center) data.rowwise() -= data.colwise().mean();

    Eigen::MatrixXd gram = (data.transpose() * data) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success)
        throw ComputationError("eigendecomposition of the second-moment matrix failed");

    // Eigen reports ascending order; flip to descending.
    Eigen::VectorXd evals = solver.eigenvalues().reverse();
    Eigen::MatrixXd evecs = solver.eigenvectors().rowwise().reverse();

    // Deterministic sign: largest-magnitude entry of each eigenvector positive.
    for (std::size_t j = 0; j < d; ++j) {
        Eigen::Index imax = 0;
        evecs.col(j).cwiseAbs().maxCoeff(&imax);
        if (evecs(imax, j) < 0.0) evecs.col(j) = -evecs.col(j);
    }

    PcaResult result;
    result.l = l;
    result.centered = center;
    result.eigenvalues.resize(d);
    double total = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double v = evals(static_cast<Eigen::Index>(j));
        if (std::abs(v) <= kEigenvalueClamp) v = 0.0;
        if (v < 0.0) v = 0.0; // numerical negatives on rank-deficient input
        result.eigenvalues[j] = v;
        total += v;
    }
    result.explained.resize(d, 0.0);
    if (total > 0.0)
        for (std::size_t j = 0; j < d; ++j) result.explained[j] = result.eigenvalues[j] / total;

    result.projected = PointCloud(data * evecs.leftCols(static_cast<Eigen::Index>(l)));
    return result;
}

double pca_bound_rhs(double sup_err, double sup_norm, double lambda_l) {
    if (!(lambda_l > 0.0)) throw ConfigError("lambda_l must be > 0");
    if (sup_err < 0.0 || sup_norm < 0.0) throw ConfigError("norms must be nonnegative");
    return sup_err * (1.0 + 2.0 * sup_norm * (sup_err + 2.0 * sup_norm) / lambda_l);
}

double pca_near_subspace_bound_rhs(double d_HV, double sup_err, double sup_norm, double lambda_l) {
    if (!(lambda_l > 0.0)) throw ConfigError("lambda_l must be > 0");
    if (d_HV < 0.0 || sup_err < 0.0 || sup_norm < 0.0)
        throw ConfigError("distances and norms must be nonnegative");
    return d_HV + (d_HV + sup_err) *
                      (1.0 + 2.0 * sup_norm * (d_HV + sup_err + sup_norm) / lambda_l);
}

} // namespace tda
