#ifndef TDA_TESTS_HELPERS_HPP
#define TDA_TESTS_HELPERS_HPP

#include <vector>

#include "tda/embedding.hpp"
#include "tda/persistence.hpp"
#include "tda/rng.hpp"

namespace helpers {

inline tda::PointCloud random_cloud(tda::Rng& rng, std::size_t n, std::size_t d,
                                    double scale = 1.0) {
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        for (Eigen::Index j = 0; j < pts.cols(); ++j) pts(i, j) = scale * rng.normal();
    return tda::PointCloud(std::move(pts));
}

inline tda::PersistenceDiagram random_diagram(tda::Rng& rng, std::size_t max_pairs, int dim,
                                              double span = 2.0) {
    tda::PersistenceDiagram dgm;
    dgm.n_dim = dim;
    std::size_t count = rng.below(max_pairs + 1);
    for (std::size_t i = 0; i < count; ++i) {
        double birth = rng.uniform(0.0, span);
        double death = birth + rng.uniform(0.0, span) + 1e-6;
        dgm.pairs.push_back({dim, birth, death});
    }
    return dgm;
}

inline tda::PointCloud cloud_from_rows(const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return tda::PointCloud(std::move(pts));
}

/// Multisets of pairs compared exactly (same dims, births, deaths).
inline bool same_pairs(std::vector<tda::PersistencePair> a, std::vector<tda::PersistencePair> b) {
    auto key = [](const tda::PersistencePair& x, const tda::PersistencePair& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        if (x.birth != y.birth) return x.birth < y.birth;
        return x.death < y.death;
    };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    return a == b;
}

} // namespace helpers

#endif
