#ifndef TDA_METRICS_HPP
#define TDA_METRICS_HPP

#include <cstdint>
#include <vector>

#include "tda/embedding.hpp"
#include "tda/persistence.hpp"
#include "tda/summaries.hpp"

namespace tda {

/// Exact bottleneck distance between the dimension-`dim` parts of two
/// diagrams: binary search over the finite candidate set (pairwise l-inf
/// distances and half-lives) with a matching-feasibility check per probe.
/// Infinite-death pairs match only among themselves by sorted birth; a count
/// mismatch yields +infinity. Both diagrams must share a scale convention.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

/// Hausdorff distance between two point clouds of equal ambient dimension.
double hausdorff(const PointCloud& x, const PointCloud& y);

/// Max componentwise absolute difference of two feature vectors produced
/// under the identical spec.
double linf_grid(const FeatureVector& a, const FeatureVector& b);

/// Parameters of a sampling-noise stability experiment. The synthesized
/// signal is a sinusoid with Lipschitz constant L_f sampled N times over
/// [0, T]; the embedding uses (m, tau) and PCA projects to l dimensions.
struct StabilityConfig {
    double L_f = 2.0;
    double T = 2.0 * 3.14159265358979323846;
    std::size_t N = 100;
    double noise_sup = 0.0;
    std::size_t m = 5;
    std::size_t tau = 5;
    std::size_t l = 2;
    std::size_t trials = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Right-hand side of the sampling stability bound, in the radius convention:
/// sqrt(m)*eps + 2*m^{3/2}*L_f*T*eps*(2*L_f*T + eps)/lambda_l + sqrt(m)*L_f*T/N.
double sampling_stability_bound(const StabilityConfig& cfg, double lambda_l);

namespace detail {
/// Whether a perfect matching exists at threshold r for the finite parts of
/// two diagrams (points may match the diagonal at their half-life cost).
bool matching_feasible(const std::vector<PersistencePair>& a,
                       const std::vector<PersistencePair>& b, double r);
} // namespace detail

} // namespace tda

#endif
