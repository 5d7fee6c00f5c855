#ifndef TDA_STABILITY_HPP
#define TDA_STABILITY_HPP

#include <string>
#include <vector>

#include "tda/metrics.hpp"

namespace tda {

/// One stability trial: every observed quantity is reported in the radius
/// convention, matching the convention of the bound.
struct StabilityTrial {
    std::size_t index = 0;
    double observed_db = 0.0;         // max over homology dims 0..1
    double observed_landscape = 0.0;  // grid l-inf of order-1 landscapes
    double observed_silhouette = 0.0; // grid l-inf of q=1 silhouettes
    double bound_rhs = 0.0;
    double slack = 0.0; // dense-reference discretization slack
    double lambda_l = 0.0;
    bool pass = false;
};

struct StabilityReport {
    StabilityConfig config;
    std::vector<StabilityTrial> trials;
    double max_ratio = 0.0; // worst observed / (rhs + slack)
    bool all_pass = false;

    std::string to_json() const;
    void save_json(const std::string& path) const;
};

/// Run the sampling-noise stability experiment.
///
/// Each trial synthesizes a sinusoid whose sliding-window embedding lies
/// exactly in an l-dimensional linear subspace (a 2-plane for m >= 2, the
/// line for m = 1), samples it N times over [0, T] with uniform noise bounded
/// by noise_sup, runs the embedding + PCA + Rips pipeline, and compares the
/// bottleneck distance and the landscape/silhouette grid l-inf distances
/// against the reference diagram of a 20x-refined time grid. Observations
/// must stay below the analytic bound plus the documented discretization
/// slack sqrt(m)*L_f*T/(20*N).
StabilityReport run_stability_suite(const StabilityConfig& cfg);

StabilityConfig stability_config_from_json(const std::string& text);
std::string stability_config_to_json(const StabilityConfig& cfg);

} // namespace tda

#endif
