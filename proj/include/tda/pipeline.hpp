#ifndef TDA_PIPELINE_HPP
#define TDA_PIPELINE_HPP

#include <optional>
#include <string>

#include "tda/pca.hpp"
#include "tda/persistence.hpp"
#include "tda/summaries.hpp"

namespace tda {

/// End-to-end featurization parameters. m or tau equal to zero selects the
/// corresponding heuristic (SVD energy rank for m, first 1/e autocorrelation
/// crossing for tau).
struct PipelineConfig {
    std::size_t m = 25;   // 0 = auto
    std::size_t tau = 5;  // 0 = auto
    std::size_t pca_dims = 3;
    bool center = false;
    int n_dim = 2;
    double d_max = 1.0;
    SummaryKind summary = SummaryKind::Landscape;
    std::size_t order = 1;
    double q = 1.0;
    double kappa = 0.05;
    bool concat = true;
    std::size_t simplex_cap = 5'000'000;

    SummarySpec summary_spec() const;
    void validate() const;

    std::string to_json() const;
    static PipelineConfig from_json(const std::string& text);
    static PipelineConfig load_json(const std::string& path);
};

/// Intermediate products of one featurize run, for export and inspection.
struct PipelineOutput {
    EmbeddingParams embedding;
    PointCloud cloud;       // after PCA
    PcaResult pca;
    PersistenceDiagram diagram;   // untruncated
    FeatureVector features;
};

/// Compose embed -> PCA -> Rips -> truncate -> vectorize. Equals calling the
/// modules directly; errors carry the failing step's label.
FeatureVector featurize(const PipelineConfig& config, const TimeSeries& x);

/// Same composition, returning every intermediate stage.
PipelineOutput featurize_full(const PipelineConfig& config, const TimeSeries& x);

/// Grid t-values paired with summary values, one "t,value,dim" row per entry.
void write_feature_plot_csv(const FeatureVector& fv, const std::string& path);

/// Diagram as "birth,death,dim" rows; infinite deaths print as "inf".
void write_diagram_csv(const PersistenceDiagram& dgm, const std::string& path);

} // namespace tda

#endif
