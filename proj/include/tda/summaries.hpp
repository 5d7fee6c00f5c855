#ifndef TDA_SUMMARIES_HPP
#define TDA_SUMMARIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "tda/persistence.hpp"

namespace tda {

enum class SummaryKind { Landscape, Silhouette };

std::string to_string(SummaryKind kind);
SummaryKind parse_summary_kind(const std::string& name);

/// Which summary function to evaluate and on what grid. The grid covers
/// [0, d_max] with ceil(d_max / kappa) cells sampled at their midpoints
/// (i + 0.5) * kappa.
struct SummarySpec {
    SummaryKind kind = SummaryKind::Landscape;
    std::size_t order = 1;  // landscape order j >= 1
    double q = 1.0;         // silhouette power weight > 0
    double kappa = 0.05;    // grid resolution, filtration units
    double d_max = 1.0;     // domain upper bound, filtration units
    FiltrationScale scale = FiltrationScale::Diameter;

    std::size_t grid_size() const;
    double grid_point(std::size_t i) const { return (static_cast<double>(i) + 0.5) * kappa; }
    void validate() const;

    friend bool operator==(const SummarySpec&, const SummarySpec&) = default;
};

/// Grid-sampled summary values, one block of grid_size() entries per homology
/// dimension 0..n_dim in order.
struct FeatureVector {
    std::vector<double> values;
    std::vector<int> dims;
    SummarySpec spec;
    bool concatenated = true;

    std::size_t block_size() const { return spec.grid_size(); }
    /// View of the block for one homology dimension.
    std::vector<double> block(int dim) const;

    std::string to_json() const;
    std::string to_csv_row() const;
};

/// Triangular tent of a finite birth-death pair: t-b on [b, (b+d)/2],
/// d-t on ((b+d)/2, d], 0 elsewhere. Infinite deaths must be truncated first.
double tent(const PersistencePair& p, double t);

/// j-th largest tent value at t over the pairs (0 when fewer than j cover t).
double landscape_eval(const std::vector<PersistencePair>& pairs, std::size_t j, double t);

/// Persistence-power-weighted average of tents; the zero function for an
/// empty diagram.
double silhouette_eval(const std::vector<PersistencePair>& pairs, double q, double t);

/// Replace deaths beyond d_max (including infinite ones) with d_max and drop
/// pairs born at or after d_max.
PersistenceDiagram truncate_infinite(const PersistenceDiagram& dgm, double d_max);

/// Evaluate the chosen summary for every homology dimension 0..dgm.n_dim on
/// the spec's grid. The diagram must already be truncated to finite deaths.
FeatureVector vectorize(const PersistenceDiagram& dgm, const SummarySpec& spec);

} // namespace tda

#endif
