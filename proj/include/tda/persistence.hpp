#ifndef TDA_PERSISTENCE_HPP
#define TDA_PERSISTENCE_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tda/embedding.hpp"

namespace tda {

/// Symmetric Euclidean distance matrix with zero diagonal, stored as a packed
/// strict lower triangle.
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> lower; // entry (i, j), i > j, at i*(i-1)/2 + j

    double at(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0;
        if (i < j) std::swap(i, j);
        return lower[i * (i - 1) / 2 + j];
    }

    double& at_mut(std::size_t i, std::size_t j) {
        if (i < j) std::swap(i, j);
        return lower[i * (i - 1) / 2 + j];
    }
};

/// Pairwise Euclidean distances of the cloud's points.
DistanceMatrix distance_matrix(const PointCloud& cloud);

/// Whether a simplex enters the filtration at its max pairwise distance
/// (diameter) or at half of it (radius). Diagrams in the radius convention
/// equal diameter-convention diagrams divided by two.
enum class FiltrationScale { Diameter, Radius };

std::string to_string(FiltrationScale scale);
FiltrationScale parse_filtration_scale(const std::string& name);

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = kInfiniteDeath;

    bool is_infinite() const { return death == kInfiniteDeath; }
    double half_life() const { return (death - birth) / 2.0; }

    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;
    int n_dim = 0;
    FiltrationScale scale = FiltrationScale::Diameter;

    std::vector<PersistencePair> pairs_of_dim(int dim) const;

    /// Copy with all finite coordinates rescaled to the target convention.
    PersistenceDiagram converted(FiltrationScale target) const;

    std::string to_json() const;
    static PersistenceDiagram from_json(const std::string& text);
    void save_json(const std::string& path) const;
    static PersistenceDiagram load_json(const std::string& path);
};

struct RipsOptions {
    std::size_t simplex_cap = 5'000'000;
    double zero_tolerance = 1e-12; // pairs with death - birth below this are dropped
};

/// One simplex of the filtration: ascending vertex ids and the diameter at
/// which it enters. Faces always enter at or before their cofaces.
struct FilteredSimplex {
    std::vector<std::int32_t> vertices;
    double value = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// All Rips simplices of dimension <= max_dim with diameter <= d_max, in
/// filtration order (value, then dimension, then lexicographic vertices).
std::vector<FilteredSimplex> rips_simplices(const DistanceMatrix& dist, int max_dim, double d_max,
                                            const RipsOptions& options = {});

/// Persistent homology of the Vietoris-Rips filtration up to dimension n_dim,
/// over Z/2, by boundary-matrix reduction with the clearing (twist)
/// optimization. Simplices of dimension <= n_dim + 1 with diameter <= d_max
/// are enumerated; classes still alive at d_max get an infinite death.
/// Filtration values use the diameter convention.
PersistenceDiagram rips_persistence(const DistanceMatrix& dist, int n_dim, double d_max,
                                    const RipsOptions& options = {});

/// Dimension-0 persistence by Kruskal-style union-find over edges of length
/// <= d_max: one (0, merge length) pair per union plus one (0, inf) pair per
/// component remaining at d_max. Independent of the matrix-reduction path.
PersistenceDiagram h0_union_find(const DistanceMatrix& dist, double d_max,
                                 const RipsOptions& options = {});

} // namespace tda

#endif
