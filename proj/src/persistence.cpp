#include "tda/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "tda/errors.hpp"

namespace tda {

DistanceMatrix distance_matrix(const PointCloud& cloud) {
    cloud.validate();
    DistanceMatrix dm;
    dm.n = cloud.n();
    dm.lower.resize(dm.n * (dm.n - 1) / 2);
    for (std::size_t i = 1; i < dm.n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            dm.at_mut(i, j) = (cloud.points.row(static_cast<Eigen::Index>(i)) -
                               cloud.points.row(static_cast<Eigen::Index>(j)))
                                  .norm();
    return dm;
}

std::string to_string(FiltrationScale scale) {
    return scale == FiltrationScale::Diameter ? "diameter" : "radius";
}

FiltrationScale parse_filtration_scale(const std::string& name) {
    if (name == "diameter") return FiltrationScale::Diameter;
    if (name == "radius") return FiltrationScale::Radius;
    throw ConfigError("unknown filtration scale: " + name);
}

std::vector<PersistencePair> PersistenceDiagram::pairs_of_dim(int dim) const {
    std::vector<PersistencePair> out;
    for (const auto& p : pairs)
        if (p.dim == dim) out.push_back(p);
    return out;
}

PersistenceDiagram PersistenceDiagram::converted(FiltrationScale target) const {
    if (target == scale) return *this;
    const double factor = target == FiltrationScale::Radius ? 0.5 : 2.0;
    PersistenceDiagram out = *this;
    out.scale = target;
    for (auto& p : out.pairs) {
        p.birth *= factor;
        if (!p.is_infinite()) p.death *= factor;
    }
    return out;
}

std::string PersistenceDiagram::to_json() const {
    nlohmann::json j;
    j["scale"] = tda::to_string(scale);
    j["n_dim"] = n_dim;
    j["pairs"] = nlohmann::json::array();
    for (const auto& p : pairs) {
        nlohmann::json jp;
        jp["dim"] = p.dim;
        jp["birth"] = p.birth;
        if (p.is_infinite())
            jp["death"] = "inf";
        else
            jp["death"] = p.death;
        j["pairs"].push_back(jp);
    }
    return j.dump(2);
}

PersistenceDiagram PersistenceDiagram::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid diagram JSON: ") + e.what());
    }
    PersistenceDiagram out;
    out.scale = parse_filtration_scale(j.value("scale", "diameter"));
    out.n_dim = j.value("n_dim", 0);
    for (const auto& jp : j.at("pairs")) {
        PersistencePair p;
        p.dim = jp.at("dim").get<int>();
        p.birth = jp.at("birth").get<double>();
        if (jp.at("death").is_string())
            p.death = kInfiniteDeath;
        else
            p.death = jp.at("death").get<double>();
        out.pairs.push_back(p);
        out.n_dim = std::max(out.n_dim, p.dim);
    }
    return out;
}

void PersistenceDiagram::save_json(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << to_json() << '\n';
}

PersistenceDiagram PersistenceDiagram::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open diagram file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

namespace {

using index_t = std::int64_t;

/// Binomial coefficients for combinatorial simplex keys.
class BinomialTable {
public:
    BinomialTable(std::size_t n, std::size_t k) : cols_(k + 1), table_((n + 1) * (k + 1), 0) {
        for (std::size_t i = 0; i <= n; ++i) {
            at(i, 0) = 1;
            for (std::size_t j = 1; j <= std::min(i, k); ++j)
                at(i, j) = (i == j) ? 1 : at(i - 1, j - 1) + at(i - 1, j);
        }
    }
    std::uint64_t& at(std::size_t i, std::size_t j) { return table_[i * cols_ + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return table_[i * cols_ + j]; }

private:
    std::size_t cols_;
    std::vector<std::uint64_t> table_;
};

/// Simplices of one dimension: flat vertex array plus filtration values.
struct SimplexLayer {
    int dim = 0;
    std::vector<std::int32_t> verts; // (dim + 1) entries per simplex, ascending
    std::vector<double> values;

    std::size_t count() const { return values.size(); }
    const std::int32_t* simplex(std::size_t s) const {
        return verts.data() + s * static_cast<std::size_t>(dim + 1);
    }
};

std::uint64_t colex_key(const std::int32_t* v, int count, const BinomialTable& binom) {
    // Rank of the ascending combination in colex order; unique across a fixed
    // dimension.
    std::uint64_t key = 0;
    for (int i = 0; i < count; ++i)
        key += binom.at(static_cast<std::size_t>(v[i]), static_cast<std::size_t>(i + 1));
    return key;
}

struct FiltrationEntry {
    double value;
    std::int32_t dim;
    std::int32_t local; // index within the layer
};

/// Working column as a lazy max-heap over row indices: entries may repeat,
/// and equal pairs cancel (mod 2) on extraction.
class WorkingColumn {
public:
    void assign(const std::vector<std::int32_t>& rows) {
        heap_ = rows;
        std::make_heap(heap_.begin(), heap_.end());
    }

    void add(const std::int32_t* rows, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            heap_.push_back(rows[i]);
            std::push_heap(heap_.begin(), heap_.end());
        }
    }

    /// Largest surviving row, or -1 when the column is zero.
    std::int32_t pop_pivot() {
        while (!heap_.empty()) {
            std::int32_t top = heap_.front();
            std::pop_heap(heap_.begin(), heap_.end());
            heap_.pop_back();
            if (!heap_.empty() && heap_.front() == top) {
                std::pop_heap(heap_.begin(), heap_.end());
                heap_.pop_back();
            } else {
                return top;
            }
        }
        return -1;
    }

    /// Drain into an ascending, cancellation-free vector ending at `pivot`.
    std::vector<std::int32_t> materialize(std::int32_t pivot) {
        std::vector<std::int32_t> out{pivot};
        for (std::int32_t row = pop_pivot(); row >= 0; row = pop_pivot()) out.push_back(row);
        std::reverse(out.begin(), out.end());
        return out;
    }

private:
    std::vector<std::int32_t> heap_;
};

/// Enumerate all Rips simplices of dimension <= max_dim with diameter <= d_max.
std::vector<SimplexLayer> enumerate_simplices(const DistanceMatrix& dist, int max_dim,
                                              double d_max, std::size_t cap) {
    const std::size_t n = dist.n;
    std::vector<SimplexLayer> layers(static_cast<std::size_t>(max_dim) + 1);
    std::size_t total = n;
    if (total > cap)
        throw ComputationError("simplex budget exceeded by the vertex set alone; "
                               "reduce the point count");

    layers[0].dim = 0;
    layers[0].verts.resize(n);
    std::iota(layers[0].verts.begin(), layers[0].verts.end(), 0);
    layers[0].values.assign(n, 0.0);
    if (max_dim == 0) return layers;

    // Upper-neighbor adjacency under the threshold.
    std::vector<std::vector<std::int32_t>> nbr(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist.at(i, j) <= d_max) nbr[i].push_back(static_cast<std::int32_t>(j));

    layers[1].dim = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::int32_t j : nbr[i]) {
            if (++total > cap)
                throw ComputationError(
                    "simplex budget exceeded (cap " + std::to_string(cap) +
                    "); use a smaller d_max or a lower homology dimension");
            layers[1].verts.push_back(static_cast<std::int32_t>(i));
            layers[1].verts.push_back(j);
            layers[1].values.push_back(dist.at(i, static_cast<std::size_t>(j)));
        }
    }

    std::vector<std::int32_t> common, next_common;
    for (int d = 2; d <= max_dim; ++d) {
        const SimplexLayer& prev = layers[static_cast<std::size_t>(d - 1)];
        SimplexLayer& cur = layers[static_cast<std::size_t>(d)];
        cur.dim = d;
        for (std::size_t s = 0; s < prev.count(); ++s) {
            const std::int32_t* v = prev.simplex(s);
            // Common upper neighbors of all vertices of the face.
            common.assign(nbr[static_cast<std::size_t>(v[0])].begin(),
                          nbr[static_cast<std::size_t>(v[0])].end());
            for (int i = 1; i < d && !common.empty(); ++i) {
                const auto& list = nbr[static_cast<std::size_t>(v[i])];
                next_common.clear();
                std::set_intersection(common.begin(), common.end(), list.begin(), list.end(),
                                      std::back_inserter(next_common));
                common.swap(next_common);
            }
            for (std::int32_t w : common) {
                if (w <= v[d - 1]) continue;
                double value = prev.values[s];
                for (int i = 0; i < d; ++i)
                    value = std::max(value,
                                     dist.at(static_cast<std::size_t>(v[i]),
                                             static_cast<std::size_t>(w)));
                if (++total > cap)
                    throw ComputationError(
                        "simplex budget exceeded (cap " + std::to_string(cap) +
                        "); use a smaller d_max or a lower homology dimension");
                for (int i = 0; i < d; ++i) cur.verts.push_back(v[i]);
                cur.verts.push_back(w);
                cur.values.push_back(value);
            }
        }
    }
    return layers;
}

} // namespace

std::vector<FilteredSimplex> rips_simplices(const DistanceMatrix& dist, int max_dim, double d_max,
                                            const RipsOptions& options) {
    if (dist.n < 1) throw ConfigError("distance matrix must cover at least one point");
    if (max_dim < 0) throw ConfigError("max_dim must be >= 0");
    if (!(d_max > 0.0)) throw ConfigError("d_max must be > 0");
    auto layers = enumerate_simplices(dist, max_dim, d_max, options.simplex_cap);

    std::vector<FilteredSimplex> out;
    for (const auto& layer : layers)
        for (std::size_t s = 0; s < layer.count(); ++s) {
            const std::int32_t* v = layer.simplex(s);
            out.push_back({std::vector<std::int32_t>(v, v + layer.dim + 1), layer.values[s]});
        }
    std::sort(out.begin(), out.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    return out;
}

namespace {

/// Points within the zero tolerance of an earlier point are dominated
/// vertices: every pair their merge creates falls below the same tolerance
/// and is dropped, while the near-clique they form inflates the complex
/// combinatorially. Collapse them up front (remaining values shift by at most
/// twice the tolerance).
DistanceMatrix drop_duplicate_points(const DistanceMatrix& dist, double tolerance) {
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < dist.n; ++i) {
        bool duplicate = false;
        for (std::size_t r : reps)
            if (dist.at(i, r) <= tolerance) {
                duplicate = true;
                break;
            }
        if (!duplicate) reps.push_back(i);
    }
    if (reps.size() == dist.n) return dist;
    DistanceMatrix out;
    out.n = reps.size();
    out.lower.resize(out.n * (out.n - 1) / 2);
    for (std::size_t i = 1; i < out.n; ++i)
        for (std::size_t j = 0; j < i; ++j) out.at_mut(i, j) = dist.at(reps[i], reps[j]);
    return out;
}

} // namespace

PersistenceDiagram rips_persistence(const DistanceMatrix& dist_in, int n_dim, double d_max,
                                    const RipsOptions& options) {
    if (dist_in.n < 1) throw ConfigError("distance matrix must cover at least one point");
    if (n_dim < 0) throw ConfigError("n_dim must be >= 0");
    if (!(d_max > 0.0)) throw ConfigError("d_max must be > 0");

    const DistanceMatrix dist = drop_duplicate_points(dist_in, options.zero_tolerance);
    const int top_dim = n_dim + 1;
    auto layers = enumerate_simplices(dist, top_dim, d_max, options.simplex_cap);

    // Global filtration order: value, then dimension (faces before cofaces on
    // ties), then lexicographic vertex order.
    std::size_t total = 0;
    for (const auto& layer : layers) total += layer.count();
    std::vector<FiltrationEntry> order;
    order.reserve(total);
    for (const auto& layer : layers)
        for (std::size_t s = 0; s < layer.count(); ++s)
            order.push_back({layer.values[s], layer.dim, static_cast<std::int32_t>(s)});

    std::sort(order.begin(), order.end(), [&](const FiltrationEntry& a, const FiltrationEntry& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        const std::int32_t* va = layers[static_cast<std::size_t>(a.dim)].simplex(
            static_cast<std::size_t>(a.local));
        const std::int32_t* vb = layers[static_cast<std::size_t>(b.dim)].simplex(
            static_cast<std::size_t>(b.local));
        return std::lexicographical_compare(va, va + a.dim + 1, vb, vb + b.dim + 1);
    });

    // Global index assignment and facet lookup. Facets of dimension k are
    // resolved via direct-address tables over colex ranks when small, a hash
    // map otherwise; top-dimensional simplices are never rows of any column
    // and need no table.
    BinomialTable binom(dist.n, static_cast<std::size_t>(top_dim) + 1);
    constexpr std::uint64_t kDirectTableLimit = 1u << 24;
    std::vector<std::vector<std::int32_t>> direct_keys(static_cast<std::size_t>(top_dim));
    std::vector<std::unordered_map<std::uint64_t, std::int32_t>> hashed_keys(
        static_cast<std::size_t>(top_dim));
    for (int d = 0; d < top_dim; ++d) {
        std::uint64_t space = binom.at(dist.n, static_cast<std::size_t>(d) + 1);
        if (space <= kDirectTableLimit)
            direct_keys[static_cast<std::size_t>(d)].assign(space, -1);
        else
            hashed_keys[static_cast<std::size_t>(d)].reserve(
                layers[static_cast<std::size_t>(d)].count() * 2);
    }

    std::vector<std::vector<std::int32_t>> globals_of_dim(static_cast<std::size_t>(top_dim) + 1);
    std::vector<double> value_of(total);
    std::vector<std::int32_t> local_of(total);
    for (std::size_t g = 0; g < total; ++g) {
        const auto& e = order[g];
        value_of[g] = e.value;
        local_of[g] = e.local;
        globals_of_dim[static_cast<std::size_t>(e.dim)].push_back(static_cast<std::int32_t>(g));
        if (e.dim < top_dim) {
            const auto& layer = layers[static_cast<std::size_t>(e.dim)];
            std::uint64_t key =
                colex_key(layer.simplex(static_cast<std::size_t>(e.local)), e.dim + 1, binom);
            if (!direct_keys[static_cast<std::size_t>(e.dim)].empty())
                direct_keys[static_cast<std::size_t>(e.dim)][key] = static_cast<std::int32_t>(g);
            else
                hashed_keys[static_cast<std::size_t>(e.dim)].emplace(
                    key, static_cast<std::int32_t>(g));
        }
    }

    std::vector<std::uint8_t> paired(total, 0);   // simplex was the pivot row of some column
    std::vector<std::uint8_t> positive(total, 0); // simplex's own column reduced to zero
    for (std::int32_t g : globals_of_dim[0]) positive[static_cast<std::size_t>(g)] = 1;

    PersistenceDiagram out;
    out.n_dim = n_dim;
    out.scale = FiltrationScale::Diameter;

    // owner_of[row] is the index into column_pool of the reduced column whose
    // pivot is `row`, or -1.
    std::vector<std::int32_t> owner_of(total, -1);
    std::vector<std::vector<std::int32_t>> column_pool;
    std::vector<std::int32_t> col, facet_verts;
    WorkingColumn working;
    for (int d = top_dim; d >= 1; --d) {
        column_pool.clear();
        const auto& layer = layers[static_cast<std::size_t>(d)];
        const auto& facet_layer = layers[static_cast<std::size_t>(d - 1)];
        const auto& direct = direct_keys[static_cast<std::size_t>(d - 1)];
        const auto& hashed = hashed_keys[static_cast<std::size_t>(d - 1)];

        // Apparent-pair test: the column's order-maximal facet has the same
        // filtration value, and the column is that facet's order-minimal
        // cofacet among the equal-value ones. Such (facet, column) pairs are
        // zero-persistence pairs of the canonical reduction, so the column
        // may claim its pivot without any reduction work.
        auto is_apparent_pair = [&](std::int32_t pivot_row, const std::int32_t* cv) {
            const std::int32_t* fv = facet_layer.simplex(
                static_cast<std::size_t>(local_of[static_cast<std::size_t>(pivot_row)]));
            const double diam = value_of[static_cast<std::size_t>(pivot_row)];
            for (std::int32_t w = 0; w < static_cast<std::int32_t>(dist.n); ++w) {
                bool member = false;
                double worst = 0.0;
                for (int i = 0; i < d; ++i) {
                    if (fv[i] == w) {
                        member = true;
                        break;
                    }
                    worst = std::max(worst, dist.at(static_cast<std::size_t>(w),
                                                    static_cast<std::size_t>(fv[i])));
                }
                if (member || worst > diam) continue;
                // First (lexicographically minimal) equal-value cofacet: the
                // pair is apparent iff that cofacet is this very column,
                // i.e. cv equals fv plus the vertex w.
                bool same = true;
                int fi = 0;
                for (int i = 0; i <= d; ++i) {
                    if (cv[i] == w) continue;
                    if (fi >= d || cv[i] != fv[fi]) {
                        same = false;
                        break;
                    }
                    ++fi;
                }
                return same && fi == d;
            }
            return false;
        };

        for (std::int32_t g : globals_of_dim[static_cast<std::size_t>(d)]) {
            if (paired[static_cast<std::size_t>(g)]) continue; // cleared by the pass above

            const std::int32_t* v = layer.simplex(static_cast<std::size_t>(local_of[g]));
            col.clear();
            for (int omit = 0; omit <= d; ++omit) {
                facet_verts.clear();
                for (int i = 0; i <= d; ++i)
                    if (i != omit) facet_verts.push_back(v[i]);
                std::uint64_t key = colex_key(facet_verts.data(), d, binom);
                col.push_back(direct.empty() ? hashed.at(key)
                                             : direct[key]);
            }
            std::sort(col.begin(), col.end());

            {
                std::int32_t pivot0 = col.back();
                if (owner_of[static_cast<std::size_t>(pivot0)] < 0 &&
                    value_of[static_cast<std::size_t>(pivot0)] ==
                        value_of[static_cast<std::size_t>(g)] &&
                    is_apparent_pair(pivot0, v)) {
                    owner_of[static_cast<std::size_t>(pivot0)] =
                        static_cast<std::int32_t>(column_pool.size());
                    column_pool.push_back(std::move(col));
                    col = {};
                    paired[static_cast<std::size_t>(pivot0)] = 1;
                    continue; // zero persistence: never reported
                }
            }

            working.assign(col);
            while (true) {
                std::int32_t pivot = working.pop_pivot();
                if (pivot < 0) {
                    positive[static_cast<std::size_t>(g)] = 1;
                    break;
                }
                std::int32_t owner = owner_of[static_cast<std::size_t>(pivot)];
                if (owner < 0) {
                    owner_of[static_cast<std::size_t>(pivot)] =
                        static_cast<std::int32_t>(column_pool.size());
                    column_pool.push_back(working.materialize(pivot));
                    paired[static_cast<std::size_t>(pivot)] = 1;
                    double birth = value_of[static_cast<std::size_t>(pivot)];
                    double death = value_of[static_cast<std::size_t>(g)];
                    if (death - birth > options.zero_tolerance)
                        out.pairs.push_back({d - 1, birth, death});
                    break;
                }
                // The popped pivot cancels against the partner's pivot; add
                // the rest of the partner column.
                const auto& partner = column_pool[static_cast<std::size_t>(owner)];
                working.add(partner.data(), partner.size() - 1);
            }
        }
        // Stale owner entries from this pass index rows of dimension d-1; the
        // next pass only consults rows of dimension d-2, so no reset needed.
    }

    // Unpaired creators of dimension <= n_dim are essential classes.
    for (int d = 0; d <= n_dim; ++d)
        for (std::int32_t g : globals_of_dim[static_cast<std::size_t>(d)])
            if (positive[static_cast<std::size_t>(g)] && !paired[static_cast<std::size_t>(g)])
                out.pairs.push_back({d, value_of[static_cast<std::size_t>(g)], kInfiniteDeath});

    std::sort(out.pairs.begin(), out.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return out;
}

PersistenceDiagram h0_union_find(const DistanceMatrix& dist, double d_max,
                                 const RipsOptions& options) {
    if (dist.n < 1) throw ConfigError("distance matrix must cover at least one point");
    if (!(d_max > 0.0)) throw ConfigError("d_max must be > 0");

    struct Edge {
        double length;
        std::int32_t i, j;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < dist.n; ++i)
        for (std::size_t j = i + 1; j < dist.n; ++j) {
            double len = dist.at(i, j);
            if (len <= d_max)
                edges.push_back({len, static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)});
        }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    std::vector<std::int32_t> parent(dist.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };

    PersistenceDiagram out;
    out.n_dim = 0;
    out.scale = FiltrationScale::Diameter;
    for (const auto& e : edges) {
        std::int32_t ra = find(e.i), rb = find(e.j);
        if (ra == rb) continue;
        parent[static_cast<std::size_t>(ra)] = rb;
        if (e.length > options.zero_tolerance) out.pairs.push_back({0, 0.0, e.length});
    }
    for (std::size_t v = 0; v < dist.n; ++v)
        if (find(static_cast<std::int32_t>(v)) == static_cast<std::int32_t>(v))
            out.pairs.push_back({0, 0.0, kInfiniteDeath});

    std::sort(out.pairs.begin(), out.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return out;
}

} // namespace tda
