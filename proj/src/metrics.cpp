#include "tda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "tda/errors.hpp"

namespace tda {

namespace {

struct WeightedPoint {
    double birth;
    double death;
    std::int64_t mult;
    double half_life() const { return (death - birth) / 2.0; }
};

std::vector<WeightedPoint> compress(const std::vector<PersistencePair>& pairs) {
    std::map<std::pair<double, double>, std::int64_t> counts;
    for (const auto& p : pairs) ++counts[{p.birth, p.death}];
    std::vector<WeightedPoint> out;
    out.reserve(counts.size());
    for (const auto& [key, mult] : counts) out.push_back({key.first, key.second, mult});
    return out;
}

double linf_dist(const WeightedPoint& a, const WeightedPoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

/// Dinic max-flow on a small graph; enough for diagram matching feasibility.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

    void add_edge(int from, int to, std::int64_t cap) {
        edges_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
        head_[static_cast<std::size_t>(from)] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
        head_[static_cast<std::size_t>(to)] = static_cast<int>(edges_.size()) - 1;
    }

    std::int64_t run(int source, int sink) {
        std::int64_t flow = 0;
        while (bfs(source, sink)) {
            iter_ = head_;
            while (std::int64_t pushed = dfs(source, sink, INT64_MAX)) flow += pushed;
        }
        return flow;
    }

private:
    struct Edge {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int source, int sink) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(source);
        level_[static_cast<std::size_t>(source)] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
                const Edge& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] < 0) {
                    level_[static_cast<std::size_t>(ed.to)] = level_[static_cast<std::size_t>(u)] + 1;
                    q.push(ed.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(sink)] >= 0;
    }

    std::int64_t dfs(int u, int sink, std::int64_t limit) {
        if (u == sink) return limit;
        for (int& e = iter_[static_cast<std::size_t>(u)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
            Edge& ed = edges_[static_cast<std::size_t>(e)];
            if (ed.cap <= 0 || level_[static_cast<std::size_t>(ed.to)] != level_[static_cast<std::size_t>(u)] + 1)
                continue;
            std::int64_t pushed = dfs(ed.to, sink, std::min(limit, ed.cap));
            if (pushed > 0) {
                ed.cap -= pushed;
                edges_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<int> iter_;
    std::vector<int> level_;
    std::vector<Edge> edges_;
};

bool feasible(const std::vector<WeightedPoint>& a, const std::vector<WeightedPoint>& b, double r) {
    std::int64_t total_a = 0, total_b = 0;
    for (const auto& p : a) total_a += p.mult;
    for (const auto& q : b) total_b += q.mult;

    // Nodes: source, sink, left reals, one collapsed left dummy (capacity
    // total_b), right reals, one collapsed right dummy (capacity total_a).
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    const int source = 0, sink = 1;
    const int left0 = 2;
    const int dummy_left = left0 + na;
    const int right0 = dummy_left + 1;
    const int dummy_right = right0 + nb;
    MaxFlow flow(dummy_right + 1);

    for (int i = 0; i < na; ++i) flow.add_edge(source, left0 + i, a[static_cast<std::size_t>(i)].mult);
    flow.add_edge(source, dummy_left, total_b);
    for (int j = 0; j < nb; ++j) flow.add_edge(right0 + j, sink, b[static_cast<std::size_t>(j)].mult);
    flow.add_edge(dummy_right, sink, total_a);

    for (int i = 0; i < na; ++i) {
        const auto& p = a[static_cast<std::size_t>(i)];
        for (int j = 0; j < nb; ++j)
            if (linf_dist(p, b[static_cast<std::size_t>(j)]) <= r)
                flow.add_edge(left0 + i, right0 + j, p.mult);
        if (p.half_life() <= r) flow.add_edge(left0 + i, dummy_right, p.mult);
    }
    for (int j = 0; j < nb; ++j)
        if (b[static_cast<std::size_t>(j)].half_life() <= r)
            flow.add_edge(dummy_left, right0 + j, b[static_cast<std::size_t>(j)].mult);
    flow.add_edge(dummy_left, dummy_right, total_a + total_b);

    return flow.run(source, sink) == total_a + total_b;
}

} // namespace

namespace detail {
bool matching_feasible(const std::vector<PersistencePair>& a,
                       const std::vector<PersistencePair>& b, double r) {
    return feasible(compress(a), compress(b), r);
}
} // namespace detail

double bottleneck(const PersistenceDiagram& da, const PersistenceDiagram& db, int dim) {
    if (da.scale != db.scale)
        throw ConfigError("bottleneck distance requires matching scale conventions (" +
                          to_string(da.scale) + " vs " + to_string(db.scale) + ")");

    std::vector<PersistencePair> fa, fb;
    std::vector<double> inf_a, inf_b;
    for (const auto& p : da.pairs)
        if (p.dim == dim) (p.is_infinite() ? inf_a.push_back(p.birth) : (void)fa.push_back(p));
    for (const auto& p : db.pairs)
        if (p.dim == dim) (p.is_infinite() ? inf_b.push_back(p.birth) : (void)fb.push_back(p));

    // Essential classes match only among themselves, by sorted birth.
    if (inf_a.size() != inf_b.size()) return kInfiniteDeath;
    std::sort(inf_a.begin(), inf_a.end());
    std::sort(inf_b.begin(), inf_b.end());
    double inf_cost = 0.0;
    for (std::size_t i = 0; i < inf_a.size(); ++i)
        inf_cost = std::max(inf_cost, std::abs(inf_a[i] - inf_b[i]));

    auto ca = compress(fa);
    auto cb = compress(fb);

    std::vector<double> candidates{0.0};
    for (const auto& p : ca) candidates.push_back(p.half_life());
    for (const auto& q : cb) candidates.push_back(q.half_life());
    for (const auto& p : ca)
        for (const auto& q : cb) candidates.push_back(linf_dist(p, q));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Smallest feasible candidate; feasibility is monotone in r.
    std::size_t lo = 0, hi = candidates.size() - 1;
    if (!feasible(ca, cb, candidates[hi]))
        throw ComputationError("bottleneck matching infeasible at the largest candidate");
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(ca, cb, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max(candidates[lo], inf_cost);
}

double hausdorff(const PointCloud& x, const PointCloud& y) {
    x.validate();
    y.validate();
    if (x.d() != y.d())
        throw ConfigError("hausdorff distance requires equal ambient dimensions");
    auto directed = [](const PointCloud& from, const PointCloud& to) {
        double worst = 0.0;
        for (std::size_t i = 0; i < from.n(); ++i) {
            double best = kInfiniteDeath;
            for (std::size_t j = 0; j < to.n(); ++j)
                best = std::min(best, (from.points.row(static_cast<Eigen::Index>(i)) -
                                       to.points.row(static_cast<Eigen::Index>(j)))
                                          .norm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(x, y), directed(y, x));
}

double linf_grid(const FeatureVector& a, const FeatureVector& b) {
    if (!(a.spec == b.spec) || a.dims != b.dims || a.values.size() != b.values.size())
        throw ConfigError("feature vectors were produced under different specs");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

void StabilityConfig::validate() const {
    if (!(L_f > 0.0)) throw ConfigError("stability config: L_f must be > 0");
    if (!(T > 0.0)) throw ConfigError("stability config: T must be > 0");
    if (N < 2) throw ConfigError("stability config: N must be >= 2");
    if (noise_sup < 0.0) throw ConfigError("stability config: noise_sup must be >= 0");
    if (m < 1 || tau < 1) throw ConfigError("stability config: m and tau must be >= 1");
    if ((m - 1) * tau >= N)
        throw ConfigError("stability config: window (m-1)*tau must be smaller than N");
    if (l < 1 || l > m) throw ConfigError("stability config: l must lie in [1, m]");
    if (trials < 1) throw ConfigError("stability config: trials must be >= 1");
}

double sampling_stability_bound(const StabilityConfig& cfg, double lambda_l) {
    cfg.validate();
    if (!(lambda_l > 0.0)) throw ConfigError("lambda_l must be > 0");
    const double sqrt_m = std::sqrt(static_cast<double>(cfg.m));
    const double lt = cfg.L_f * cfg.T;
    const double eps = cfg.noise_sup;
    return sqrt_m * eps +
           2.0 * static_cast<double>(cfg.m) * sqrt_m * lt * eps * (2.0 * lt + eps) / lambda_l +
           sqrt_m * lt / static_cast<double>(cfg.N);
}

} // namespace tda
