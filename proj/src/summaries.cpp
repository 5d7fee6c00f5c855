#include "tda/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tda/errors.hpp"

namespace tda {

std::string to_string(SummaryKind kind) {
    return kind == SummaryKind::Landscape ? "landscape" : "silhouette";
}

SummaryKind parse_summary_kind(const std::string& name) {
    if (name == "landscape") return SummaryKind::Landscape;
    if (name == "silhouette") return SummaryKind::Silhouette;
    throw ConfigError("unknown summary kind: " + name);
}

std::size_t SummarySpec::grid_size() const {
    return static_cast<std::size_t>(std::ceil(d_max / kappa));
}

void SummarySpec::validate() const {
    if (!(kappa > 0.0)) throw ConfigError("summary kappa must be > 0");
    if (!(d_max > 0.0)) throw ConfigError("summary d_max must be > 0");
    if (kind == SummaryKind::Landscape && order < 1)
        throw ConfigError("landscape order must be >= 1");
    if (kind == SummaryKind::Silhouette && !(q > 0.0))
        throw ConfigError("silhouette power q must be > 0");
}

std::vector<double> FeatureVector::block(int dim) const {
    auto it = std::find(dims.begin(), dims.end(), dim);
    if (it == dims.end())
        throw ConfigError("feature vector has no block for dimension " + std::to_string(dim));
    std::size_t offset = static_cast<std::size_t>(it - dims.begin()) * block_size();
    return std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(offset),
                               values.begin() + static_cast<std::ptrdiff_t>(offset + block_size()));
}

std::string FeatureVector::to_json() const {
    nlohmann::json j;
    j["spec"] = {{"kind", tda::to_string(spec.kind)}, {"order", spec.order},
                 {"q", spec.q},                       {"kappa", spec.kappa},
                 {"d_max", spec.d_max},               {"scale", tda::to_string(spec.scale)}};
    j["dims"] = dims;
    j["concatenated"] = concatenated;
    j["values"] = values;
    return j.dump(2);
}

std::string FeatureVector::to_csv_row() const {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out << ',';
        out << values[i];
    }
    return out.str();
}

double tent(const PersistencePair& p, double t) {
    if (p.is_infinite())
        throw ConfigError("tent function requires a finite death; truncate the diagram first");
    if (!(p.birth < p.death)) throw ConfigError("tent function requires birth < death");
    const double mid = 0.5 * (p.birth + p.death);
    if (t < p.birth || t > p.death) return 0.0;
    return t <= mid ? t - p.birth : p.death - t;
}

double landscape_eval(const std::vector<PersistencePair>& pairs, std::size_t j, double t) {
    if (j < 1) throw ConfigError("landscape order must be >= 1");
    if (pairs.size() < j) return 0.0;
    std::vector<double> heights;
    heights.reserve(pairs.size());
    for (const auto& p : pairs) heights.push_back(tent(p, t));
    std::nth_element(heights.begin(), heights.begin() + static_cast<std::ptrdiff_t>(j - 1),
                     heights.end(), std::greater<double>());
    return std::max(0.0, heights[j - 1]);
}

double silhouette_eval(const std::vector<PersistencePair>& pairs, double q, double t) {
    if (!(q > 0.0)) throw ConfigError("silhouette power q must be > 0");
    if (pairs.empty()) return 0.0;
    // Weights are normalized by the largest persistence before raising to q,
    // so large q stays finite.
    double max_pers = 0.0;
    for (const auto& p : pairs) max_pers = std::max(max_pers, p.death - p.birth);
    if (max_pers <= 0.0) return 0.0;
    double num = 0.0, den = 0.0;
    for (const auto& p : pairs) {
        double w = std::pow((p.death - p.birth) / max_pers, q);
        num += w * tent(p, t);
        den += w;
    }
    return den > 0.0 ? num / den : 0.0;
}

PersistenceDiagram truncate_infinite(const PersistenceDiagram& dgm, double d_max) {
    if (!(d_max > 0.0)) throw ConfigError("truncation d_max must be > 0");
    PersistenceDiagram out;
    out.n_dim = dgm.n_dim;
    out.scale = dgm.scale;
    for (const auto& p : dgm.pairs) {
        if (p.birth >= d_max) continue;
        PersistencePair q = p;
        if (q.is_infinite() || q.death > d_max) q.death = d_max;
        out.pairs.push_back(q);
    }
    return out;
}

FeatureVector vectorize(const PersistenceDiagram& dgm, const SummarySpec& spec) {
    spec.validate();
    if (dgm.scale != spec.scale)
        throw ConfigError("summary spec uses the " + tda::to_string(spec.scale) +
                          " convention but the diagram is tagged " + tda::to_string(dgm.scale));

    FeatureVector fv;
    fv.spec = spec;
    const std::size_t grid = spec.grid_size();
    fv.values.reserve(grid * static_cast<std::size_t>(dgm.n_dim + 1));
    for (int dim = 0; dim <= dgm.n_dim; ++dim) {
        fv.dims.push_back(dim);
        auto pairs = dgm.pairs_of_dim(dim);
        for (std::size_t i = 0; i < grid; ++i) {
            double t = spec.grid_point(i);
            double v = spec.kind == SummaryKind::Landscape
                           ? landscape_eval(pairs, spec.order, t)
                           : silhouette_eval(pairs, spec.q, t);
            fv.values.push_back(v);
        }
    }
    return fv;
}

} // namespace tda
