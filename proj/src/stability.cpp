#include "tda/stability.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "tda/errors.hpp"
#include "tda/pca.hpp"
#include "tda/rng.hpp"

namespace tda {

namespace {

constexpr std::size_t kRefine = 20;   // dense reference grid refinement
constexpr double kSnap = 1e-9;        // diagram quantization before bottleneck
constexpr double kNumericTol = 1e-8;  // covers snapping plus fp noise
constexpr int kSuiteNdim = 1;
constexpr std::size_t kGridCells = 256;

/// Test signal: a single sinusoid A*sin(omega*t + phase). For m >= 2 the
/// frequency is resonant with the window (omega * tau * dt = pi / m), which
/// makes the sliding-window image an exact circle inside a 2-plane through
/// the origin; for m = 1 the image is a segment of the line.
struct SuiteSignal {
    double omega = 0.0;
    double amplitude = 0.0;
    bool full_wrap = false; // dense embedding covers the whole circle
};

SuiteSignal make_signal(const StabilityConfig& cfg) {
    SuiteSignal sig;
    const double dt = cfg.T / static_cast<double>(cfg.N);
    if (cfg.m >= 2) {
        sig.omega = M_PI / (static_cast<double>(cfg.m) * static_cast<double>(cfg.tau) * dt);
    } else {
        const double periods = std::max(1.0, std::floor(static_cast<double>(cfg.N) / 8.0));
        sig.omega = 2.0 * M_PI * periods / cfg.T;
    }
    sig.amplitude = cfg.L_f / sig.omega;
    const std::size_t rows = cfg.N - (cfg.m - 1) * cfg.tau;
    sig.full_wrap = cfg.m >= 2 && rows >= 2 * cfg.m * cfg.tau + 1;
    return sig;
}

TimeSeries sample_signal(const SuiteSignal& sig, const StabilityConfig& cfg, double phase,
                         double noise_sup, Rng* rng) {
    TimeSeries x;
    x.dt = cfg.T / static_cast<double>(cfg.N);
    x.values.reserve(cfg.N);
    for (std::size_t i = 0; i < cfg.N; ++i) {
        double t = static_cast<double>(i) * x.dt;
        double v = sig.amplitude * std::sin(sig.omega * t + phase);
        if (noise_sup > 0.0 && rng) v += rng->uniform(-noise_sup, noise_sup);
        x.values.push_back(v);
    }
    return x;
}

/// Sliding-window image of the noiseless signal on a kRefine-times finer time
/// grid; coincident points (full-circle wraps) are merged.
PointCloud dense_reference_cloud(const SuiteSignal& sig, const StabilityConfig& cfg,
                                 double phase) {
    const double dt = cfg.T / static_cast<double>(cfg.N);
    const double step = dt / static_cast<double>(kRefine);
    const std::size_t rows = cfg.N - (cfg.m - 1) * cfg.tau;
    const std::size_t dense_rows = kRefine * (rows - 1) + 1;

    Eigen::MatrixXd pts(static_cast<Eigen::Index>(dense_rows), static_cast<Eigen::Index>(cfg.m));
    for (std::size_t i = 0; i < dense_rows; ++i) {
        double t = static_cast<double>(i) * step;
        for (std::size_t k = 0; k < cfg.m; ++k) {
            double tk = t + static_cast<double>(k * cfg.tau) * dt;
            pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                sig.amplitude * std::sin(sig.omega * tk + phase);
        }
    }

    // Merge duplicates via a coordinate-rounding key; distinct points are
    // separated by far more than the rounding pitch.
    std::vector<std::size_t> keep;
    {
        std::vector<std::size_t> order(dense_rows);
        std::iota(order.begin(), order.end(), 0);
        auto less_lex = [&](std::size_t a, std::size_t b) {
            for (std::size_t k = 0; k < cfg.m; ++k) {
                double va = pts(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k));
                double vb = pts(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(k));
                if (va != vb) return va < vb;
            }
            return false;
        };
        std::sort(order.begin(), order.end(), less_lex);
        const double tol = 1e-9;
        for (std::size_t idx = 0; idx < order.size(); ++idx) {
            if (!keep.empty()) {
                std::size_t prev = keep.back();
                double diff = 0.0;
                for (std::size_t k = 0; k < cfg.m; ++k)
                    diff = std::max(diff, std::abs(pts(static_cast<Eigen::Index>(order[idx]),
                                                       static_cast<Eigen::Index>(k)) -
                                                   pts(static_cast<Eigen::Index>(prev),
                                                       static_cast<Eigen::Index>(k))));
                if (diff <= tol) continue;
            }
            keep.push_back(order[idx]);
        }
    }
    Eigen::MatrixXd unique_pts(static_cast<Eigen::Index>(keep.size()),
                               static_cast<Eigen::Index>(cfg.m));
    for (std::size_t i = 0; i < keep.size(); ++i)
        unique_pts.row(static_cast<Eigen::Index>(i)) =
            pts.row(static_cast<Eigen::Index>(keep[i]));
    return PointCloud(std::move(unique_pts));
}

/// Common Rips threshold for coarse and dense diagrams, derived from the
/// noiseless coarse cloud's largest nearest-neighbor gap. Truncating both
/// diagrams at the same threshold never increases their bottleneck distance,
/// so the bound comparison stays valid.
double reference_threshold(const PointCloud& noiseless_coarse) {
    const std::size_t n = noiseless_coarse.n();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double d = (noiseless_coarse.points.row(static_cast<Eigen::Index>(i)) -
                        noiseless_coarse.points.row(static_cast<Eigen::Index>(j)))
                           .norm();
            if (d > 1e-12) best = std::min(best, d);
        }
        if (std::isfinite(best)) worst = std::max(worst, best);
    }
    double threshold = 2.2 * worst;
    return threshold > 0.0 ? threshold : 1.0;
}

PersistenceDiagram snapped(const PersistenceDiagram& dgm) {
    PersistenceDiagram out = dgm;
    for (auto& p : out.pairs) {
        p.birth = std::round(p.birth / kSnap) * kSnap;
        if (!p.is_infinite()) p.death = std::round(p.death / kSnap) * kSnap;
    }
    return out;
}

/// Truncate at the shared threshold and convert to the radius convention.
PersistenceDiagram finalize(const PersistenceDiagram& dgm, double threshold) {
    return truncate_infinite(dgm, threshold).converted(FiltrationScale::Radius);
}

} // namespace

StabilityReport run_stability_suite(const StabilityConfig& cfg) {
    cfg.validate();
    const SuiteSignal sig = make_signal(cfg);
    const double base_phase = cfg.m == 1 ? M_PI / 4.0 : 0.0;
    const EmbeddingParams embed{cfg.m, cfg.tau};

    // Reference structures are phase-independent: for a full wrap the dense
    // image is a rigid rotation of the phase-0 circle, otherwise trials reuse
    // the base phase.
    PointCloud ref_cloud = dense_reference_cloud(sig, cfg, base_phase);
    TimeSeries noiseless0 = sample_signal(sig, cfg, base_phase, 0.0, nullptr);
    PointCloud coarse0 = sliding_window_embed(noiseless0, embed);
    const double threshold = reference_threshold(coarse0);

    PersistenceDiagram ref_dgm =
        finalize(rips_persistence(distance_matrix(ref_cloud), kSuiteNdim, threshold), threshold);

    const double radius_max = threshold / 2.0;
    SummarySpec landscape_spec{SummaryKind::Landscape, 1, 1.0,
                               radius_max / static_cast<double>(kGridCells), radius_max,
                               FiltrationScale::Radius};
    SummarySpec silhouette_spec{SummaryKind::Silhouette, 1, 1.0,
                                radius_max / static_cast<double>(kGridCells), radius_max,
                                FiltrationScale::Radius};
    FeatureVector ref_landscape = vectorize(ref_dgm, landscape_spec);
    FeatureVector ref_silhouette = vectorize(ref_dgm, silhouette_spec);
    PersistenceDiagram ref_snapped = snapped(ref_dgm);

    const double slack = std::sqrt(static_cast<double>(cfg.m)) * cfg.L_f * cfg.T /
                         static_cast<double>(kRefine * cfg.N);

    StabilityReport report;
    report.config = cfg;
    report.max_ratio = 0.0;
    report.all_pass = true;

    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(cfg.seed, trial);
        double phase = base_phase;
        if (sig.full_wrap) phase = rng.uniform(0.0, 2.0 * M_PI);

        TimeSeries noiseless = sample_signal(sig, cfg, phase, 0.0, nullptr);
        TimeSeries noisy = sample_signal(sig, cfg, phase, cfg.noise_sup, &rng);

        PointCloud clean_cloud = sliding_window_embed(noiseless, embed);
        PointCloud noisy_cloud = sliding_window_embed(noisy, embed);

        // lambda from the noiseless sampled embedding, as the bound requires.
        PcaResult clean_pca = pca_project(clean_cloud, cfg.l, false);
        const double lambda = clean_pca.smallest_positive_eigenvalue();

        PcaResult pca = pca_project(noisy_cloud, cfg.l, false);
        PersistenceDiagram coarse_dgm = finalize(
            rips_persistence(distance_matrix(pca.projected), kSuiteNdim, threshold), threshold);

        PersistenceDiagram coarse_snapped = snapped(coarse_dgm);
        double db = 0.0;
        for (int dim = 0; dim <= kSuiteNdim; ++dim)
            db = std::max(db, bottleneck(coarse_snapped, ref_snapped, dim));

        double l_land = linf_grid(vectorize(coarse_dgm, landscape_spec), ref_landscape);
        double l_sil = linf_grid(vectorize(coarse_dgm, silhouette_spec), ref_silhouette);

        StabilityTrial t;
        t.index = trial;
        t.observed_db = db;
        t.observed_landscape = l_land;
        t.observed_silhouette = l_sil;
        t.bound_rhs = sampling_stability_bound(cfg, lambda);
        t.slack = slack;
        t.lambda_l = lambda;
        const double tol = t.bound_rhs + t.slack + kNumericTol;
        t.pass = db <= tol && l_land <= tol && l_sil <= tol;

        double denom = t.bound_rhs + t.slack;
        report.max_ratio = std::max(
            {report.max_ratio, db / denom, l_land / denom, l_sil / denom});
        report.all_pass = report.all_pass && t.pass;
        report.trials.push_back(t);
    }
    return report;
}

std::string StabilityReport::to_json() const {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(stability_config_to_json(config));
    j["all_pass"] = all_pass;
    j["max_ratio"] = max_ratio;
    j["trials"] = nlohmann::json::array();
    for (const auto& t : trials) {
        j["trials"].push_back({{"index", t.index},
                               {"observed_db", t.observed_db},
                               {"observed_landscape", t.observed_landscape},
                               {"observed_silhouette", t.observed_silhouette},
                               {"bound_rhs", t.bound_rhs},
                               {"slack", t.slack},
                               {"lambda_l", t.lambda_l},
                               {"pass", t.pass}});
    }
    return j.dump(2);
}

void StabilityReport::save_json(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open file for writing: " + path);
    out << to_json() << '\n';
}

StabilityConfig stability_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid stability config JSON: ") + e.what());
    }
    StabilityConfig cfg;
    cfg.L_f = j.value("L_f", cfg.L_f);
    cfg.T = j.value("T", cfg.T);
    cfg.N = j.value("N", cfg.N);
    cfg.noise_sup = j.value("noise_sup", cfg.noise_sup);
    cfg.m = j.value("m", cfg.m);
    cfg.tau = j.value("tau", cfg.tau);
    cfg.l = j.value("l", cfg.l);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.validate();
    return cfg;
}

std::string stability_config_to_json(const StabilityConfig& cfg) {
    nlohmann::json j{{"L_f", cfg.L_f}, {"T", cfg.T},     {"N", cfg.N},
                     {"noise_sup", cfg.noise_sup},       {"m", cfg.m},
                     {"tau", cfg.tau}, {"l", cfg.l},     {"trials", cfg.trials},
                     {"seed", cfg.seed}};
    return j.dump(2);
}

} // namespace tda
