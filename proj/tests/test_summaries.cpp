#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tda/errors.hpp"
#include "tda/metrics.hpp"
#include "tda/summaries.hpp"

using namespace tda;

TEST_CASE("tent evaluates the triangular hat") {
    PersistencePair p{1, 0.0, 2.0};
    CHECK(tent(p, 1.0) == doctest::Approx(1.0));
    CHECK(tent(p, 3.0) == 0.0);
    CHECK(tent({1, 1.0, 3.0}, 1.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(tent({0, 0.0, kInfiniteDeath}, 1.0), ConfigError);
}

TEST_CASE("landscape_eval takes the j-th largest tent") {
    std::vector<PersistencePair> pairs{{1, 0.0, 2.0}, {1, 1.0, 3.0}};
    CHECK(landscape_eval(pairs, 1, 1.0) == doctest::Approx(1.0));
    CHECK(landscape_eval(pairs, 2, 1.5) == doctest::Approx(0.5));
    CHECK(landscape_eval({}, 1, 0.7) == 0.0);
    CHECK(landscape_eval({}, 4, 0.7) == 0.0);
}

TEST_CASE("silhouette_eval is the power-weighted tent average") {
    std::vector<PersistencePair> single{{1, 0.0, 2.0}};
    CHECK(silhouette_eval(single, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(silhouette_eval(single, 7.0, 1.0) == doctest::Approx(1.0));

    std::vector<PersistencePair> two{{1, 0.0, 2.0}, {1, 0.0, 4.0}};
    // (2*0 + 4*2) / 6 at t = 2.
    CHECK(silhouette_eval(two, 1.0, 2.0) == doctest::Approx(4.0 / 3.0));
    CHECK(silhouette_eval({}, 1.0, 0.3) == 0.0);
}

TEST_CASE("high-power silhouettes converge to the first landscape") {
    // Diagrams with one dominant pair and strictly nested shorter pairs, so
    // the dominant tent is the upper envelope.
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        double birth = rng.uniform(0.0, 0.5);
        double death = birth + 1.0 + rng.uniform(0.0, 1.0);
        std::vector<PersistencePair> pairs{{1, birth, death}};
        std::size_t extras = rng.below(7);
        for (std::size_t i = 0; i < extras; ++i) {
            double b = rng.uniform(birth, death - 0.1);
            double span = (death - birth) * 0.8;
            double d = std::min(death, b + rng.uniform(0.05, span));
            if (d - b > 0.8 * (death - birth)) continue;
            pairs.push_back({1, b, d});
        }
        double max_half_life = 0.0;
        for (const auto& p : pairs) max_half_life = std::max(max_half_life, p.half_life());
        double worst = 0.0;
        for (int g = 0; g < 200; ++g) {
            double t = death * static_cast<double>(g) / 199.0;
            worst = std::max(worst, std::abs(silhouette_eval(pairs, 50.0, t) -
                                             landscape_eval(pairs, 1, t)));
        }
        CHECK(worst <= 1e-3 * max_half_life);
    }
}

TEST_CASE("truncate_infinite clamps deaths and drops late births") {
    PersistenceDiagram dgm;
    dgm.n_dim = 0;
    dgm.pairs = {{0, 0.0, kInfiniteDeath}, {0, 0.0, 0.5}, {0, 1.2, kInfiniteDeath}};
    auto t = truncate_infinite(dgm, 1.0);
    REQUIRE(t.pairs.size() == 2);
    CHECK(t.pairs[0].death == doctest::Approx(1.0));
    CHECK(t.pairs[1].death == doctest::Approx(0.5));
}

TEST_CASE("vectorize samples cell midpoints") {
    SummarySpec spec;
    spec.kind = SummaryKind::Landscape;
    spec.order = 1;
    spec.kappa = 0.25;
    spec.d_max = 1.0;

    SUBCASE("grid points sit at (i + 0.5) * kappa") {
        REQUIRE(spec.grid_size() == 4);
        CHECK(spec.grid_point(0) == doctest::Approx(0.125));
        CHECK(spec.grid_point(3) == doctest::Approx(0.875));
    }

    SUBCASE("empty diagram gives the zero vector of full length") {
        PersistenceDiagram empty;
        empty.n_dim = 2;
        FeatureVector fv = vectorize(empty, spec);
        REQUIRE(fv.values.size() == 12);
        for (double v : fv.values) CHECK(v == 0.0);
    }

    SUBCASE("single H1 pair lands tent samples on the grid") {
        PersistenceDiagram dgm;
        dgm.n_dim = 1;
        dgm.pairs = {{1, 0.2, 0.8}};
        FeatureVector fv = vectorize(dgm, spec);
        auto h1 = fv.block(1);
        REQUIRE(h1.size() == 4);
        CHECK(h1[0] == doctest::Approx(0.0));
        CHECK(h1[1] == doctest::Approx(0.175));
        CHECK(h1[2] == doctest::Approx(0.175));
        CHECK(h1[3] == doctest::Approx(0.0));
    }

    SUBCASE("scale mismatch is rejected") {
        PersistenceDiagram dgm;
        dgm.n_dim = 0;
        dgm.scale = FiltrationScale::Radius;
        CHECK_THROWS_AS(vectorize(dgm, spec), ConfigError);
    }
}

TEST_CASE("landscape orders are pointwise decreasing and bounded") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        auto dgm = helpers::random_diagram(rng, 8, 1);
        double max_half_life = 0.0;
        for (const auto& p : dgm.pairs) max_half_life = std::max(max_half_life, p.half_life());
        for (int g = 0; g < 50; ++g) {
            double t = rng.uniform(0.0, 4.0);
            double prev = kInfiniteDeath;
            for (std::size_t j = 1; j <= 4; ++j) {
                double v = landscape_eval(dgm.pairs, j, t);
                CHECK(v >= 0.0);
                CHECK(v <= max_half_life + 1e-12);
                CHECK(v <= prev);
                prev = v;
            }
            double s = silhouette_eval(dgm.pairs, 2.0, t);
            CHECK(s >= 0.0);
            CHECK(s <= max_half_life + 1e-12);
        }
    }
}

TEST_CASE("landscapes and silhouettes are 1-Lipschitz in t") {
    Rng rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        auto dgm = helpers::random_diagram(rng, 8, 1);
        if (dgm.pairs.empty()) continue;
        for (int g = 0; g < 100; ++g) {
            double t1 = rng.uniform(0.0, 4.0);
            double t2 = rng.uniform(0.0, 4.0);
            CHECK(std::abs(landscape_eval(dgm.pairs, 1, t1) - landscape_eval(dgm.pairs, 1, t2)) <=
                  std::abs(t1 - t2) + 1e-12);
            CHECK(std::abs(silhouette_eval(dgm.pairs, 1.0, t1) -
                           silhouette_eval(dgm.pairs, 1.0, t2)) <= std::abs(t1 - t2) + 1e-12);
        }
    }
}

TEST_CASE("grid landscape distance is controlled by the bottleneck distance") {
    Rng rng(44);
    SummarySpec spec;
    spec.kind = SummaryKind::Landscape;
    spec.order = 1;
    spec.kappa = 0.02;
    spec.d_max = 4.0;
    for (int trial = 0; trial < 25; ++trial) {
        auto d1 = helpers::random_diagram(rng, 6, 0);
        auto d2 = helpers::random_diagram(rng, 6, 0);
        auto t1 = truncate_infinite(d1, spec.d_max);
        auto t2 = truncate_infinite(d2, spec.d_max);
        double grid_dist = linf_grid(vectorize(t1, spec), vectorize(t2, spec));
        double db = bottleneck(t1, t2, 0);
        CHECK(grid_dist <= db + spec.kappa);
    }
}

TEST_CASE("feature vector length is (n_dim + 1) * ceil(d_max / kappa)") {
    Rng rng(66);
    for (int trial = 0; trial < 10; ++trial) {
        SummarySpec spec;
        spec.kind = trial % 2 == 0 ? SummaryKind::Landscape : SummaryKind::Silhouette;
        spec.kappa = rng.uniform(0.01, 0.3);
        spec.d_max = rng.uniform(0.5, 3.0);
        PersistenceDiagram dgm = helpers::random_diagram(rng, 5, 0);
        dgm.n_dim = static_cast<int>(rng.below(3));
        auto trunc = truncate_infinite(dgm, spec.d_max);
        trunc.n_dim = dgm.n_dim;
        FeatureVector fv = vectorize(trunc, spec);
        CHECK(fv.values.size() ==
              static_cast<std::size_t>(dgm.n_dim + 1) *
                  static_cast<std::size_t>(std::ceil(spec.d_max / spec.kappa)));
    }
}
