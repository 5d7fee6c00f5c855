#include <doctest.h>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "oracles.hpp"
#include "tda/errors.hpp"
#include "tda/metrics.hpp"
#include "tda/persistence.hpp"
#include "tda/rng.hpp"

using namespace tda;

TEST_CASE("distance_matrix computes Euclidean distances") {
    PointCloud cloud = helpers::cloud_from_rows({{0.0, 0.0}, {3.0, 4.0}});
    DistanceMatrix dm = distance_matrix(cloud);
    CHECK(dm.at(0, 1) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(dm.at(1, 0) == dm.at(0, 1));
    CHECK(dm.at(0, 0) == 0.0);

    PointCloud single = helpers::cloud_from_rows({{1.0, 2.0}});
    DistanceMatrix one = distance_matrix(single);
    CHECK(one.n == 1);

    PointCloud dup = helpers::cloud_from_rows({{1.0, 1.0}, {1.0, 1.0}});
    CHECK(distance_matrix(dup).at(0, 1) == 0.0);
}

TEST_CASE("two points yield one essential and one merge pair") {
    PointCloud cloud = helpers::cloud_from_rows({{0.0}, {0.75}});
    auto dgm = rips_persistence(distance_matrix(cloud), 0, 10.0);
    REQUIRE(dgm.pairs.size() == 2);
    CHECK(dgm.pairs[0].birth == 0.0);
    CHECK(dgm.pairs[0].death == doctest::Approx(0.75));
    CHECK(dgm.pairs[1].is_infinite());
}

TEST_CASE("unit square has one H1 class from edge length to diagonal") {
    PointCloud cloud =
        helpers::cloud_from_rows({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    auto dgm = rips_persistence(distance_matrix(cloud), 1, 2.0);
    auto h1 = dgm.pairs_of_dim(1);
    REQUIRE(h1.size() == 1);
    CHECK(h1[0].birth == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h1[0].death == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("ten equally spaced circle points carry one dominant H1 feature") {
    Eigen::MatrixXd pts(10, 2);
    for (int i = 0; i < 10; ++i) {
        double theta = 2.0 * M_PI * static_cast<double>(i) / 10.0;
        pts(i, 0) = std::cos(theta);
        pts(i, 1) = std::sin(theta);
    }
    PointCloud cloud{pts};
    DistanceMatrix dm = distance_matrix(cloud);
    auto dgm = rips_persistence(dm, 1, 10.0);
    auto h1 = dgm.pairs_of_dim(1);
    REQUIRE(h1.size() == 1);
    // Birth is the decagon side 2*sin(pi/10); death matches the brute-force
    // oracle on the same instance.
    CHECK(h1[0].birth == doctest::Approx(2.0 * std::sin(M_PI / 10.0)).epsilon(1e-12));
    auto reference = oracle::naive_rips(dm, 1, 10.0);
    auto ref_h1 = reference.pairs_of_dim(1);
    REQUIRE(ref_h1.size() == 1);
    CHECK(h1[0].birth == ref_h1[0].birth);
    CHECK(h1[0].death == ref_h1[0].death);
    CHECK(h1[0].death - h1[0].birth > 0.5); // dominant feature
}

TEST_CASE("h0_union_find traces Kruskal merges") {
    SUBCASE("three collinear points") {
        PointCloud cloud = helpers::cloud_from_rows({{0.0}, {1.0}, {2.0}});
        auto dgm = h0_union_find(distance_matrix(cloud), 10.0);
        REQUIRE(dgm.pairs.size() == 3);
        CHECK(dgm.pairs[0].death == doctest::Approx(1.0));
        CHECK(dgm.pairs[1].death == doctest::Approx(1.0));
        CHECK(dgm.pairs[2].is_infinite());
    }

    SUBCASE("single point") {
        PointCloud cloud = helpers::cloud_from_rows({{0.0}});
        auto dgm = h0_union_find(distance_matrix(cloud), 1.0);
        REQUIRE(dgm.pairs.size() == 1);
        CHECK(dgm.pairs[0].is_infinite());
    }

    SUBCASE("two clusters merge exactly at the gap") {
        PointCloud cloud = helpers::cloud_from_rows(
            {{0.0}, {0.1}, {0.2}, {5.0}, {5.1}, {5.15}});
        auto dgm = h0_union_find(distance_matrix(cloud), 10.0);
        double last_finite = 0.0;
        for (const auto& p : dgm.pairs)
            if (!p.is_infinite()) last_finite = std::max(last_finite, p.death);
        CHECK(last_finite == doctest::Approx(4.8).epsilon(1e-12));
    }
}

TEST_CASE("reduction H0 equals the union-find oracle on random clouds") {
    Rng rng(404);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng.below(24);
        PointCloud cloud = helpers::random_cloud(rng, n, 1 + rng.below(3));
        double d_max = trial % 3 == 0 ? 1.0 : 1e9; // also exercise truncation
        DistanceMatrix dm = distance_matrix(cloud);
        auto reduced = rips_persistence(dm, 0, d_max);
        auto kruskal = h0_union_find(dm, d_max);
        CHECK(helpers::same_pairs(reduced.pairs, kruskal.pairs));
    }
}

TEST_CASE("clearing-optimized reduction equals the naive oracle") {
    Rng rng(808);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng.below(9);
        PointCloud cloud = helpers::random_cloud(rng, n, 1 + rng.below(3));
        double d_max = trial % 4 == 0 ? 1.5 : 1e9;
        DistanceMatrix dm = distance_matrix(cloud);
        auto fast = rips_persistence(dm, 2, d_max);
        auto slow = oracle::naive_rips(dm, 2, d_max);
        CHECK(helpers::same_pairs(fast.pairs, slow.pairs));
    }
}

TEST_CASE("every face enters the filtration no later than its coface") {
    Rng rng(55);
    PointCloud cloud = helpers::random_cloud(rng, 12, 3);
    auto simplices = rips_simplices(distance_matrix(cloud), 3, 1e9);
    std::map<std::vector<std::int32_t>, double> value_of;
    for (const auto& s : simplices) value_of[s.vertices] = s.value;
    for (const auto& s : simplices) {
        if (s.dim() == 0) {
            CHECK(s.value == 0.0);
            continue;
        }
        for (std::size_t omit = 0; omit < s.vertices.size(); ++omit) {
            std::vector<std::int32_t> face;
            for (std::size_t i = 0; i < s.vertices.size(); ++i)
                if (i != omit) face.push_back(s.vertices[i]);
            REQUIRE(value_of.count(face) == 1);
            CHECK(value_of[face] <= s.value);
        }
    }
}

TEST_CASE("diagrams scale with the point cloud") {
    Rng rng(606);
    PointCloud cloud = helpers::random_cloud(rng, 15, 2);
    PointCloud scaled{cloud.points * 3.5};
    auto base = rips_persistence(distance_matrix(cloud), 1, 1e9);
    auto big = rips_persistence(distance_matrix(scaled), 1, 1e9);
    REQUIRE(base.pairs.size() == big.pairs.size());
    for (std::size_t i = 0; i < base.pairs.size(); ++i) {
        CHECK(big.pairs[i].dim == base.pairs[i].dim);
        CHECK(big.pairs[i].birth == doctest::Approx(3.5 * base.pairs[i].birth).epsilon(1e-9));
        if (base.pairs[i].is_infinite())
            CHECK(big.pairs[i].is_infinite());
        else
            CHECK(big.pairs[i].death == doctest::Approx(3.5 * base.pairs[i].death).epsilon(1e-9));
    }
}

TEST_CASE("perturbed clouds keep diagrams within twice the Hausdorff distance") {
    Rng rng(707);
    for (int trial = 0; trial < 20; ++trial) {
        PointCloud cloud = helpers::random_cloud(rng, 14, 2);
        PointCloud moved = cloud;
        for (Eigen::Index i = 0; i < moved.points.rows(); ++i)
            for (Eigen::Index j = 0; j < moved.points.cols(); ++j)
                moved.points(i, j) += 0.05 * rng.uniform(-1.0, 1.0);
        double h = hausdorff(cloud, moved);
        auto da = rips_persistence(distance_matrix(cloud), 1, 1e9);
        auto db = rips_persistence(distance_matrix(moved), 1, 1e9);
        for (int dim = 0; dim <= 1; ++dim) {
            double d = bottleneck(da, db, dim);
            CHECK(d <= 2.0 * h + 1e-9);
        }
    }
}

TEST_CASE("simplex cap aborts oversized filtrations") {
    Rng rng(99);
    PointCloud cloud = helpers::random_cloud(rng, 30, 2);
    RipsOptions opts;
    opts.simplex_cap = 100;
    CHECK_THROWS_AS(rips_persistence(distance_matrix(cloud), 2, 1e9, opts), ComputationError);
}

TEST_CASE("diagram JSON round-trips including infinite deaths") {
    PersistenceDiagram dgm;
    dgm.n_dim = 1;
    dgm.scale = FiltrationScale::Diameter;
    dgm.pairs = {{0, 0.0, kInfiniteDeath}, {0, 0.0, 0.25}, {1, 0.5, 0.9}};
    auto round = PersistenceDiagram::from_json(dgm.to_json());
    CHECK(round.scale == dgm.scale);
    CHECK(helpers::same_pairs(round.pairs, dgm.pairs));
}

TEST_CASE("scale conversion halves diameters and is reversible") {
    PersistenceDiagram dgm;
    dgm.n_dim = 0;
    dgm.pairs = {{0, 0.0, 1.0}, {0, 0.2, kInfiniteDeath}};
    auto radius = dgm.converted(FiltrationScale::Radius);
    CHECK(radius.pairs[0].death == doctest::Approx(0.5));
    CHECK(radius.pairs[1].birth == doctest::Approx(0.1));
    CHECK(radius.pairs[1].is_infinite());
    auto back = radius.converted(FiltrationScale::Diameter);
    CHECK(helpers::same_pairs(back.pairs, dgm.pairs));
}

TEST_CASE("bottleneck requires matching conventions") {
    PersistenceDiagram a, b;
    a.scale = FiltrationScale::Diameter;
    b.scale = FiltrationScale::Radius;
    CHECK_THROWS_AS(bottleneck(a, b, 0), ConfigError);
}
