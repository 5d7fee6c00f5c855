#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tda/embedding.hpp"
#include "tda/errors.hpp"
#include "tda/rng.hpp"

using namespace tda;

TEST_CASE("sliding_window_embed lays out trajectory rows") {
    TimeSeries x{{0.0, 1.0, 2.0, 3.0, 4.0, 5.0}, 1.0, 0.0};
    PointCloud cloud = sliding_window_embed(x, {3, 1});
    REQUIRE(cloud.n() == 4);
    REQUIRE(cloud.d() == 3);
    CHECK(cloud.points(0, 0) == 0.0);
    CHECK(cloud.points(0, 2) == 2.0);
    CHECK(cloud.points(3, 0) == 3.0);
    CHECK(cloud.points(3, 2) == 5.0);

    SUBCASE("m = 1 is the identity embedding") {
        PointCloud identity = sliding_window_embed(x, {1, 4});
        CHECK(identity.n() == x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(identity.points(static_cast<Eigen::Index>(i), 0) == x.values[i]);
    }

    SUBCASE("window longer than the series is an error") {
        CHECK_THROWS_AS(sliding_window_embed(x, {4, 2}), ConfigError);
    }
}

TEST_CASE("embedding of a 250-sample series with m=25 tau=5 has 130 rows") {
    Rng rng(99);
    TimeSeries x;
    for (int i = 0; i < 250; ++i) x.values.push_back(rng.normal());
    PointCloud cloud = sliding_window_embed(x, {25, 5});
    CHECK(cloud.n() == 130);
    CHECK(cloud.d() == 25);
}

TEST_CASE("embedding rows are contiguous slices of the series") {
    Rng rng(123);
    TimeSeries x;
    for (int i = 0; i < 100; ++i) x.values.push_back(rng.normal());
    for (std::size_t tau : {1ul, 3ul, 7ul}) {
        PointCloud cloud = sliding_window_embed(x, {5, tau});
        for (std::size_t i = 0; i < cloud.n(); ++i)
            CHECK(cloud.points(static_cast<Eigen::Index>(i), 0) == x.values[i]);
    }
}

TEST_CASE("embedding transfers sup-norm perturbations with factor sqrt(m)") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        TimeSeries x, y;
        double sup = 0.0;
        for (int i = 0; i < 80; ++i) {
            double v = rng.normal();
            double eps = 0.1 * rng.uniform(-1.0, 1.0);
            x.values.push_back(v);
            y.values.push_back(v + eps);
            sup = std::max(sup, std::abs(eps));
        }
        EmbeddingParams p{6, 2};
        PointCloud cx = sliding_window_embed(x, p);
        PointCloud cy = sliding_window_embed(y, p);
        double worst = 0.0;
        for (std::size_t i = 0; i < cx.n(); ++i)
            worst = std::max(worst, (cx.points.row(static_cast<Eigen::Index>(i)) -
                                     cy.points.row(static_cast<Eigen::Index>(i)))
                                        .norm());
        CHECK(worst <= std::sqrt(6.0) * sup + 1e-12);
    }
}

TEST_CASE("periodic series embed to at most P distinct points") {
    const std::size_t period = 8;
    TimeSeries x;
    for (std::size_t i = 0; i < 64; ++i)
        x.values.push_back(std::sin(2.0 * M_PI * static_cast<double>(i % period) /
                                    static_cast<double>(period)));
    PointCloud cloud = sliding_window_embed(x, {3, 2});
    std::vector<std::vector<double>> distinct;
    for (std::size_t i = 0; i < cloud.n(); ++i) {
        std::vector<double> row{cloud.points(static_cast<Eigen::Index>(i), 0),
                                cloud.points(static_cast<Eigen::Index>(i), 1),
                                cloud.points(static_cast<Eigen::Index>(i), 2)};
        bool seen = false;
        for (const auto& other : distinct) {
            double diff = std::max({std::abs(row[0] - other[0]), std::abs(row[1] - other[1]),
                                    std::abs(row[2] - other[2])});
            if (diff < 1e-12) seen = true;
        }
        if (!seen) distinct.push_back(row);
    }
    CHECK(distinct.size() <= period);
}

TEST_CASE("estimate_embedding_dim recovers planted ranks") {
    SUBCASE("rank-2 cloud in 5 dimensions") {
        Rng rng(42);
        Eigen::MatrixXd basis(2, 5);
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 5; ++j) basis(i, j) = rng.normal();
        Eigen::MatrixXd coeff(40, 2);
        for (Eigen::Index i = 0; i < 40; ++i)
            for (Eigen::Index j = 0; j < 2; ++j) coeff(i, j) = rng.normal();
        PointCloud cloud(coeff * basis);
        CHECK(estimate_embedding_dim(cloud, 0.99) == 2);
    }

    SUBCASE("single repeated point at the origin returns 1") {
        PointCloud cloud(Eigen::MatrixXd::Zero(5, 3));
        CHECK(estimate_embedding_dim(cloud, 0.99) == 1);
    }

    SUBCASE("orthonormal rows at threshold 0.5 need half the directions") {
        PointCloud cloud(Eigen::MatrixXd::Identity(4, 4));
        CHECK(estimate_embedding_dim(cloud, 0.5) == 2);
    }
}

TEST_CASE("estimate_delay_acf finds the 1/e crossing") {
    SUBCASE("white noise decorrelates at lag 1") {
        Rng rng(5);
        TimeSeries x;
        for (int i = 0; i < 2000; ++i) x.values.push_back(rng.normal());
        CHECK(estimate_delay_acf(x, 50) == 1);
    }

    SUBCASE("pure cosine crosses near the analytic lag") {
        const double period = 40.0;
        TimeSeries x;
        for (int i = 0; i < 4000; ++i)
            x.values.push_back(std::cos(2.0 * M_PI * static_cast<double>(i) / period));
        // Analytic ACF is cos(2 pi k / P); the first lag below 1/e is 8.
        std::size_t analytic = 0;
        for (std::size_t k = 1; k <= 40; ++k)
            if (std::cos(2.0 * M_PI * static_cast<double>(k) / period) < 1.0 / M_E) {
                analytic = k;
                break;
            }
        CHECK(analytic == 8);
        std::size_t estimated = estimate_delay_acf(x, 40);
        CHECK(estimated >= analytic - 1);
        CHECK(estimated <= analytic + 1);
    }

    SUBCASE("constant series has no usable autocorrelation") {
        TimeSeries flat{{2.0, 2.0, 2.0, 2.0, 2.0}, 1.0, 0.0};
        CHECK_THROWS_AS(estimate_delay_acf(flat, 2), ConfigError);
    }

    SUBCASE("slowly decaying series falls back to max_lag") {
        TimeSeries x;
        for (int i = 0; i < 100; ++i) x.values.push_back(static_cast<double>(i));
        CHECK(estimate_delay_acf(x, 3) == 3);
    }
}
