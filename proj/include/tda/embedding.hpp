#ifndef TDA_EMBEDDING_HPP
#define TDA_EMBEDDING_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <string>

#include "tda/timeseries.hpp"

namespace tda {

/// n points in d-dimensional Euclidean space; one point per row.
struct PointCloud {
    Eigen::MatrixXd points;

    PointCloud() = default;
    explicit PointCloud(Eigen::MatrixXd pts) : points(std::move(pts)) {}

    std::size_t n() const { return static_cast<std::size_t>(points.rows()); }
    std::size_t d() const { return static_cast<std::size_t>(points.cols()); }

    /// Throws ConfigError unless all entries are finite, n >= 1 and d >= 1.
    void validate() const;

    /// One point per row, comma-separated coordinates.
    void write_csv(const std::string& path) const;
};

/// Sliding-window (Takens) parameters: window dimension m and delay tau, both
/// in samples. Valid for a series of length len iff (m-1)*tau < len.
struct EmbeddingParams {
    std::size_t m = 1;
    std::size_t tau = 1;

    void validate(std::size_t series_len) const;
};

/// Trajectory matrix of the series: row i = [x_i, x_{i+tau}, ..., x_{i+(m-1)tau}]
/// for i = 0 .. len-1-(m-1)*tau, so the cloud has len - (m-1)*tau points of
/// dimension m.
PointCloud sliding_window_embed(const TimeSeries& x, const EmbeddingParams& p);

/// Smallest k such that the top-k singular values of the cloud matrix capture
/// at least `threshold` of the total squared singular mass; never less than 1.
std::size_t estimate_embedding_dim(const PointCloud& cloud, double threshold = 0.99);

/// Smallest lag in [1, max_lag] at which the sample autocorrelation first
/// drops below 1/e; max_lag if it never does. Constant series are an error.
std::size_t estimate_delay_acf(const TimeSeries& x, std::size_t max_lag);

} // namespace tda

#endif
