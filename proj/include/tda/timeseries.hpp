#ifndef TDA_TIMESERIES_HPP
#define TDA_TIMESERIES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tda {

/// Ordered real-valued samples at a fixed sampling interval.
struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;     // sampling interval, > 0
    double origin = 0.0; // start time

    std::size_t size() const { return values.size(); }

    /// Throws ConfigError if any invariant (finite values, length >= 1, dt > 0) fails.
    void validate() const;
};

enum class GeneratorKind { Arima112, CompositeSinusoid, OrnsteinUhlenbeck };

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

/// Seeded specification of a synthetic sequence. `params` holds kind-specific
/// overrides; unknown keys are rejected so typos surface early.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Arima112;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
    std::size_t n = 1;
    double dt = 1.0;

    double param_or(const std::string& key, double fallback) const;
};

/// Read one numeric column of a CSV file. `column` is a header name or a
/// 0-based index; `dt` is attached to the result as the sampling interval.
TimeSeries load_csv(const std::string& path, const std::string& column, double dt = 1.0);

/// Single-period returns r_t = (p_t - p_{t-1}) / p_{t-1}. Output is one
/// shorter than the input; any zero price is an error.
TimeSeries returns(const TimeSeries& prices);

/// x_t = x_{t-1} + phi1*(x_{t-1} - x_{t-2}) - theta1*e_{t-1} - theta2*e_{t-2},
/// e_t i.i.d. standard normal scaled by `noise_scale`. Starts from
/// x_{-1} = x_{-2} = 0 and e_{-1} = e_{-2} = 0; `burnin` extra samples are
/// generated and dropped from the front when requested.
/// Params: phi1 (0.4), theta1 (0.2), theta2 (0.1), noise_scale (1), burnin (0).
TimeSeries gen_arima112(const GeneratorSpec& spec);

/// a*sin(x_t)*sin(b*x_t) + c*cos(x_t + d) with x_t = t*dt and a,b,c,d drawn
/// once per sequence from Uniform[amin, amax]. Explicit a/b/c/d params pin the
/// coefficients instead of drawing them.
/// Params: amin (1.45), amax (1.55), a, b, c, d (optional overrides).
TimeSeries gen_composite_sinusoid(const GeneratorSpec& spec);

/// Euler-Maruyama discretization of dx = theta*(mu - x)dt + sigma dW:
/// x_{t+1} = x_t + theta*(mu - x_t)*dt + sigma*sqrt(dt)*z_t. x_0 = mu unless
/// overridden via params.
/// Params: theta (-0.5), mu (0), sigma (0.5), x0 (mu).
TimeSeries gen_ou(const GeneratorSpec& spec);

/// Dispatch on spec.kind.
TimeSeries generate(const GeneratorSpec& spec);

} // namespace tda

#endif
