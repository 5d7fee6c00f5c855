#include "tda/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tda/errors.hpp"
#include "tda/rng.hpp"

namespace tda {

void TimeSeries::validate() const {
    if (values.empty()) throw ConfigError("time series must contain at least one sample");
    if (!(dt > 0.0)) throw ConfigError("time series dt must be > 0");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw ConfigError("time series sample " + std::to_string(i) + " is not finite");
    }
}

GeneratorKind parse_generator_kind(const std::string& name) {
    if (name == "arima112") return GeneratorKind::Arima112;
    if (name == "sinusoid" || name == "composite-sinusoid") return GeneratorKind::CompositeSinusoid;
    if (name == "ou" || name == "ornstein-uhlenbeck") return GeneratorKind::OrnsteinUhlenbeck;
    throw ConfigError("unknown generator kind: " + name);
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::Arima112: return "arima112";
    case GeneratorKind::CompositeSinusoid: return "composite-sinusoid";
    case GeneratorKind::OrnsteinUhlenbeck: return "ornstein-uhlenbeck";
    }
    return "?";
}

double GeneratorSpec::param_or(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
    std::string t = trim(text);
    if (t.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(t, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == t.size();
}

void check_known_params(const GeneratorSpec& spec, const std::set<std::string>& known) {
    for (const auto& [key, value] : spec.params) {
        (void)value;
        if (!known.count(key))
            throw ConfigError("unknown parameter '" + key + "' for generator " + to_string(spec.kind));
    }
}

void check_spec(const GeneratorSpec& spec) {
    if (spec.n < 1) throw ConfigError("generator sample count must be >= 1");
    if (!(spec.dt > 0.0)) throw ConfigError("generator dt must be > 0");
}

} // namespace

TimeSeries load_csv(const std::string& path, const std::string& column, double dt) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open CSV file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw ConfigError("CSV file is empty: " + path);

    // Resolve the column: numeric strings are 0-based indices, anything else
    // must match a header cell on the first line.
    std::size_t col = 0;
    bool header = false;
    double ignored;
    if (parse_double(column, ignored) && column.find('.') == std::string::npos) {
        col = static_cast<std::size_t>(std::stol(column));
        // A non-numeric first row is treated as a header and skipped.
        auto first = split_csv_line(lines[0]);
        double probe;
        header = col >= first.size() || !parse_double(first[col], probe);
    } else {
        auto first = split_csv_line(lines[0]);
        auto it = std::find_if(first.begin(), first.end(),
                               [&](const std::string& c) { return trim(c) == column; });
        if (it == first.end())
            throw ConfigError("CSV column '" + column + "' not found in header of " + path);
        col = static_cast<std::size_t>(it - first.begin());
        header = true;
    }

    TimeSeries out;
    out.dt = dt;
    for (std::size_t i = header ? 1 : 0; i < lines.size(); ++i) {
        auto cells = split_csv_line(lines[i]);
        if (col >= cells.size())
            throw ConfigError("CSV row " + std::to_string(i + 1) + " has no column " +
                              std::to_string(col) + " in " + path);
        double v;
        if (!parse_double(cells[col], v))
            throw ConfigError("CSV row " + std::to_string(i + 1) + " cell '" + trim(cells[col]) +
                              "' is not a number in " + path);
        out.values.push_back(v);
    }
    if (out.values.empty()) throw ConfigError("CSV column is empty: " + path);
    out.validate();
    return out;
}

TimeSeries returns(const TimeSeries& prices) {
    prices.validate();
    if (prices.size() < 2) throw ConfigError("returns requires at least two prices");
    TimeSeries out;
    out.dt = prices.dt;
    out.origin = prices.origin + prices.dt;
    out.values.reserve(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t) {
        double prev = prices.values[t - 1];
        if (prev == 0.0)
            throw ConfigError("zero price at index " + std::to_string(t - 1) +
                              "; returns are undefined");
        out.values.push_back((prices.values[t] - prev) / prev);
    }
    return out;
}

TimeSeries gen_arima112(const GeneratorSpec& spec) {
    check_spec(spec);
    check_known_params(spec, {"phi1", "theta1", "theta2", "noise_scale", "burnin"});
    const double phi1 = spec.param_or("phi1", 0.4);
    const double theta1 = spec.param_or("theta1", 0.2);
    const double theta2 = spec.param_or("theta2", 0.1);
    const double noise = spec.param_or("noise_scale", 1.0);
    const std::size_t burnin = static_cast<std::size_t>(spec.param_or("burnin", 0.0));

    Rng rng(spec.seed);
    TimeSeries out;
    out.dt = spec.dt;
    out.values.reserve(spec.n);

    double x_prev = 0.0, x_prev2 = 0.0;
    double e_prev = 0.0, e_prev2 = 0.0;
    for (std::size_t t = 0; t < spec.n + burnin; ++t) {
        double e_t = noise * rng.normal();
        double x_t = x_prev + phi1 * (x_prev - x_prev2) - theta1 * e_prev - theta2 * e_prev2;
        if (t >= burnin) out.values.push_back(x_t);
        x_prev2 = x_prev;
        x_prev = x_t;
        e_prev2 = e_prev;
        e_prev = e_t;
    }
    out.validate();
    return out;
}

TimeSeries gen_composite_sinusoid(const GeneratorSpec& spec) {
    check_spec(spec);
    check_known_params(spec, {"amin", "amax", "a", "b", "c", "d"});
    const double amin = spec.param_or("amin", 1.45);
    const double amax = spec.param_or("amax", 1.55);

    Rng rng(spec.seed);
    // Coefficients are drawn once per sequence, in a fixed order, before any
    // override is applied, so the stream stays aligned across test hooks.
    double a = rng.uniform(amin, amax);
    double b = rng.uniform(amin, amax);
    double c = rng.uniform(amin, amax);
    double d = rng.uniform(amin, amax);
    a = spec.param_or("a", a);
    b = spec.param_or("b", b);
    c = spec.param_or("c", c);
    d = spec.param_or("d", d);

    TimeSeries out;
    out.dt = spec.dt;
    out.values.reserve(spec.n);
    for (std::size_t t = 0; t < spec.n; ++t) {
        double x = static_cast<double>(t) * spec.dt;
        out.values.push_back(a * std::sin(x) * std::sin(b * x) + c * std::cos(x + d));
    }
    out.validate();
    return out;
}

TimeSeries gen_ou(const GeneratorSpec& spec) {
    check_spec(spec);
    check_known_params(spec, {"theta", "mu", "sigma", "x0"});
    const double theta = spec.param_or("theta", -0.5);
    const double mu = spec.param_or("mu", 0.0);
    const double sigma = spec.param_or("sigma", 0.5);
    const double x0 = spec.param_or("x0", mu);
    const double sqrt_dt = std::sqrt(spec.dt);

    Rng rng(spec.seed);
    TimeSeries out;
    out.dt = spec.dt;
    out.values.reserve(spec.n);
    double x = x0;
    out.values.push_back(x);
    for (std::size_t t = 1; t < spec.n; ++t) {
        x = x + theta * (mu - x) * spec.dt + sigma * sqrt_dt * rng.normal();
        out.values.push_back(x);
    }
    out.validate();
    return out;
}

TimeSeries generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
    case GeneratorKind::Arima112: return gen_arima112(spec);
    case GeneratorKind::CompositeSinusoid: return gen_composite_sinusoid(spec);
    case GeneratorKind::OrnsteinUhlenbeck: return gen_ou(spec);
    }
    throw ConfigError("unhandled generator kind");
}

} // namespace tda
