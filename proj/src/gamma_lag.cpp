#include "agrotrend/gamma_lag.hpp"

#include <algorithm>
#include <cmath>

#include "agrotrend/errors.hpp"

namespace agrotrend {

void GammaLagSpec::validate() const {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw ValidationError("gamma lag: lambda must lie in (0,1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ValidationError("gamma lag: delta must lie in (0,1)");
    }
    if (lags < 1) throw ValidationError("gamma lag: lag length must be >= 1");
}

std::vector<double> gamma_lag_weights(const GammaLagSpec& spec) {
    spec.validate();
    const double shape = spec.delta / (1.0 - spec.delta);
    const double log_lambda = std::log(spec.lambda);
    std::vector<double> logw(static_cast<std::size_t>(spec.lags));
    double max_logw = -1e300;
    for (int l = 0; l < spec.lags; ++l) {
        double v = shape * std::log(static_cast<double>(l + 1)) + l * log_lambda;
        logw[static_cast<std::size_t>(l)] = v;
        max_logw = std::max(max_logw, v);
    }
    std::vector<double> w(static_cast<std::size_t>(spec.lags));
    double sum = 0.0;
    for (int l = 0; l < spec.lags; ++l) {
        w[static_cast<std::size_t>(l)] = std::exp(logw[static_cast<std::size_t>(l)] - max_logw);
        sum += w[static_cast<std::size_t>(l)];
    }
    for (double& v : w) v /= sum;
    return w;
}

double gamma_lag_mode(const GammaLagSpec& spec) {
    return -(spec.delta / (1.0 - spec.delta)) / std::log(spec.lambda) - 1.0;
}

KnowledgeStock build_stock(const AnnualSeries& rd, const GammaLagSpec& spec) {
    auto weights = gamma_lag_weights(spec);
    if (static_cast<int>(rd.size()) < spec.lags) {
        throw ValidationError("build_stock: spending history shorter than the lag kernel");
    }
    int first_out = rd.first_year() + spec.lags - 1;
    std::vector<double> stock;
    stock.reserve(rd.size() - static_cast<std::size_t>(spec.lags) + 1);
    for (int t = first_out; t <= rd.last_year(); ++t) {
        double s = 0.0;
        for (int l = 0; l < spec.lags; ++l) {
            s += weights[static_cast<std::size_t>(l)] * rd.at(t - l);
        }
        stock.push_back(s);
    }
    KnowledgeStock out;
    out.spec = spec;
    out.weights = std::move(weights);
    out.series = AnnualSeries("stock", first_out, std::move(stock));
    return out;
}

double stock_at(const AnnualSeries& rd, std::span<const double> weights, int year) {
    if (!rd.covers({year - static_cast<int>(weights.size()) + 1, year})) {
        throw ValidationError("stock_at: spending history does not cover the lag window");
    }
    double s = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        s += weights[l] * rd.at(year - static_cast<int>(l));
    }
    return s;
}

} // namespace agrotrend
