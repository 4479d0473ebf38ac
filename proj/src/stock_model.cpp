#include "agrotrend/stock_model.hpp"

#include <algorithm>
#include <cmath>

#include "agrotrend/errors.hpp"
#include "agrotrend/parallel.hpp"

namespace agrotrend {

Design build_stock_design(const Dataset& ds, const KnowledgeStock& stock,
                          const StockModelSpec& spec,
                          const WeatherTransform* weather) {
    std::vector<int> years;
    for (int y = ds.tfp.first_year(); y <= ds.tfp.last_year(); ++y) {
        if (!stock.series.covers(y)) continue;
        if (!trend_available(spec.trend, ds.tfp, y)) continue;
        bool ok = true;
        for (const auto& name : spec.extras) {
            if (!ds.extra(name).covers(y)) ok = false;
        }
        if (spec.include_weather) {
            if (!ds.exposure.range().contains(y) || !ds.precip.covers(y)) ok = false;
        }
        if (ok) years.push_back(y);
    }
    if (years.empty()) {
        throw ValidationError("stock model: no eligible sample years");
    }

    Design d;
    d.names.push_back("intercept");
    d.names.push_back("log_stock");
    for (const auto& n : trend_column_names(spec.trend)) d.names.push_back(n);
    for (const auto& n : spec.extras) d.names.push_back(n);
    if (spec.include_weather) {
        for (int j = 1; j <= weather->df(); ++j) {
            d.names.push_back("exposure_s" + std::to_string(j));
        }
        d.names.push_back("precip");
        d.names.push_back("precip_sq");
    }

    d.X.resize(static_cast<Eigen::Index>(years.size()),
               static_cast<Eigen::Index>(d.names.size()));
    d.y.resize(static_cast<Eigen::Index>(years.size()));
    d.years = years;
    int base_year = years.front();
    std::vector<double> row;
    for (std::size_t i = 0; i < years.size(); ++i) {
        int t = years[i];
        row.clear();
        row.push_back(1.0);
        row.push_back(std::log(stock.series.at(t)));
        append_trend_columns(spec.trend, ds.tfp, t, base_year, row);
        for (const auto& n : spec.extras) row.push_back(ds.extra(n).at(t));
        if (spec.include_weather) {
            Eigen::VectorXd e = weather->exposure_regressors(ds.exposure.year(t));
            for (Eigen::Index j = 0; j < e.size(); ++j) row.push_back(e(j));
            double p = ds.precip.at(t);
            row.push_back(p);
            row.push_back(p * p);
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            d.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
        d.y(static_cast<Eigen::Index>(i)) = std::log(ds.tfp.at(t));
    }
    return d;
}

StockFit stock_fit_from_design(const Design& d, const StockModelSpec& spec) {
    if (d.n() < d.p() + 5) {
        throw ValidationError("stock model: sample too small (" + std::to_string(d.n()) +
                              " rows for " + std::to_string(d.p()) + " columns)");
    }
    LsFit f = fit(d);
    StockFit out;
    out.beta0 = f.coef(0);
    out.beta1 = f.coef(1);
    for (std::size_t j = 0; j < d.names.size(); ++j) {
        out.named_coefs[d.names[j]] = f.coef(static_cast<Eigen::Index>(j));
    }
    for (const auto& name : spec.extras) {
        out.extra_coefs[name] = out.named_coefs.at(name);
    }
    out.trend = spec.trend;
    std::vector<double> resid(static_cast<std::size_t>(f.residuals.size()));
    for (std::size_t i = 0; i < resid.size(); ++i) {
        resid[i] = f.residuals(static_cast<Eigen::Index>(i));
    }
    out.residuals = AnnualSeries("residuals", d.years.front(), std::move(resid));
    out.dof = f.dof;
    out.design_columns = d.names;
    out.window = {d.years.front(), d.years.back()};
    return out;
}

StockFit fit_stock_model(const Dataset& ds, const KnowledgeStock& stock,
                         const StockModelSpec& spec,
                         const WeatherTransform* weather) {
    if (spec.include_weather && weather == nullptr) {
        throw ValidationError("stock model: weather terms requested without a transform");
    }
    Design d = build_stock_design(ds, stock, spec, weather);
    return stock_fit_from_design(d, spec);
}

std::vector<double> grid_values(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw ValidationError("bad grid specification");
    std::vector<double> v;
    for (int i = 0;; ++i) {
        double x = lo + i * step;
        if (x > hi + 1e-12) break;
        v.push_back(x);
    }
    return v;
}

std::vector<GridCell> GridSearchResult::top(std::size_t k) const {
    std::vector<GridCell> out;
    for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
        out.push_back(cells[ranked[i]]);
    }
    return out;
}

GridSearchResult grid_search(const Dataset& ds, std::span<const double> lambdas,
                             std::span<const double> deltas, int lags,
                             const StockModelSpec& spec,
                             const WeatherTransform* weather, int threads) {
    if (lambdas.empty() || deltas.empty()) {
        throw ValidationError("grid search: empty grid");
    }
    if (spec.include_weather && weather == nullptr) {
        throw ValidationError("grid search: weather terms requested without a transform");
    }

    GridSearchResult res;
    res.cells.resize(lambdas.size() * deltas.size());

    // No-stock reference model: identical rows/columns minus log_stock. The
    // sample window is the same for every cell (it depends only on lags).
    double mse_base = -1.0;
    {
        GammaLagSpec probe{lambdas[0], deltas[0], lags};
        auto stock = build_stock(ds.rd, probe);
        Design d = build_stock_design(ds, stock, spec, weather);
        Design base;
        base.names = d.names;
        base.names.erase(base.names.begin() + 1); // drop log_stock
        base.years = d.years;
        base.y = d.y;
        base.X.resize(d.X.rows(), d.X.cols() - 1);
        base.X.col(0) = d.X.col(0);
        base.X.rightCols(d.X.cols() - 2) = d.X.rightCols(d.X.cols() - 2);
        mse_base = loocv_mse(fit(base));
    }

    parallel_for(res.cells.size(), threads, [&](std::size_t i) {
        std::size_t li = i / deltas.size();
        std::size_t di = i % deltas.size();
        GridCell& cell = res.cells[i];
        cell.lambda = lambdas[li];
        cell.delta = deltas[di];
        try {
            GammaLagSpec gspec{cell.lambda, cell.delta, lags};
            auto stock = build_stock(ds.rd, gspec);
            Design d = build_stock_design(ds, stock, spec, weather);
            LsFit f = fit(d);
            cell.beta1 = f.coef(1);
            cell.mse_reduction = (mse_base - loocv_mse(f)) / mse_base;
            cell.ok = true;
        } catch (const Error& e) {
            cell.ok = false;
            cell.error = e.what();
        }
    });

    res.ranked.clear();
    for (std::size_t i = 0; i < res.cells.size(); ++i) {
        if (res.cells[i].ok) res.ranked.push_back(i);
    }
    std::sort(res.ranked.begin(), res.ranked.end(), [&](std::size_t a, std::size_t b) {
        const GridCell& ca = res.cells[a];
        const GridCell& cb = res.cells[b];
        if (ca.mse_reduction != cb.mse_reduction) {
            return ca.mse_reduction > cb.mse_reduction;
        }
        if (ca.lambda != cb.lambda) return ca.lambda < cb.lambda;
        return ca.delta < cb.delta;
    });
    if (res.ranked.empty()) {
        throw NumericError("grid search: every cell failed");
    }
    const GridCell& best = res.cells[res.ranked.front()];
    res.best = GammaLagSpec{best.lambda, best.delta, lags};
    return res;
}

} // namespace agrotrend
