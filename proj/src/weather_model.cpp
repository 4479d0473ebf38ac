#include "agrotrend/weather_model.hpp"

#include <cmath>

#include "agrotrend/errors.hpp"
#include "agrotrend/parallel.hpp"

namespace agrotrend {

Eigen::VectorXd WeatherTransform::exposure_regressors(
    std::span<const double> raw_row) const {
    if (raw_row.size() != ExposureHistogramSeries::kRawBins) {
        throw ValidationError("exposure row is not on the raw 1 C bin grid");
    }
    auto coded = apply_coding(raw_row, coding);
    Eigen::VectorXd e(static_cast<Eigen::Index>(coded.size()));
    for (std::size_t k = 0; k < coded.size(); ++k) {
        e(static_cast<Eigen::Index>(k)) = coded[k];
    }
    return B.transpose() * e;
}

WeatherTransform build_weather_transform(const ExposureHistogramSeries& raw,
                                         YearRange pooled_window, int df,
                                         double tail_share) {
    WeatherTransform t;
    auto pooled_series = raw.window(intersect(pooled_window, raw.range()));
    t.coding = top_bottom_coding(pooled_series, tail_share);
    if (t.coding.degenerate) {
        throw ValidationError(
            "weather transform: exposure collapses to a single coded bin");
    }
    auto coded = apply_coding(pooled_series, t.coding);
    t.coded_centers = coded.bin_centers();
    auto pooled = coded.pooled();
    t.basis = SplineBasis::from_weighted_quantiles(t.coded_centers, pooled, df);
    t.B = t.basis.matrix(t.coded_centers);
    return t;
}

Design build_weather_design(const AnnualSeries& tfp,
                            const ExposureHistogramSeries& exposure_raw,
                            const AnnualSeries& precip,
                            const WeatherTransform& transform, const TrendSpec& trend,
                            YearRange eligible) {
    std::vector<int> years;
    for (int y = eligible.first; y <= eligible.last; ++y) {
        if (tfp.covers(y) && exposure_raw.range().contains(y) && precip.covers(y) &&
            trend_available(trend, tfp, y)) {
            years.push_back(y);
        }
    }
    if (years.empty()) {
        throw ValidationError("weather design: no eligible sample years");
    }
    Design d;
    d.names.push_back("intercept");
    for (const auto& n : trend_column_names(trend)) d.names.push_back(n);
    for (int j = 1; j <= transform.df(); ++j) {
        d.names.push_back("exposure_s" + std::to_string(j));
    }
    d.names.push_back("precip");
    d.names.push_back("precip_sq");

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
        append_trend_columns(trend, tfp, t, base_year, row);
        Eigen::VectorXd e = transform.exposure_regressors(exposure_raw.year(t));
        for (Eigen::Index j = 0; j < e.size(); ++j) row.push_back(e(j));
        double p = precip.at(t);
        row.push_back(p);
        row.push_back(p * p);
        for (std::size_t j = 0; j < row.size(); ++j) {
            d.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
        d.y(static_cast<Eigen::Index>(i)) = std::log(tfp.at(t));
    }
    return d;
}

WeatherCoefs weather_coefs_from_fit(const LsFit& fit, const Design& d, int df) {
    WeatherCoefs c;
    c.gamma.resize(df);
    for (int j = 1; j <= df; ++j) {
        int col = d.column("exposure_s" + std::to_string(j));
        if (col < 0) throw ValidationError("design lacks exposure spline columns");
        c.gamma(j - 1) = fit.coef(col);
    }
    int p1 = d.column("precip");
    int p2 = d.column("precip_sq");
    if (p1 < 0 || p2 < 0) throw ValidationError("design lacks precipitation columns");
    c.theta1 = fit.coef(p1);
    c.theta2 = fit.coef(p2);
    return c;
}

std::vector<double> response_curve(const WeatherTransform& transform,
                                   const WeatherCoefs& coefs) {
    std::vector<double> curve(static_cast<std::size_t>(transform.B.rows()));
    for (Eigen::Index k = 0; k < transform.B.rows(); ++k) {
        curve[static_cast<std::size_t>(k)] = transform.B.row(k).dot(coefs.gamma);
    }
    return curve;
}

WeatherFit fit_weather_model(const Dataset& ds, const WeatherTransform& transform,
                             const TrendSpec& trend) {
    Design d = build_weather_design(ds.tfp, ds.exposure, ds.precip, transform, trend,
                                    ds.usable);
    if (d.n() < d.p() + 5) {
        throw ValidationError("weather model: sample too small (" +
                              std::to_string(d.n()) + " rows for " +
                              std::to_string(d.p()) + " columns)");
    }
    LsFit f = fit(d);

    WeatherFit out;
    out.transform = transform;
    out.coefs = weather_coefs_from_fit(f, d, transform.df());
    out.intercept = f.coef(0);
    for (std::size_t j = 0; j < d.names.size(); ++j) {
        out.named_coefs[d.names[j]] = f.coef(static_cast<Eigen::Index>(j));
    }
    out.trend = trend;
    std::vector<double> resid(static_cast<std::size_t>(f.residuals.size()));
    for (std::size_t i = 0; i < resid.size(); ++i) {
        resid[i] = f.residuals(static_cast<Eigen::Index>(i));
    }
    out.residuals = AnnualSeries("residuals", d.years.front(), std::move(resid));
    out.dof = f.dof;
    out.response_curve = response_curve(transform, out.coefs);
    out.window = {d.years.front(), d.years.back()};
    return out;
}

Climatology sample_climatology(const ExposureHistogramSeries& raw,
                               const AnnualSeries& precip, YearRange window) {
    if (window.empty()) throw ValidationError("climatology: empty window");
    if (!raw.range().contains(window.first) || !raw.range().contains(window.last) ||
        !precip.covers(window)) {
        throw ValidationError("climatology: window not covered by baseline series");
    }
    Climatology c;
    c.window = window;
    c.exposure_raw.assign(static_cast<std::size_t>(raw.bins()), 0.0);
    for (int y = window.first; y <= window.last; ++y) {
        auto row = raw.year(y);
        for (std::size_t k = 0; k < row.size(); ++k) c.exposure_raw[k] += row[k];
    }
    for (double& v : c.exposure_raw) v /= window.size();
    c.precip = mean_over(precip, window);
    return c;
}

double uniform_sensitivity(const WeatherCoefs& coefs, const WeatherTransform& transform,
                           const Climatology& baseline, int delta_t_c,
                           double delta_p_pct, bool log_points) {
    if (std::abs(delta_t_c) > 10) {
        throw ValidationError("uniform sensitivity: |deltaT| beyond supported shift");
    }
    if (delta_p_pct < -100.0) {
        throw ValidationError("uniform sensitivity: precipitation change below -100%");
    }
    Eigen::VectorXd e0 = transform.exposure_regressors(baseline.exposure_raw);
    auto shifted = shift_histogram(std::span<const double>(baseline.exposure_raw),
                                   delta_t_c);
    Eigen::VectorXd e1 = transform.exposure_regressors(shifted);
    double p0 = baseline.precip;
    double p1 = p0 * (1.0 + delta_p_pct / 100.0);
    double d = coefs.gamma.dot(e1 - e0) + coefs.theta1 * (p1 - p0) +
               coefs.theta2 * (p1 * p1 - p0 * p0);
    return log_points ? 100.0 * d : 100.0 * (std::exp(d) - 1.0);
}

std::string var_set_name(WeatherVarSet v) {
    switch (v) {
        case WeatherVarSet::tbins_precip: return "tbins_precip";
        case WeatherVarSet::tbins: return "tbins";
        case WeatherVarSet::mean_t_precip: return "mean_t_precip";
        case WeatherVarSet::precip_only: return "precip_only";
    }
    throw ValidationError("unknown variable set");
}

const std::vector<WeatherVarSet>& all_var_sets() {
    static const std::vector<WeatherVarSet> sets = {
        WeatherVarSet::tbins_precip, WeatherVarSet::tbins,
        WeatherVarSet::mean_t_precip, WeatherVarSet::precip_only};
    return sets;
}

namespace {

// Exposure-weighted mean temperature of a raw histogram row.
double mean_temperature(std::span<const double> raw_row) {
    double total = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < raw_row.size(); ++k) {
        double center = ExposureHistogramSeries::kRawLowC + 0.5 + static_cast<double>(k);
        acc += center * raw_row[k];
        total += raw_row[k];
    }
    return total > 0.0 ? acc / total : 0.0;
}

} // namespace

std::vector<SeasonCell> season_search(const AnnualSeries& tfp,
                                      const MonthlyExposure& exposure,
                                      const MonthlyPrecip& precip,
                                      const TrendSpec& trend, int spline_df,
                                      int threads) {
    struct Task {
        WeatherVarSet vars;
        int start, months;
    };
    std::vector<Task> tasks;
    for (WeatherVarSet v : all_var_sets()) {
        for (int start = 1; start <= 12; ++start) {
            for (int months = 1; months <= 12; ++months) {
                tasks.push_back({v, start, months});
            }
        }
    }
    std::vector<SeasonCell> cells(tasks.size());

    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const Task& task = tasks[i];
        SeasonCell& cell = cells[i];
        cell.vars = task.vars;
        cell.start_month = task.start;
        cell.months = task.months;
        try {
            auto season_expo = season_exposure(exposure, task.start, task.months);
            auto season_prcp = season_precip(precip, task.start, task.months);
            YearRange eligible = intersect(season_expo.range(), season_prcp.range());
            eligible = intersect(eligible, tfp.range());

            std::vector<int> years;
            for (int y = eligible.first; y <= eligible.last; ++y) {
                if (trend_available(trend, tfp, y)) years.push_back(y);
            }
            if (years.size() < 12) throw ValidationError("season: sample too small");
            YearRange window{years.front(), years.back()};

            // Weather columns for this cell.
            std::vector<std::vector<double>> wcols;
            std::vector<std::string> wnames;
            if (task.vars == WeatherVarSet::tbins_precip ||
                task.vars == WeatherVarSet::tbins) {
                auto transform =
                    build_weather_transform(season_expo, window, spline_df);
                for (int j = 0; j < spline_df; ++j) {
                    wnames.push_back("exposure_s" + std::to_string(j + 1));
                    wcols.emplace_back();
                }
                for (int y : years) {
                    Eigen::VectorXd e =
                        transform.exposure_regressors(season_expo.year(y));
                    for (int j = 0; j < spline_df; ++j) {
                        wcols[static_cast<std::size_t>(j)].push_back(e(j));
                    }
                }
            }
            if (task.vars == WeatherVarSet::mean_t_precip) {
                wnames.push_back("mean_temp");
                wcols.emplace_back();
                for (int y : years) {
                    wcols[0].push_back(mean_temperature(season_expo.year(y)));
                }
            }
            if (task.vars != WeatherVarSet::tbins) {
                wnames.push_back("precip");
                wnames.push_back("precip_sq");
                wcols.emplace_back();
                wcols.emplace_back();
                std::size_t p1 = wcols.size() - 2;
                for (int y : years) {
                    double p = season_prcp.at(y);
                    wcols[p1].push_back(p);
                    wcols[p1 + 1].push_back(p * p);
                }
            }

            // Weather-free baseline and augmented design share rows.
            auto base_names = trend_column_names(trend);
            std::size_t p0 = 1 + base_names.size();
            Design base, full;
            base.names.push_back("intercept");
            for (const auto& n : base_names) base.names.push_back(n);
            full.names = base.names;
            for (const auto& n : wnames) full.names.push_back(n);
            base.X.resize(static_cast<Eigen::Index>(years.size()),
                          static_cast<Eigen::Index>(p0));
            full.X.resize(static_cast<Eigen::Index>(years.size()),
                          static_cast<Eigen::Index>(p0 + wnames.size()));
            base.y.resize(static_cast<Eigen::Index>(years.size()));
            full.y = base.y;
            base.years = years;
            full.years = years;
            std::vector<double> row;
            for (std::size_t r = 0; r < years.size(); ++r) {
                row.clear();
                row.push_back(1.0);
                append_trend_columns(trend, tfp, years[r], years.front(), row);
                for (std::size_t j = 0; j < row.size(); ++j) {
                    base.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = row[j];
                    full.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = row[j];
                }
                for (std::size_t j = 0; j < wcols.size(); ++j) {
                    full.X(static_cast<Eigen::Index>(r),
                           static_cast<Eigen::Index>(p0 + j)) = wcols[j][r];
                }
                base.y(static_cast<Eigen::Index>(r)) = std::log(tfp.at(years[r]));
            }
            full.y = base.y;

            double mse_base = loocv_mse(fit(base));
            double mse_full = loocv_mse(fit(full));
            cell.mse_reduction = (mse_base - mse_full) / mse_base;
            cell.ok = true;
        } catch (const Error& e) {
            cell.ok = false;
            cell.error = e.what();
        }
    });

    // Flag the best cell within each variable set.
    for (WeatherVarSet v : all_var_sets()) {
        double best = -1e300;
        SeasonCell* best_cell = nullptr;
        for (auto& c : cells) {
            if (c.vars == v && c.ok && c.mse_reduction > best) {
                best = c.mse_reduction;
                best_cell = &c;
            }
        }
        if (best_cell) best_cell->best = true;
    }
    return cells;
}

} // namespace agrotrend
