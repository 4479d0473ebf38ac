#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "agrotrend/calendar.hpp"
#include "agrotrend/diurnal.hpp"
#include "agrotrend/exposure.hpp"
#include "agrotrend/series.hpp"

namespace agrotrend {

struct DayRecord {
    double tmin = 0.0;
    double tmax = 0.0;
    double prcp = 0.0;
};

// Daily tmin/tmax/precip per cell over a shared whole-year calendar.
// Cells are ordered by id so reductions are deterministic.
class DailyGrid {
public:
    DailyGrid(std::vector<std::string> cell_ids, YearRange years,
              std::vector<DayRecord> records); // records: cell-major, day-minor

    const std::vector<std::string>& cell_ids() const { return cell_ids_; }
    YearRange years() const { return years_; }
    int days() const { return days_; }
    cal::Date date_of(int day_index) const;
    int year_of(int day_index) const;
    int month_of(int day_index) const;
    const DayRecord& at(int cell, int day) const {
        return records_[static_cast<std::size_t>(cell) * days_ + day];
    }
    int cell_index(const std::string& id) const; // -1 if absent

private:
    std::vector<std::string> cell_ids_;
    YearRange years_;
    int days_ = 0;
    std::vector<DayRecord> records_;
    std::vector<int> day_year_;
    std::vector<int> day_month_;
};

// grid_daily.csv: cell_id,date,tmin_c,tmax_c,prcp_mm (whole years enforced).
DailyGrid load_grid_csv(const std::filesystem::path& path);

class SpatialWeights {
public:
    explicit SpatialWeights(std::map<std::string, double> weights);
    const std::map<std::string, double>& map() const { return weights_; }

private:
    std::map<std::string, double> weights_;
};

SpatialWeights load_weights_csv(const std::filesystem::path& path);

// Per (year, month) raw-bin exposure; annual and seasonal slices derive
// from it so the two are exactly consistent.
struct MonthlyExposure {
    int first_year = 0;
    int n_years = 0;
    std::vector<double> hours; // [(year*12 + month-1) * 80 + bin]

    std::span<const double> month(int year, int month) const;
    ExposureHistogramSeries annual() const;
};

struct MonthlyPrecip {
    int first_year = 0;
    std::vector<double> mm; // n_years * 12

    int n_years() const { return static_cast<int>(mm.size() / 12); }
    double at(int year, int month) const;
    AnnualSeries annual() const;
};

struct NationalWeather {
    MonthlyExposure exposure;
    MonthlyPrecip precip;
};

// National series: bin_hours(year) = sum_cells w_c * sum_days exposure(c,d);
// precip likewise. Deterministic fixed-chunk reduction, so results are
// bit-identical for any worker count.
NationalWeather aggregate_national(const DailyGrid& grid, const SpatialWeights& weights,
                                   const DiurnalAnchors& anchors = {}, int threads = 1);

// Season slices; seasons that span the year boundary are labeled by the year
// in which they end. start_month in 1..12, months in 1..12.
ExposureHistogramSeries season_exposure(const MonthlyExposure& m, int start_month,
                                        int months);
AnnualSeries season_precip(const MonthlyPrecip& p, int start_month, int months);

void save_monthly_exposure_csv(const std::filesystem::path& path,
                               const MonthlyExposure& m);
MonthlyExposure load_monthly_exposure_csv(const std::filesystem::path& path);
void save_monthly_precip_csv(const std::filesystem::path& path,
                             const MonthlyPrecip& p);
MonthlyPrecip load_monthly_precip_csv(const std::filesystem::path& path);

} // namespace agrotrend
