#include "agrotrend/spatial.hpp"

#include <algorithm>
#include <cmath>

#include "agrotrend/csv.hpp"
#include "agrotrend/errors.hpp"
#include "agrotrend/parallel.hpp"

namespace agrotrend {

DailyGrid::DailyGrid(std::vector<std::string> cell_ids, YearRange years,
                     std::vector<DayRecord> records)
    : cell_ids_(std::move(cell_ids)), years_(years), records_(std::move(records)) {
    if (cell_ids_.empty()) throw ValidationError("grid: no cells");
    if (years_.empty()) throw ValidationError("grid: empty year range");
    days_ = 0;
    for (int y = years_.first; y <= years_.last; ++y) days_ += cal::days_in_year(y);
    if (records_.size() != cell_ids_.size() * static_cast<std::size_t>(days_)) {
        throw ValidationError("grid: record count does not match cells x days");
    }
    day_year_.reserve(static_cast<std::size_t>(days_));
    day_month_.reserve(static_cast<std::size_t>(days_));
    for (int y = years_.first; y <= years_.last; ++y) {
        for (int m = 1; m <= 12; ++m) {
            for (int d = 0; d < cal::days_in_month(y, m); ++d) {
                day_year_.push_back(y);
                day_month_.push_back(m);
            }
        }
    }
    for (const auto& r : records_) {
        if (!std::isfinite(r.tmin) || !std::isfinite(r.tmax) || !std::isfinite(r.prcp)) {
            throw ValidationError("grid: non-finite record");
        }
        if (r.tmin > r.tmax) {
            throw ValidationError("grid: tmin above tmax in a cell-day");
        }
    }
}

cal::Date DailyGrid::date_of(int day_index) const {
    int y = day_year_[static_cast<std::size_t>(day_index)];
    int m = day_month_[static_cast<std::size_t>(day_index)];
    // recover day within month by rewinding the prefix
    int idx = day_index;
    for (int yy = years_.first; yy < y; ++yy) idx -= cal::days_in_year(yy);
    for (int mm = 1; mm < m; ++mm) idx -= cal::days_in_month(y, mm);
    return {y, m, idx + 1};
}

int DailyGrid::year_of(int day_index) const {
    return day_year_[static_cast<std::size_t>(day_index)];
}

int DailyGrid::month_of(int day_index) const {
    return day_month_[static_cast<std::size_t>(day_index)];
}

int DailyGrid::cell_index(const std::string& id) const {
    auto it = std::lower_bound(cell_ids_.begin(), cell_ids_.end(), id);
    if (it == cell_ids_.end() || *it != id) return -1;
    return static_cast<int>(it - cell_ids_.begin());
}

DailyGrid load_grid_csv(const std::filesystem::path& path) {
    auto t = csv::read_table(path);
    csv::expect_header(t, {"cell_id", "date", "tmin_c", "tmax_c", "prcp_mm"});
    struct Raw {
        cal::Date date;
        DayRecord rec;
    };
    std::map<std::string, std::vector<Raw>> by_cell;
    YearRange years{0, -1};
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        int line = t.line_numbers[i];
        auto context = t.path + ":" + std::to_string(line);
        Raw r;
        r.date = cal::parse_iso_date(t.rows[i][1], context);
        r.rec.tmin = csv::parse_double(t.rows[i][2], t.path, line);
        r.rec.tmax = csv::parse_double(t.rows[i][3], t.path, line);
        r.rec.prcp = csv::parse_double(t.rows[i][4], t.path, line);
        by_cell[t.rows[i][0]].push_back(r);
        if (years.empty()) {
            years = {r.date.year, r.date.year};
        } else {
            years.first = std::min(years.first, r.date.year);
            years.last = std::max(years.last, r.date.year);
        }
    }
    if (by_cell.empty()) throw ParseError(t.path + ": no data rows");

    int days = 0;
    for (int y = years.first; y <= years.last; ++y) days += cal::days_in_year(y);

    std::vector<std::string> ids;
    ids.reserve(by_cell.size());
    for (const auto& [id, rows] : by_cell) ids.push_back(id);

    std::vector<DayRecord> records(by_cell.size() * static_cast<std::size_t>(days));
    std::vector<char> seen(records.size(), 0);
    std::size_t cell_idx = 0;
    for (auto& [id, rows] : by_cell) {
        if (rows.size() != static_cast<std::size_t>(days)) {
            throw ValidationError(t.path + ": cell '" + id + "' has " +
                                  std::to_string(rows.size()) + " days, calendar " +
                                  std::to_string(years.first) + ".." +
                                  std::to_string(years.last) + " needs " +
                                  std::to_string(days) + " (partial year?)");
        }
        for (const auto& r : rows) {
            // day offset within the shared calendar
            int off = 0;
            for (int y = years.first; y < r.date.year; ++y) off += cal::days_in_year(y);
            for (int m = 1; m < r.date.month; ++m) off += cal::days_in_month(r.date.year, m);
            off += r.date.day - 1;
            std::size_t slot = cell_idx * static_cast<std::size_t>(days) +
                               static_cast<std::size_t>(off);
            if (seen[slot]) {
                throw ValidationError(t.path + ": duplicate cell-day " + id + " " +
                                      cal::format_iso_date(r.date));
            }
            seen[slot] = 1;
            records[slot] = r.rec;
        }
        ++cell_idx;
    }
    return DailyGrid(std::move(ids), years, std::move(records));
}

SpatialWeights::SpatialWeights(std::map<std::string, double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) throw ValidationError("weights: empty");
    double total = 0.0;
    for (const auto& [id, w] : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ValidationError("weights: negative or non-finite weight for cell '" +
                                  id + "'");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("weights: sum " + std::to_string(total) +
                              " differs from 1 by more than 1e-9");
    }
}

SpatialWeights load_weights_csv(const std::filesystem::path& path) {
    auto t = csv::read_table(path);
    csv::expect_header(t, {"cell_id", "weight"});
    std::map<std::string, double> w;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        int line = t.line_numbers[i];
        auto [it, inserted] =
            w.emplace(t.rows[i][0], csv::parse_double(t.rows[i][1], t.path, line));
        if (!inserted) {
            throw ValidationError(t.path + ":" + std::to_string(line) +
                                  ": duplicate cell '" + t.rows[i][0] + "'");
        }
    }
    return SpatialWeights(std::move(w));
}

std::span<const double> MonthlyExposure::month(int year, int month) const {
    std::size_t idx = (static_cast<std::size_t>(year - first_year) * 12 +
                       static_cast<std::size_t>(month - 1)) *
                      ExposureHistogramSeries::kRawBins;
    return {hours.data() + idx, ExposureHistogramSeries::kRawBins};
}

ExposureHistogramSeries MonthlyExposure::annual() const {
    constexpr int kBins = ExposureHistogramSeries::kRawBins;
    std::vector<double> annual(static_cast<std::size_t>(n_years) * kBins, 0.0);
    for (int y = 0; y < n_years; ++y) {
        for (int m = 1; m <= 12; ++m) {
            auto row = month(first_year + y, m);
            for (int k = 0; k < kBins; ++k) {
                annual[static_cast<std::size_t>(y) * kBins + k] += row[static_cast<std::size_t>(k)];
            }
        }
    }
    return ExposureHistogramSeries(ExposureHistogramSeries::raw_edges(), first_year,
                                   std::move(annual));
}

double MonthlyPrecip::at(int year, int month) const {
    return mm[static_cast<std::size_t>(year - first_year) * 12 +
              static_cast<std::size_t>(month - 1)];
}

AnnualSeries MonthlyPrecip::annual() const {
    std::vector<double> v(static_cast<std::size_t>(n_years()), 0.0);
    for (int y = 0; y < n_years(); ++y) {
        for (int m = 1; m <= 12; ++m) v[static_cast<std::size_t>(y)] += at(first_year + y, m);
    }
    return AnnualSeries("precip", first_year, std::move(v));
}

NationalWeather aggregate_national(const DailyGrid& grid, const SpatialWeights& weights,
                                   const DiurnalAnchors& anchors, int threads) {
    constexpr int kBins = ExposureHistogramSeries::kRawBins;
    const int nyears = grid.years().size();
    const int ncells = static_cast<int>(grid.cell_ids().size());
    const std::size_t slots = static_cast<std::size_t>(nyears) * 12;

    for (const auto& [id, w] : weights.map()) {
        if (grid.cell_index(id) < 0) {
            throw ValidationError("weights reference missing cell '" + id + "'");
        }
    }
    std::vector<double> cell_weight(static_cast<std::size_t>(ncells), 0.0);
    for (const auto& [id, w] : weights.map()) {
        cell_weight[static_cast<std::size_t>(grid.cell_index(id))] = w;
    }

    // Fixed-size cell chunks; chunk partials are reduced in chunk order so
    // the floating-point sum never depends on the worker count.
    constexpr int kChunk = 8;
    const int nchunks = (ncells + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> expo_partial(static_cast<std::size_t>(nchunks));
    std::vector<std::vector<double>> prcp_partial(static_cast<std::size_t>(nchunks));

    parallel_for(static_cast<std::size_t>(nchunks), threads, [&](std::size_t chunk) {
        auto& expo = expo_partial[chunk];
        auto& prcp = prcp_partial[chunk];
        expo.assign(slots * kBins, 0.0);
        prcp.assign(slots, 0.0);
        int c_lo = static_cast<int>(chunk) * kChunk;
        int c_hi = std::min(ncells, c_lo + kChunk);
        for (int c = c_lo; c < c_hi; ++c) {
            double w = cell_weight[static_cast<std::size_t>(c)];
            if (w == 0.0) continue;
            for (int d = 0; d < grid.days(); ++d) {
                const DayRecord& rec = grid.at(c, d);
                // last record reuses its own tmin for the following morning
                double tmin_next = (d + 1 < grid.days()) ? grid.at(c, d + 1).tmin : rec.tmin;
                auto day_hours = diurnal_exposure(rec.tmin, rec.tmax, tmin_next, anchors);
                std::size_t slot =
                    static_cast<std::size_t>(grid.year_of(d) - grid.years().first) * 12 +
                    static_cast<std::size_t>(grid.month_of(d) - 1);
                double* out = expo.data() + slot * kBins;
                for (int k = 0; k < kBins; ++k) {
                    out[k] += w * day_hours[static_cast<std::size_t>(k)];
                }
                prcp[slot] += w * rec.prcp;
            }
        }
    });

    NationalWeather nw;
    nw.exposure.first_year = grid.years().first;
    nw.exposure.n_years = nyears;
    nw.exposure.hours.assign(slots * kBins, 0.0);
    nw.precip.first_year = grid.years().first;
    nw.precip.mm.assign(slots, 0.0);
    for (int chunk = 0; chunk < nchunks; ++chunk) {
        const auto& expo = expo_partial[static_cast<std::size_t>(chunk)];
        const auto& prcp = prcp_partial[static_cast<std::size_t>(chunk)];
        for (std::size_t i = 0; i < expo.size(); ++i) nw.exposure.hours[i] += expo[i];
        for (std::size_t i = 0; i < prcp.size(); ++i) nw.precip.mm[i] += prcp[i];
    }
    return nw;
}

ExposureHistogramSeries season_exposure(const MonthlyExposure& m, int start_month,
                                        int months) {
    if (start_month < 1 || start_month > 12 || months < 1 || months > 12) {
        throw ValidationError("season: start month and length must be within 1..12");
    }
    constexpr int kBins = ExposureHistogramSeries::kRawBins;
    const bool wraps = start_month + months - 1 > 12;
    // Label by season end year; wrapping seasons need the previous year.
    int first_label = m.first_year + (wraps ? 1 : 0);
    int n_out = m.n_years - (wraps ? 1 : 0);
    if (n_out < 1) throw ValidationError("season: not enough years");
    std::vector<double> hours(static_cast<std::size_t>(n_out) * kBins, 0.0);
    for (int i = 0; i < n_out; ++i) {
        int label = first_label + i;
        for (int j = 0; j < months; ++j) {
            int mm = start_month + j;
            int year = label - (wraps ? 1 : 0);
            if (mm > 12) {
                mm -= 12;
                year += 1;
            }
            auto row = m.month(year, mm);
            for (int k = 0; k < kBins; ++k) {
                hours[static_cast<std::size_t>(i) * kBins + k] += row[static_cast<std::size_t>(k)];
            }
        }
    }
    return ExposureHistogramSeries(ExposureHistogramSeries::raw_edges(), first_label,
                                   std::move(hours));
}

AnnualSeries season_precip(const MonthlyPrecip& p, int start_month, int months) {
    if (start_month < 1 || start_month > 12 || months < 1 || months > 12) {
        throw ValidationError("season: start month and length must be within 1..12");
    }
    const bool wraps = start_month + months - 1 > 12;
    int first_label = p.first_year + (wraps ? 1 : 0);
    int n_out = p.n_years() - (wraps ? 1 : 0);
    if (n_out < 1) throw ValidationError("season: not enough years");
    std::vector<double> v(static_cast<std::size_t>(n_out), 0.0);
    for (int i = 0; i < n_out; ++i) {
        int label = first_label + i;
        for (int j = 0; j < months; ++j) {
            int mm = start_month + j;
            int year = label - (wraps ? 1 : 0);
            if (mm > 12) {
                mm -= 12;
                year += 1;
            }
            v[static_cast<std::size_t>(i)] += p.at(year, mm);
        }
    }
    return AnnualSeries("precip", first_label, std::move(v));
}

void save_monthly_exposure_csv(const std::filesystem::path& path,
                               const MonthlyExposure& m) {
    csv::Writer w(path, {"year", "month", "bin_lo_c", "bin_hi_c", "hours"});
    auto edges = ExposureHistogramSeries::raw_edges();
    for (int y = m.first_year; y < m.first_year + m.n_years; ++y) {
        for (int mm = 1; mm <= 12; ++mm) {
            auto row = m.month(y, mm);
            for (int k = 0; k < ExposureHistogramSeries::kRawBins; ++k) {
                w.row(y, mm, edges[static_cast<std::size_t>(k)],
                      edges[static_cast<std::size_t>(k) + 1], row[static_cast<std::size_t>(k)]);
            }
        }
    }
}

MonthlyExposure load_monthly_exposure_csv(const std::filesystem::path& path) {
    auto t = csv::read_table(path);
    csv::expect_header(t, {"year", "month", "bin_lo_c", "bin_hi_c", "hours"});
    constexpr int kBins = ExposureHistogramSeries::kRawBins;
    std::map<std::pair<int, int>, std::vector<double>> cells;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        int line = t.line_numbers[i];
        int year = static_cast<int>(csv::parse_long(t.rows[i][0], t.path, line));
        int month = static_cast<int>(csv::parse_long(t.rows[i][1], t.path, line));
        int lo = static_cast<int>(csv::parse_long(t.rows[i][2], t.path, line));
        double hours = csv::parse_double(t.rows[i][4], t.path, line);
        if (month < 1 || month > 12) {
            throw ValidationError(t.path + ":" + std::to_string(line) + ": bad month");
        }
        int bin = lo - ExposureHistogramSeries::kRawLowC;
        if (bin < 0 || bin >= kBins) {
            throw ValidationError(t.path + ":" + std::to_string(line) +
                                  ": bin outside raw support");
        }
        auto& v = cells[{year, month}];
        if (v.empty()) v.assign(kBins, -1.0);
        if (v[static_cast<std::size_t>(bin)] >= 0.0) {
            throw ValidationError(t.path + ":" + std::to_string(line) + ": duplicate bin");
        }
        v[static_cast<std::size_t>(bin)] = hours;
    }
    if (cells.empty()) throw ParseError(t.path + ": no data rows");
    MonthlyExposure m;
    m.first_year = cells.begin()->first.first;
    int last_year = cells.rbegin()->first.first;
    m.n_years = last_year - m.first_year + 1;
    m.hours.assign(static_cast<std::size_t>(m.n_years) * 12 * kBins, -1.0);
    for (const auto& [key, v] : cells) {
        auto [year, month] = key;
        std::size_t slot = (static_cast<std::size_t>(year - m.first_year) * 12 +
                            static_cast<std::size_t>(month - 1)) *
                           kBins;
        for (int k = 0; k < kBins; ++k) {
            double h = v[static_cast<std::size_t>(k)];
            if (h < 0.0) {
                throw ValidationError(t.path + ": missing bin in " + std::to_string(year) +
                                      "-" + std::to_string(month));
            }
            m.hours[slot + static_cast<std::size_t>(k)] = h;
        }
    }
    for (double h : m.hours) {
        if (h < 0.0) throw ValidationError(t.path + ": missing (year, month) cell");
    }
    return m;
}

void save_monthly_precip_csv(const std::filesystem::path& path, const MonthlyPrecip& p) {
    csv::Writer w(path, {"year", "month", "precip_mm"});
    for (int y = p.first_year; y < p.first_year + p.n_years(); ++y) {
        for (int mm = 1; mm <= 12; ++mm) w.row(y, mm, p.at(y, mm));
    }
}

MonthlyPrecip load_monthly_precip_csv(const std::filesystem::path& path) {
    auto t = csv::read_table(path);
    csv::expect_header(t, {"year", "month", "precip_mm"});
    std::map<std::pair<int, int>, double> cells;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        int line = t.line_numbers[i];
        int year = static_cast<int>(csv::parse_long(t.rows[i][0], t.path, line));
        int month = static_cast<int>(csv::parse_long(t.rows[i][1], t.path, line));
        double mm = csv::parse_double(t.rows[i][2], t.path, line);
        if (!cells.emplace(std::make_pair(year, month), mm).second) {
            throw ValidationError(t.path + ":" + std::to_string(line) +
                                  ": duplicate (year, month)");
        }
    }
    if (cells.empty()) throw ParseError(t.path + ": no data rows");
    MonthlyPrecip p;
    p.first_year = cells.begin()->first.first;
    int last_year = cells.rbegin()->first.first;
    p.mm.assign(static_cast<std::size_t>(last_year - p.first_year + 1) * 12, -1.0);
    for (const auto& [key, v] : cells) {
        p.mm[static_cast<std::size_t>(key.first - p.first_year) * 12 +
             static_cast<std::size_t>(key.second - 1)] = v;
    }
    for (double v : p.mm) {
        if (v < 0.0) throw ValidationError(t.path + ": missing (year, month) row");
    }
    return p;
}

} // namespace agrotrend
