#include "agrotrend/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "agrotrend/csv.hpp"
#include "agrotrend/errors.hpp"

namespace agrotrend {

namespace {

// year -> value rows must be strictly consecutive; duplicates and gaps are
// named in the error.
AnnualSeries series_from_rows(const std::string& path,
                              const std::vector<std::pair<int, double>>& rows,
                              const std::string& label) {
    if (rows.empty()) throw ParseError(path + ": no data rows");
    std::vector<std::pair<int, double>> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> values;
    values.reserve(sorted.size());
    int first_year = sorted.front().first;
    int prev = first_year - 1;
    for (const auto& [year, value] : sorted) {
        if (year == prev) {
            throw ValidationError(path + ": duplicate year " + std::to_string(year));
        }
        if (year != prev + 1) {
            throw ValidationError(path + ": gap in years between " +
                                  std::to_string(prev) + " and " + std::to_string(year));
        }
        values.push_back(value);
        prev = year;
    }
    return AnnualSeries(label, first_year, std::move(values));
}

void require_positive(const AnnualSeries& s, const std::string& what) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.values()[i] <= 0.0) {
            throw ValidationError(what + ": nonpositive value in year " +
                                  std::to_string(s.year_at(i)));
        }
    }
}

} // namespace

DatasetPaths DatasetPaths::discover(const std::filesystem::path& dir) {
    DatasetPaths p;
    p.tfp = dir / "tfp.csv";
    p.rd = dir / "rd.csv";
    p.exposure = dir / "exposure.csv";
    p.precip = dir / "precip.csv";
    std::vector<std::filesystem::path> entries;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        entries.push_back(e.path());
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& path : entries) {
        auto name = path.filename().string();
        if (name.starts_with("extra_") && name.ends_with(".csv")) {
            p.extras[name.substr(6, name.size() - 10)] = path;
        }
    }
    return p;
}

AnnualSeries load_annual_csv(const std::filesystem::path& path,
                             const std::string& value_column,
                             const std::string& label) {
    auto t = csv::read_table(path);
    csv::expect_header(t, {"year", value_column});
    std::vector<std::pair<int, double>> rows;
    rows.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        int line = t.line_numbers[i];
        int year = static_cast<int>(csv::parse_long(t.rows[i][0], t.path, line));
        double value = csv::parse_double(t.rows[i][1], t.path, line);
        rows.emplace_back(year, value);
    }
    return series_from_rows(t.path, rows, label);
}

void save_annual_csv(const std::filesystem::path& path, const AnnualSeries& s,
                     const std::string& value_column) {
    csv::Writer w(path, {"year", value_column});
    for (std::size_t i = 0; i < s.size(); ++i) {
        w.row(s.year_at(i), s.values()[i]);
    }
}

ExposureHistogramSeries load_exposure_csv(const std::filesystem::path& path) {
    auto t = csv::read_table(path);
    csv::expect_header(t, {"year", "bin_lo_c", "bin_hi_c", "hours"});
    // year -> (bin_lo -> (bin_hi, hours))
    std::map<int, std::map<int, std::pair<int, double>>> by_year;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        int line = t.line_numbers[i];
        int year = static_cast<int>(csv::parse_long(t.rows[i][0], t.path, line));
        int lo = static_cast<int>(csv::parse_long(t.rows[i][1], t.path, line));
        int hi = static_cast<int>(csv::parse_long(t.rows[i][2], t.path, line));
        double hours = csv::parse_double(t.rows[i][3], t.path, line);
        auto [it, inserted] = by_year[year].emplace(lo, std::make_pair(hi, hours));
        if (!inserted) {
            throw ValidationError(t.path + ":" + std::to_string(line) +
                                  ": duplicate bin " + std::to_string(lo) +
                                  " in year " + std::to_string(year));
        }
    }
    if (by_year.empty()) throw ParseError(t.path + ": no data rows");

    // Edges from the first year; all years must agree.
    std::vector<int> edges;
    const auto& first = by_year.begin()->second;
    for (const auto& [lo, rest] : first) {
        if (edges.empty()) edges.push_back(lo);
        if (lo != edges.back()) {
            throw ValidationError(t.path + ": bins not contiguous at " +
                                  std::to_string(lo) + " C");
        }
        edges.push_back(rest.first);
    }
    std::size_t nbins = edges.size() - 1;

    int first_year = by_year.begin()->first;
    int prev = first_year - 1;
    std::vector<double> hours;
    hours.reserve(by_year.size() * nbins);
    for (const auto& [year, row] : by_year) {
        if (year != prev + 1) {
            throw ValidationError(t.path + ": gap in years between " +
                                  std::to_string(prev) + " and " + std::to_string(year));
        }
        prev = year;
        if (row.size() != nbins) {
            throw ValidationError(t.path + ": year " + std::to_string(year) + " has " +
                                  std::to_string(row.size()) + " bins, expected " +
                                  std::to_string(nbins));
        }
        std::size_t k = 0;
        for (const auto& [lo, rest] : row) {
            if (lo != edges[k] || rest.first != edges[k + 1]) {
                throw ValidationError(t.path + ": year " + std::to_string(year) +
                                      " bin edges differ from first year at " +
                                      std::to_string(lo) + " C");
            }
            hours.push_back(rest.second);
            ++k;
        }
    }
    return ExposureHistogramSeries(edges, first_year, std::move(hours));
}

void save_exposure_csv(const std::filesystem::path& path,
                       const ExposureHistogramSeries& s) {
    csv::Writer w(path, {"year", "bin_lo_c", "bin_hi_c", "hours"});
    for (int y = s.first_year(); y <= s.last_year(); ++y) {
        auto row = s.year(y);
        for (int k = 0; k < s.bins(); ++k) {
            w.row(y, s.edges()[static_cast<std::size_t>(k)],
                  s.edges()[static_cast<std::size_t>(k) + 1],
                  row[static_cast<std::size_t>(k)]);
        }
    }
}

const AnnualSeries& Dataset::extra(const std::string& name) const {
    auto it = extras.find(name);
    if (it == extras.end()) {
        throw ValidationError("required covariate '" + name +
                              "' is not present in the dataset");
    }
    return it->second;
}

void finalize_dataset(Dataset& ds) {
    // Usable years: TFP, exposure and precip all present, and the full R&D
    // lag depth RD_{t-L+1..t} available.
    YearRange r = ds.tfp.range();
    r = intersect(r, ds.exposure.range());
    r = intersect(r, ds.precip.range());
    YearRange lag_ok{ds.rd.first_year() + ds.lag_years - 1, ds.rd.last_year()};
    YearRange usable = intersect(r, lag_ok);
    if (usable.empty()) {
        throw ValidationError(
            "dataset alignment: no usable regression years (TFP " +
            std::to_string(ds.tfp.first_year()) + ".." + std::to_string(ds.tfp.last_year()) +
            ", R&D lag depth satisfied from " + std::to_string(lag_ok.first) + ")");
    }
    ds.usable = usable;
    ds.dropped_tfp_years.clear();
    for (int y = ds.tfp.first_year(); y <= ds.tfp.last_year(); ++y) {
        bool weather_ok = ds.exposure.range().contains(y) && ds.precip.range().contains(y);
        if (weather_ok && !lag_ok.contains(y)) ds.dropped_tfp_years.push_back(y);
    }
}

Dataset load_dataset(const DatasetPaths& paths, int lag_years) {
    Dataset ds;
    ds.lag_years = lag_years;
    ds.tfp = load_annual_csv(paths.tfp, "tfp_index", "tfp");
    ds.rd = load_annual_csv(paths.rd, "spend_b2020usd", "rd");
    ds.precip = load_annual_csv(paths.precip, "precip_mm", "precip");
    ds.exposure = load_exposure_csv(paths.exposure);
    for (const auto& [name, path] : paths.extras) {
        ds.extras.emplace(name, load_annual_csv(path, "value", name));
    }
    finalize_dataset(ds);
    validate_dataset(ds);
    return ds;
}

void validate_dataset(const Dataset& ds) {
    require_positive(ds.tfp, "tfp");
    require_positive(ds.rd, "rd");
    if (!ds.exposure.unit_bins()) {
        throw ValidationError("dataset exposure must use the raw 1 C bin grid");
    }
    check_conservation(ds.exposure);
    if (ds.lag_years < 1) throw ValidationError("lag_years must be >= 1");
    if (ds.usable.empty()) throw ValidationError("dataset has no usable window");
    for (int y = ds.usable.first; y <= ds.usable.last; ++y) {
        if (!ds.tfp.covers(y) || !ds.exposure.range().contains(y) ||
            !ds.precip.covers(y)) {
            throw ValidationError("usable window year " + std::to_string(y) +
                                  " lacks TFP or weather coverage");
        }
        if (!ds.rd.covers({y - ds.lag_years + 1, y})) {
            throw ValidationError("usable window year " + std::to_string(y) +
                                  " lacks R&D lag depth");
        }
    }
}

// --- scenarios --------------------------------------------------------------

std::string ssp_name(Ssp s) {
    switch (s) {
        case Ssp::ssp126: return "SSP1-2.6";
        case Ssp::ssp245: return "SSP2-4.5";
        case Ssp::ssp370: return "SSP3-7.0";
        case Ssp::ssp585: return "SSP5-8.5";
    }
    throw ValidationError("unknown SSP");
}

std::string ssp_slug(Ssp s) {
    switch (s) {
        case Ssp::ssp126: return "ssp126";
        case Ssp::ssp245: return "ssp245";
        case Ssp::ssp370: return "ssp370";
        case Ssp::ssp585: return "ssp585";
    }
    throw ValidationError("unknown SSP");
}

Ssp parse_ssp(const std::string& text) {
    for (Ssp s : all_ssps()) {
        if (text == ssp_name(s) || text == ssp_slug(s)) return s;
    }
    throw ValidationError("unknown SSP '" + text +
                          "' (expected SSP1-2.6, SSP2-4.5, SSP3-7.0 or SSP5-8.5)");
}

const std::vector<Ssp>& all_ssps() {
    static const std::vector<Ssp> all = {Ssp::ssp126, Ssp::ssp245, Ssp::ssp370,
                                         Ssp::ssp585};
    return all;
}

ScenarioSet load_scenario_set(const std::filesystem::path& dir, Ssp ssp) {
    ScenarioSet set;
    set.ssp = ssp;
    std::string prefix = "scenario_" + ssp_slug(ssp) + "_";
    std::vector<std::string> gcms;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        auto name = e.path().filename().string();
        if (name.starts_with(prefix) && name.ends_with("_exposure.csv")) {
            gcms.push_back(name.substr(prefix.size(),
                                       name.size() - prefix.size() - 13));
        }
    }
    std::sort(gcms.begin(), gcms.end());
    for (const auto& gcm : gcms) {
        ScenarioMember m;
        m.gcm_id = gcm;
        m.exposure = load_exposure_csv(dir / (prefix + gcm + "_exposure.csv"));
        m.precip = load_annual_csv(dir / (prefix + gcm + "_precip.csv"), "precip_mm",
                                   "precip_" + gcm);
        set.members.push_back(std::move(m));
    }
    if (set.members.empty()) {
        throw IoError("no scenario files for " + ssp_name(ssp) + " under " +
                      dir.string());
    }
    return set;
}

std::vector<Ssp> discover_ssps(const std::filesystem::path& dir) {
    std::vector<Ssp> found;
    for (Ssp s : all_ssps()) {
        std::string prefix = "scenario_" + ssp_slug(s) + "_";
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            auto name = e.path().filename().string();
            if (name.starts_with(prefix) && name.ends_with("_exposure.csv")) {
                found.push_back(s);
                break;
            }
        }
    }
    return found;
}

void validate_scenario_set(const ScenarioSet& set, YearRange reference_window,
                           int horizon_year) {
    std::set<std::string> ids;
    for (const auto& m : set.members) {
        if (!ids.insert(m.gcm_id).second) {
            throw ValidationError(ssp_name(set.ssp) + ": duplicate GCM id '" +
                                  m.gcm_id + "'");
        }
        YearRange need{reference_window.first, horizon_year};
        if (!m.exposure.range().contains(need.first) ||
            !m.exposure.range().contains(need.last) || !m.precip.covers(need)) {
            throw ValidationError(ssp_name(set.ssp) + "/" + m.gcm_id +
                                  ": member must cover " + std::to_string(need.first) +
                                  ".." + std::to_string(need.last));
        }
        if (!m.exposure.unit_bins()) {
            throw ValidationError(ssp_name(set.ssp) + "/" + m.gcm_id +
                                  ": exposure must use the raw 1 C bin grid");
        }
        check_conservation(m.exposure);
    }
}

} // namespace agrotrend
