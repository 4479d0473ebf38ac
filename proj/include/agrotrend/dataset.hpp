#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "agrotrend/exposure.hpp"
#include "agrotrend/series.hpp"

namespace agrotrend {

struct DatasetPaths {
    std::filesystem::path tfp;
    std::filesystem::path rd;
    std::filesystem::path exposure;
    std::filesystem::path precip;
    std::map<std::string, std::filesystem::path> extras;

    // tfp.csv / rd.csv / exposure.csv / precip.csv / extra_<name>.csv under dir.
    static DatasetPaths discover(const std::filesystem::path& dir);
};

// Validated, year-aligned inputs for the regressions. Immutable once built.
struct Dataset {
    AnnualSeries tfp;    // productivity index, > 0
    AnnualSeries rd;     // billions of constant-2020 dollars per year, > 0
    AnnualSeries precip; // mm/year
    ExposureHistogramSeries exposure; // raw 1 C bins
    std::map<std::string, AnnualSeries> extras;

    int lag_years = 50;
    YearRange usable;                   // regression-eligible years
    std::vector<int> dropped_tfp_years; // TFP years lost to missing R&D lag depth

    const AnnualSeries& extra(const std::string& name) const; // named-covariate error
    bool has_extra(const std::string& name) const { return extras.count(name) != 0; }
};

Dataset load_dataset(const DatasetPaths& paths, int lag_years = 50);

// Re-checks every type invariant; public so callers can audit datasets they
// assembled in memory.
void validate_dataset(const Dataset& ds);

// Builds the usable window and dropped-year list for in-memory datasets.
void finalize_dataset(Dataset& ds);

// --- CSV schemas ---------------------------------------------------------

AnnualSeries load_annual_csv(const std::filesystem::path& path,
                             const std::string& value_column,
                             const std::string& label);
void save_annual_csv(const std::filesystem::path& path, const AnnualSeries& s,
                     const std::string& value_column);

ExposureHistogramSeries load_exposure_csv(const std::filesystem::path& path);
void save_exposure_csv(const std::filesystem::path& path,
                       const ExposureHistogramSeries& s);

// --- Climate scenarios ----------------------------------------------------

enum class Ssp { ssp126, ssp245, ssp370, ssp585 };

std::string ssp_name(Ssp s);     // "SSP1-2.6", ...
std::string ssp_slug(Ssp s);     // "ssp126", ... (used in file names)
Ssp parse_ssp(const std::string& text);
const std::vector<Ssp>& all_ssps();

struct ScenarioMember {
    std::string gcm_id;
    ExposureHistogramSeries exposure; // raw bins, 1950..2100
    AnnualSeries precip;
};

struct ScenarioSet {
    Ssp ssp = Ssp::ssp245;
    std::vector<ScenarioMember> members;
};

// Scans dir for scenario_<ssp>_<gcm>_exposure.csv / _precip.csv pairs.
ScenarioSet load_scenario_set(const std::filesystem::path& dir, Ssp ssp);
std::vector<Ssp> discover_ssps(const std::filesystem::path& dir);

void validate_scenario_set(const ScenarioSet& set,
                           YearRange reference_window = {1950, 1960},
                           int horizon_year = 2100);

} // namespace agrotrend
