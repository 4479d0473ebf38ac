#include "agrotrend/exposure.hpp"

#include <cmath>
#include <numeric>

#include "agrotrend/calendar.hpp"
#include "agrotrend/errors.hpp"

namespace agrotrend {

ExposureHistogramSeries::ExposureHistogramSeries(std::vector<int> bin_edges,
                                                 int first_year,
                                                 std::vector<double> hours)
    : edges_(std::move(bin_edges)), first_year_(first_year), hours_(std::move(hours)) {
    if (edges_.size() < 2) throw ValidationError("exposure: need at least one bin");
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i] <= edges_[i - 1]) {
            throw ValidationError("exposure: bin edges not strictly increasing");
        }
    }
    std::size_t nbins = edges_.size() - 1;
    if (hours_.empty() || hours_.size() % nbins != 0) {
        throw ValidationError("exposure: hours array not a whole number of years");
    }
    for (std::size_t i = 0; i < hours_.size(); ++i) {
        if (!std::isfinite(hours_[i]) || hours_[i] < 0.0) {
            int year = first_year_ + static_cast<int>(i / nbins);
            throw ValidationError("exposure: negative or non-finite hours in year " +
                                  std::to_string(year));
        }
    }
}

std::vector<int> ExposureHistogramSeries::raw_edges() {
    std::vector<int> e(kRawBins + 1);
    std::iota(e.begin(), e.end(), kRawLowC);
    return e;
}

bool ExposureHistogramSeries::unit_bins() const {
    if (bins() != kRawBins) return false;
    for (int k = 0; k < bins(); ++k) {
        if (edges_[static_cast<std::size_t>(k) + 1] - edges_[static_cast<std::size_t>(k)] != 1)
            return false;
    }
    return true;
}

int ExposureHistogramSeries::n_years() const {
    return static_cast<int>(hours_.size() / (edges_.size() - 1));
}

std::span<const double> ExposureHistogramSeries::year(int y) const {
    if (!range().contains(y)) {
        throw ValidationError("exposure: year " + std::to_string(y) + " outside " +
                              std::to_string(first_year_) + ".." +
                              std::to_string(last_year()));
    }
    std::size_t nbins = edges_.size() - 1;
    return {hours_.data() + static_cast<std::size_t>(y - first_year_) * nbins, nbins};
}

double ExposureHistogramSeries::year_total(int y) const {
    auto row = year(y);
    double s = 0.0;
    for (double h : row) s += h;
    return s;
}

std::vector<double> ExposureHistogramSeries::bin_centers() const {
    std::vector<double> c(static_cast<std::size_t>(bins()));
    for (int k = 0; k < bins(); ++k) {
        c[static_cast<std::size_t>(k)] =
            0.5 * (edges_[static_cast<std::size_t>(k)] + edges_[static_cast<std::size_t>(k) + 1]);
    }
    return c;
}

std::vector<double> ExposureHistogramSeries::pooled() const {
    std::vector<double> total(static_cast<std::size_t>(bins()), 0.0);
    for (int y = first_year(); y <= last_year(); ++y) {
        auto row = year(y);
        for (std::size_t k = 0; k < row.size(); ++k) total[k] += row[k];
    }
    return total;
}

ExposureHistogramSeries ExposureHistogramSeries::window(YearRange r) const {
    if (r.empty() || !range().contains(r.first) || !range().contains(r.last)) {
        throw ValidationError("exposure: window " + std::to_string(r.first) + ".." +
                              std::to_string(r.last) + " not covered");
    }
    std::size_t nbins = edges_.size() - 1;
    auto begin = hours_.begin() + static_cast<std::size_t>(r.first - first_year_) * nbins;
    return ExposureHistogramSeries(
        edges_, r.first,
        std::vector<double>(begin, begin + static_cast<std::size_t>(r.size()) * nbins));
}

void check_conservation(const ExposureHistogramSeries& s, double rel_tol) {
    for (int y = s.first_year(); y <= s.last_year(); ++y) {
        double expect = cal::hours_in_year(y);
        double got = s.year_total(y);
        if (std::abs(got - expect) > rel_tol * expect) {
            throw ValidationError("exposure: year " + std::to_string(y) + " totals " +
                                  std::to_string(got) + " h, calendar has " +
                                  std::to_string(expect) + " h");
        }
    }
}

std::vector<int> BinCoding::coded_edges() const {
    if (degenerate) {
        return {ExposureHistogramSeries::kRawLowC, ExposureHistogramSeries::kRawHighC};
    }
    std::vector<int> e;
    e.push_back(ExposureHistogramSeries::kRawLowC);
    for (int k = low_end; k < high_start; ++k) {
        e.push_back(ExposureHistogramSeries::kRawLowC + k + 1);
    }
    e.push_back(ExposureHistogramSeries::kRawHighC);
    return e;
}

int BinCoding::map_bin(int raw_bin) const {
    if (degenerate) return 0;
    if (raw_bin <= low_end) return 0;
    if (raw_bin >= high_start) return high_start - low_end;
    return raw_bin - low_end;
}

BinCoding top_bottom_coding(const ExposureHistogramSeries& raw, double tail_share) {
    if (!raw.unit_bins()) {
        throw ValidationError("top/bottom coding expects the raw 1 C bin grid");
    }
    auto pooled = raw.pooled();
    double total = 0.0;
    for (double v : pooled) total += v;
    if (total <= 0.0) throw ValidationError("top/bottom coding: empty histogram");
    double need = tail_share * total;

    BinCoding c;
    double acc = 0.0;
    int low = 0;
    while (low < raw.bins()) {
        acc += pooled[static_cast<std::size_t>(low)];
        if (acc >= need) break;
        ++low;
    }
    acc = 0.0;
    int high = raw.bins() - 1;
    while (high >= 0) {
        acc += pooled[static_cast<std::size_t>(high)];
        if (acc >= need) break;
        --high;
    }
    c.low_end = low;
    c.high_start = high;
    if (high <= low) {
        c.degenerate = true;
        c.low_end = 0;
        c.high_start = raw.bins() - 1;
    }
    return c;
}

std::vector<double> apply_coding(std::span<const double> raw_row, const BinCoding& c) {
    std::vector<double> out(static_cast<std::size_t>(c.coded_bins()), 0.0);
    for (std::size_t k = 0; k < raw_row.size(); ++k) {
        out[static_cast<std::size_t>(c.map_bin(static_cast<int>(k)))] += raw_row[k];
    }
    return out;
}

ExposureHistogramSeries apply_coding(const ExposureHistogramSeries& raw,
                                     const BinCoding& c) {
    if (!raw.unit_bins()) {
        throw ValidationError("apply_coding expects the raw 1 C bin grid");
    }
    std::vector<double> hours;
    hours.reserve(static_cast<std::size_t>(raw.n_years() * c.coded_bins()));
    for (int y = raw.first_year(); y <= raw.last_year(); ++y) {
        auto coded = apply_coding(raw.year(y), c);
        hours.insert(hours.end(), coded.begin(), coded.end());
    }
    return ExposureHistogramSeries(c.coded_edges(), raw.first_year(), std::move(hours));
}

std::vector<double> shift_histogram(std::span<const double> row, int delta_c) {
    int n = static_cast<int>(row.size());
    std::vector<double> out(row.size(), 0.0);
    for (int k = 0; k < n; ++k) {
        int to = std::clamp(k + delta_c, 0, n - 1);
        out[static_cast<std::size_t>(to)] += row[static_cast<std::size_t>(k)];
    }
    return out;
}

ExposureHistogramSeries shift_histogram(const ExposureHistogramSeries& s, int delta_c) {
    if (!s.unit_bins()) {
        throw ValidationError("shift_histogram expects the raw 1 C bin grid");
    }
    if (std::abs(delta_c) > 10) {
        throw ValidationError("shift_histogram: |delta| must be <= 10 C");
    }
    std::vector<double> hours;
    hours.reserve(static_cast<std::size_t>(s.n_years() * s.bins()));
    for (int y = s.first_year(); y <= s.last_year(); ++y) {
        auto shifted = shift_histogram(s.year(y), delta_c);
        hours.insert(hours.end(), shifted.begin(), shifted.end());
    }
    return ExposureHistogramSeries(s.edges(), s.first_year(), std::move(hours));
}

AnnualSeries scale_precip(const AnnualSeries& p, double pct) {
    if (pct < -100.0) {
        throw ValidationError("scale_precip: change below -100%");
    }
    std::vector<double> v(p.values().begin(), p.values().end());
    double f = 1.0 + pct / 100.0;
    for (double& x : v) x *= f;
    return AnnualSeries(p.label(), p.first_year(), std::move(v));
}

} // namespace agrotrend
