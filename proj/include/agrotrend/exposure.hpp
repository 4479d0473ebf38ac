#pragma once

#include <span>
#include <vector>

#include "agrotrend/series.hpp"

namespace agrotrend {

// Per-year hours of temperature exposure across integer-degree bins.
// Raw support is [-30, 50) C in 1 C bins; top/bottom coding widens the
// terminal bins. Immutable after construction.
class ExposureHistogramSeries {
public:
    static constexpr int kRawLowC = -30;
    static constexpr int kRawHighC = 50;
    static constexpr int kRawBins = 80;

    ExposureHistogramSeries() = default;
    // `hours` is row-major: size() == nyears * (edges.size() - 1).
    ExposureHistogramSeries(std::vector<int> bin_edges, int first_year,
                            std::vector<double> hours);

    static std::vector<int> raw_edges(); // -30, -29, ..., 50

    int bins() const { return static_cast<int>(edges_.size()) - 1; }
    const std::vector<int>& edges() const { return edges_; }
    bool unit_bins() const; // true for the raw 1 C grid

    int first_year() const { return first_year_; }
    int last_year() const { return first_year_ + n_years() - 1; }
    YearRange range() const { return {first_year_, last_year()}; }
    int n_years() const;

    std::span<const double> year(int y) const;
    double hours(int y, int bin) const { return year(y)[static_cast<std::size_t>(bin)]; }
    double year_total(int y) const;

    std::vector<double> bin_centers() const;    // midpoints of (possibly wide) bins
    std::vector<double> pooled() const;         // per-bin totals over all years
    ExposureHistogramSeries window(YearRange r) const;

private:
    std::vector<int> edges_;
    int first_year_ = 0;
    std::vector<double> hours_;
};

// Conservation: every year's bins must sum to that year's calendar hours.
// Applies to full-calendar-year histograms only (seasonal slices are partial).
void check_conservation(const ExposureHistogramSeries& s, double rel_tol = 1e-6);

// Tail coding computed on the pooled (all-years) distribution and applied
// uniformly to every year.
struct BinCoding {
    int low_end = 0;     // raw bins [0 .. low_end] merge into coded bin 0
    int high_start = 0;  // raw bins [high_start .. raw-1] merge into the last bin
    bool degenerate = false;

    int coded_bins() const { return degenerate ? 1 : high_start - low_end + 1; }
    std::vector<int> coded_edges() const;
    // raw bin index -> coded bin index
    int map_bin(int raw_bin) const;
};

BinCoding top_bottom_coding(const ExposureHistogramSeries& raw, double tail_share = 0.001);
ExposureHistogramSeries apply_coding(const ExposureHistogramSeries& raw, const BinCoding& c);
std::vector<double> apply_coding(std::span<const double> raw_row, const BinCoding& c);

// Translate exposure mass by an integer number of degree bins; mass pushed
// past the raw support accumulates in the terminal bins. Unit bins only.
ExposureHistogramSeries shift_histogram(const ExposureHistogramSeries& s, int delta_c);
std::vector<double> shift_histogram(std::span<const double> row, int delta_c);

// Multiply a precipitation series by (1 + pct/100); pct >= -100.
AnnualSeries scale_precip(const AnnualSeries& p, double pct);

} // namespace agrotrend
