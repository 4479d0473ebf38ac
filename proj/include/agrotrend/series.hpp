#pragma once

#include <span>
#include <string>
#include <vector>

namespace agrotrend {

struct YearRange {
    int first = 0;
    int last = -1; // inclusive; last < first means empty

    bool empty() const { return last < first; }
    int size() const { return empty() ? 0 : last - first + 1; }
    bool contains(int year) const { return year >= first && year <= last; }
};

YearRange intersect(YearRange a, YearRange b);

// Year-indexed real series over a contiguous, strictly increasing year grid.
// Immutable after construction; transforms return new series.
class AnnualSeries {
public:
    AnnualSeries() = default;
    AnnualSeries(std::string label, int first_year, std::vector<double> values);

    const std::string& label() const { return label_; }
    int first_year() const { return first_year_; }
    int last_year() const { return first_year_ + static_cast<int>(values_.size()) - 1; }
    YearRange range() const { return {first_year_, last_year()}; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    bool covers(int year) const { return range().contains(year); }
    bool covers(YearRange r) const { return covers(r.first) && covers(r.last); }

    double at(int year) const; // throws ValidationError when out of range
    int year_at(std::size_t index) const { return first_year_ + static_cast<int>(index); }
    std::span<const double> values() const { return values_; }

    AnnualSeries window(YearRange r) const; // throws on non-covered range
    AnnualSeries relabel(std::string label) const;

private:
    std::string label_;
    int first_year_ = 0;
    std::vector<double> values_;
};

// Common-window view of several series; error on empty intersection.
YearRange common_range(std::span<const AnnualSeries> series);
std::vector<AnnualSeries> align(std::span<const AnnualSeries> series);

double mean_over(const AnnualSeries& s, YearRange window);

} // namespace agrotrend
