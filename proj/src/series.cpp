#include "agrotrend/series.hpp"

#include <cmath>

#include "agrotrend/errors.hpp"

namespace agrotrend {

YearRange intersect(YearRange a, YearRange b) {
    return {std::max(a.first, b.first), std::min(a.last, b.last)};
}

AnnualSeries::AnnualSeries(std::string label, int first_year,
                           std::vector<double> values)
    : label_(std::move(label)), first_year_(first_year), values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("series '" + label_ + "': empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw ValidationError("series '" + label_ + "': non-finite value in year " +
                                  std::to_string(first_year_ + static_cast<int>(i)));
        }
    }
}

double AnnualSeries::at(int year) const {
    if (!covers(year)) {
        throw ValidationError("series '" + label_ + "': year " + std::to_string(year) +
                              " outside " + std::to_string(first_year_) + ".." +
                              std::to_string(last_year()));
    }
    return values_[static_cast<std::size_t>(year - first_year_)];
}

AnnualSeries AnnualSeries::window(YearRange r) const {
    if (r.empty() || !covers(r)) {
        throw ValidationError("series '" + label_ + "': window " +
                              std::to_string(r.first) + ".." + std::to_string(r.last) +
                              " not covered");
    }
    auto begin = values_.begin() + (r.first - first_year_);
    return AnnualSeries(label_, r.first, std::vector<double>(begin, begin + r.size()));
}

AnnualSeries AnnualSeries::relabel(std::string label) const {
    return AnnualSeries(std::move(label), first_year_, values_);
}

YearRange common_range(std::span<const AnnualSeries> series) {
    if (series.empty()) throw ValidationError("align: no series given");
    YearRange r = series.front().range();
    for (const auto& s : series.subspan(1)) r = intersect(r, s.range());
    if (r.empty()) throw ValidationError("align: empty year intersection");
    return r;
}

std::vector<AnnualSeries> align(std::span<const AnnualSeries> series) {
    YearRange r = common_range(series);
    std::vector<AnnualSeries> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(s.window(r));
    return out;
}

double mean_over(const AnnualSeries& s, YearRange window) {
    if (window.empty() || !s.covers(window)) {
        throw ValidationError("series '" + s.label() + "': mean window " +
                              std::to_string(window.first) + ".." +
                              std::to_string(window.last) + " not covered");
    }
    double acc = 0.0;
    for (int y = window.first; y <= window.last; ++y) acc += s.at(y);
    return acc / window.size();
}

} // namespace agrotrend
