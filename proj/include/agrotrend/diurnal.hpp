#pragma once

#include <array>

#include "agrotrend/exposure.hpp"

namespace agrotrend {

// Anchor times in local solar hours: the day runs from the morning minimum
// to the next day's morning minimum.
struct DiurnalAnchors {
    double tmin_hour = 6.0;
    double tmax_hour = 16.0;
};

// Temperature along the double-sine path at `tau` hours after the morning
// anchor (tau in [0, 24)): rises from tmin to tmax by the afternoon anchor,
// then descends toward the next day's tmin.
double diurnal_temperature(double tau, double tmin, double tmax, double tmin_next,
                           const DiurnalAnchors& anchors = {});

// Hours per raw 1 C bin for one cell-day: 96 quarter-hour samples, each
// assigned wholly to the bin containing its temperature. Sums to 24 exactly.
// Temperatures outside [-30, 50) accumulate in the terminal bins.
std::array<double, ExposureHistogramSeries::kRawBins>
diurnal_exposure(double tmin, double tmax, double tmin_next,
                 const DiurnalAnchors& anchors = {});

// Raw bin index for a temperature, clamped to the support.
int raw_bin_of(double temp_c);

} // namespace agrotrend
