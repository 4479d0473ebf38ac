#include "agrotrend/diurnal.hpp"

#include <cmath>

#include "agrotrend/errors.hpp"

namespace agrotrend {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int raw_bin_of(double temp_c) {
    double offset = temp_c - ExposureHistogramSeries::kRawLowC;
    int k = static_cast<int>(std::floor(offset));
    if (k < 0) return 0;
    if (k >= ExposureHistogramSeries::kRawBins) return ExposureHistogramSeries::kRawBins - 1;
    return k;
}

double diurnal_temperature(double tau, double tmin, double tmax, double tmin_next,
                           const DiurnalAnchors& anchors) {
    double rise = anchors.tmax_hour - anchors.tmin_hour;
    double fall = 24.0 - rise;
    if (tau < rise) {
        // ascending half-sine tmin -> tmax
        double phase = tau / rise;
        return tmin + (tmax - tmin) * 0.5 * (1.0 - std::cos(kPi * phase));
    }
    // descending half-sine tmax -> tmin_next
    double phase = (tau - rise) / fall;
    return tmax - (tmax - tmin_next) * 0.5 * (1.0 - std::cos(kPi * phase));
}

std::array<double, ExposureHistogramSeries::kRawBins>
diurnal_exposure(double tmin, double tmax, double tmin_next,
                 const DiurnalAnchors& anchors) {
    if (!std::isfinite(tmin) || !std::isfinite(tmax) || !std::isfinite(tmin_next)) {
        throw ValidationError("diurnal exposure: non-finite temperature");
    }
    if (tmin > tmax) {
        throw ValidationError("diurnal exposure: tmin " + std::to_string(tmin) +
                              " above tmax " + std::to_string(tmax));
    }
    if (!(anchors.tmax_hour > anchors.tmin_hour) ||
        anchors.tmax_hour - anchors.tmin_hour >= 24.0) {
        throw ValidationError("diurnal exposure: bad anchor hours");
    }
    std::array<double, ExposureHistogramSeries::kRawBins> hours{};
    constexpr int kSteps = 96;
    constexpr double kStepHours = 24.0 / kSteps;
    for (int i = 0; i < kSteps; ++i) {
        double tau = (i + 0.5) * kStepHours; // sample at step midpoints
        double t = diurnal_temperature(tau, tmin, tmax, tmin_next, anchors);
        hours[static_cast<std::size_t>(raw_bin_of(t))] += kStepHours;
    }
    return hours;
}

} // namespace agrotrend
