#include "deltal/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace deltal {

TimeSeries::TimeSeries(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) {
        throw std::invalid_argument("time series must contain at least one sample");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i])) {
            throw std::invalid_argument("non-finite sample at position " +
                                        std::to_string(i + 1));
        }
    }
}

double series_mean(const TimeSeries& series) {
    double sum = 0.0;
    for (double x : series.values()) sum += x;
    return sum / static_cast<double>(series.size());
}

Profile build_profile(const TimeSeries& series) {
    const double mean = series_mean(series);
    Profile profile;
    profile.source_mean = mean;
    profile.values.reserve(series.size());
    double acc = 0.0;
    for (double x : series.values()) {
        acc += x - mean;
        profile.values.push_back(acc);
    }
    return profile;
}

LinearFit least_squares_fit(const Profile& profile, IndexRange range) {
    if (range.lo < 1 || range.hi > profile.size() || range.lo > range.hi) {
        throw std::out_of_range("fit range [" + std::to_string(range.lo) + ", " +
                                std::to_string(range.hi) + "] exits profile of length " +
                                std::to_string(profile.size()));
    }
    const std::size_t len = range.length();
    if (len < 2) {
        throw std::invalid_argument("degenerate fit: range must contain at least two points");
    }

    // Centered normal equations: subtract the means of t and X before the sums
    // so the result is stable for large absolute indices.
    const double n = static_cast<double>(len);
    const double t_mean = (static_cast<double>(range.lo) + static_cast<double>(range.hi)) / 2.0;
    double x_mean = 0.0;
    for (std::size_t t = range.lo; t <= range.hi; ++t) x_mean += profile.at(t);
    x_mean /= n;

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t t = range.lo; t <= range.hi; ++t) {
        const double dt = static_cast<double>(t) - t_mean;
        sxx += dt * dt;
        sxy += dt * (profile.at(t) - x_mean);
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = x_mean - fit.slope * t_mean;
    fit.domain = range;
    return fit;
}

}  // namespace deltal
