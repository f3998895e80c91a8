#pragma once

#include <cstddef>
#include <vector>

namespace deltal {

/**
 * Measurement series x_t with implicit unit-step time index t = 1..N.
 *
 * Construction validates the data: the series must be non-empty and every
 * sample finite. All time indices in this library are 1-based, matching
 * the t = 1..N convention of the analysis formulas; at(t) maps to the
 * underlying 0-based storage.
 */
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> samples);

    std::size_t size() const { return samples_.size(); }
    const std::vector<double>& values() const { return samples_; }

    /// Sample at 1-based time index t (no bounds check).
    double at(std::size_t t) const { return samples_[t - 1]; }

private:
    std::vector<double> samples_;
};

/**
 * Accumulation series X_t = sum_{k<=t} (x_k - <x>), where <x> is the global
 * mean of the source series. X_N vanishes up to accumulation round-off.
 */
struct Profile {
    std::vector<double> values;
    double source_mean = 0.0;

    std::size_t size() const { return values.size(); }
    double at(std::size_t t) const { return values[t - 1]; }
};

/// Inclusive 1-based index range [lo, hi].
struct IndexRange {
    std::size_t lo = 0;
    std::size_t hi = 0;

    std::size_t length() const { return hi - lo + 1; }
    bool operator==(const IndexRange&) const = default;
};

/**
 * Least-squares line over a profile range. Slope and intercept are expressed
 * in the absolute 1-based time frame, so value_at(t) evaluates the fitted
 * line at series position t.
 */
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    IndexRange domain;

    double value_at(std::size_t t) const {
        return slope * static_cast<double>(t) + intercept;
    }
};

/// Arithmetic mean of the series samples.
double series_mean(const TimeSeries& series);

/// Build the accumulation profile of a series.
Profile build_profile(const TimeSeries& series);

/**
 * Ordinary least squares line through (t, X_t) for t in range.
 * Computed with centered sums (means of t and X subtracted first).
 *
 * Throws std::invalid_argument if the range has fewer than two points,
 * std::out_of_range if it exits the profile.
 */
LinearFit least_squares_fit(const Profile& profile, IndexRange range);

}  // namespace deltal
