#pragma once

#include <optional>
#include <vector>

#include "deltal/series.hpp"

namespace deltal {

/// One (L, F(L)) sample of the fluctuation function.
struct SpectrumPoint {
    int window_length = 0;
    double fluctuation = 0.0;
};

/// Scaling-exponent fit over a sub-range of the spectrum, in log-log space.
struct AlphaFit {
    double alpha = 0.0;
    double r_squared = 0.0;
    int fit_lo = 0;  // smallest L used
    int fit_hi = 0;  // largest L used
    std::size_t n_points = 0;
};

/**
 * Fluctuation function F(L) sampled at increasing window lengths, with the
 * optional scaling-exponent fit attached once fit_alpha has run.
 */
struct FluctuationSpectrum {
    std::vector<SpectrumPoint> points;
    std::optional<AlphaFit> alpha;
};

/**
 * RMS deviation E(j, L) of the profile from its least-squares line over
 * window j of length L, windows being the non-overlapping blocks
 * [(j-1)L + 1, jL]. Divides by L, not L - 2.
 */
double window_rms(const Profile& profile, std::size_t j, int window_length);

/**
 * F(L): mean of E(j, L) over all J = floor(N/L) full windows. Trailing
 * N mod L points are discarded. Requires 2 <= L <= N/2 so that at least
 * two full windows exist.
 */
double fluctuation(const Profile& profile, int window_length);

/**
 * Evaluate F(L) on the profile of `series` for every requested window
 * length. Lengths must be strictly increasing and each within [3, N/2];
 * L = 2 is excluded because F(2) is identically zero. Per-length work runs
 * in parallel when OpenMP is enabled; `threads` <= 0 uses the runtime
 * default. Output is deterministic regardless of thread count.
 */
FluctuationSpectrum dfa_spectrum(const TimeSeries& series,
                                 const std::vector<int>& window_lengths,
                                 int threads = 0);

/**
 * Least-squares slope of log F vs log L over points with fit_lo <= L <= fit_hi.
 * Needs at least three points, all with F > 0.
 *
 * Throws std::runtime_error mentioning "zero fluctuation" when some F in the
 * range vanishes, std::invalid_argument when fewer than three points fall in
 * the range.
 */
AlphaFit fit_alpha(const FluctuationSpectrum& spectrum, int fit_lo, int fit_hi);

/// Geometric window grid, ratio 2^(1/4), from 4 up to max(4, n/4).
std::vector<int> default_window_grid(std::size_t n);

}  // namespace deltal
