#pragma once

#include <cstdint>
#include <vector>

#include "deltal/series.hpp"

namespace deltal {

/// Mother wavelets: Haar, and the second derivative of a Gaussian.
enum class WaveletKind { haar, gauss2 };

/**
 * Wavelet coefficient matrix W(a, b) over a configured scale list and every
 * integer shift b = 1..n. Values are stored signed; magnitude |W| is the
 * rendering convention.
 *
 * interior_mask flags the cells whose (effective) wavelet support lies fully
 * inside [1, n]; boundary cells are computed all the same, the flag just
 * records the overhang.
 */
struct Scalegram {
    std::size_t n = 0;
    WaveletKind kind = WaveletKind::gauss2;
    std::vector<double> scales;
    std::vector<double> values;  // row-major, one row per scale, columns b = 1..n
    std::vector<std::uint8_t> interior_mask;

    std::size_t cell(std::size_t scale_index, std::size_t b) const {
        return scale_index * n + (b - 1);
    }
    double at(std::size_t scale_index, std::size_t b) const { return values[cell(scale_index, b)]; }
    bool is_interior(std::size_t scale_index, std::size_t b) const {
        return interior_mask[cell(scale_index, b)] != 0;
    }
};

/// One ridge line of the scalegram skeleton: strict |W| maxima along b,
/// chained across consecutive scales.
struct SkeletonLine {
    struct Point {
        std::size_t scale_index = 0;
        std::size_t b = 0;
        double magnitude = 0.0;
    };
    std::vector<Point> points;
};

/**
 * Mother wavelet value at u. Haar is +1 on [0, 1/2), -1 on [1/2, 1), 0
 * elsewhere; gauss2 is (1 - u^2) exp(-u^2 / 2).
 */
double mother_wavelet(WaveletKind kind, double u);

/**
 * Discrete W(a, b) = (1/sqrt(a)) sum_{t=1..N} x_t psi((t - b)/a + c), a
 * Riemann sum with unit time step over the full series extent. The offset c
 * centers the wavelet support on b: 1/2 for Haar (whose mother function
 * lives on [0, 1)), 0 for gauss2 (already symmetric about 0).
 *
 * Requires a > 0 (and a >= 2 for Haar, whose sampled form degenerates
 * below that), 1 <= b <= N.
 */
double cwt_coefficient(const TimeSeries& series, WaveletKind kind, double scale, std::size_t b);

/**
 * W(a, b) for every scale in the strictly increasing positive list and every
 * b = 1..N. Scale rows run in parallel when OpenMP is enabled; deterministic
 * regardless of thread count.
 */
Scalegram scalegram(const TimeSeries& series, WaveletKind kind, const std::vector<double>& scales,
                    int threads = 0);

/**
 * Local-maxima ridge lines: per scale, the strict local maxima of |W| along
 * b; maxima at consecutive scales are chained into one line while the shift
 * moves by at most `max_drift`. Lines whose peak magnitude falls below
 * `magnitude_floor` times the matrix maximum are dropped.
 */
std::vector<SkeletonLine> skeleton(const Scalegram& scalegram, std::size_t max_drift = 2,
                                   double magnitude_floor = 0.05);

namespace reference {

/// Serial per-cell evaluation through cwt_coefficient; equal to the
/// production scalegram bit for bit.
Scalegram scalegram(const TimeSeries& series, WaveletKind kind, const std::vector<double>& scales);

}  // namespace reference

}  // namespace deltal
