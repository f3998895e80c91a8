#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "deltal/series.hpp"

namespace deltal {

/**
 * Direction the centered window extends when L is even and the probed point
 * cannot sit at the exact center. `left` puts the point one position right
 * of center (window reaches one step further left than right); `right` is
 * the mirrored choice.
 */
enum class EvenShift { left, right };

/**
 * |Delta| relief matrix: per-point absolute deviation of the profile from a
 * least-squares line over a window centered on that point, for every time
 * index t = 1..n and window length L = l_min..l_max.
 *
 * A cell is defined iff its centered window lies fully inside [1, n];
 * boundary cells are masked out, never computed on shrunken windows.
 */
struct DeltaMatrix {
    std::size_t n = 0;
    int l_min = 0;
    int l_max = 0;
    std::vector<double> values;          // row-major, one row per L, columns t = 1..n
    std::vector<std::uint8_t> defined_mask;

    std::size_t rows() const { return static_cast<std::size_t>(l_max - l_min + 1); }
    std::size_t cell(std::size_t t, int window_length) const {
        return static_cast<std::size_t>(window_length - l_min) * n + (t - 1);
    }
    double at(std::size_t t, int window_length) const { return values[cell(t, window_length)]; }
    bool is_defined(std::size_t t, int window_length) const {
        return defined_mask[cell(t, window_length)] != 0;
    }
};

/**
 * Window of length L centered on t: [t - (L-1)/2, t + (L-1)/2] for odd L,
 * and for even L the range shifted per `shift` (default: one step further
 * left than right). Returns nullopt when the window exits [1, n].
 */
std::optional<IndexRange> centered_window(std::size_t t, int window_length, std::size_t n,
                                          EvenShift shift = EvenShift::left);

/**
 * |X_t - fit(t)| where fit is the least-squares line over the window of
 * length L centered on t. nullopt when the window is undefined. Two-point
 * windows interpolate exactly, so L = 2 yields 0.
 */
std::optional<double> delta_at(const Profile& profile, std::size_t t, int window_length,
                               EvenShift shift = EvenShift::left);

/**
 * Full |Delta| matrix over t = 1..N and L = l_min..l_max.
 *
 * Each L row slides its window with rolling sums, giving O(1) work per cell;
 * rows are computed in parallel when OpenMP is enabled (`threads` <= 0 uses
 * the runtime default). Output is deterministic regardless of schedule and
 * matches the per-cell fits of reference::delta_matrix.
 */
DeltaMatrix delta_matrix(const TimeSeries& series, int l_min, int l_max,
                         EvenShift shift = EvenShift::left, int threads = 0);

namespace reference {

/// Serial per-cell evaluation (a fresh least-squares fit per window). Kept
/// as the plain-definition baseline the rolling kernel is tested against.
DeltaMatrix delta_matrix(const TimeSeries& series, int l_min, int l_max,
                         EvenShift shift = EvenShift::left);

}  // namespace reference

}  // namespace deltal
