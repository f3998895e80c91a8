#include "deltal/delta.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace deltal {

namespace {

int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

struct WindowOffsets {
    std::size_t left;   // window start = t - left
    std::size_t right;  // window end   = t + right
};

WindowOffsets offsets_for(int window_length, EvenShift shift) {
    const std::size_t len = static_cast<std::size_t>(window_length);
    if (window_length % 2 != 0) {
        return {(len - 1) / 2, (len - 1) / 2};
    }
    if (shift == EvenShift::left) {
        return {len / 2, len / 2 - 1};
    }
    return {len / 2 - 1, len / 2};
}

void check_l_range(int l_min, int l_max, std::size_t n) {
    if (l_min < 2 || l_min > l_max || static_cast<std::size_t>(l_max) > n) {
        throw std::out_of_range("window length range [" + std::to_string(l_min) + ", " +
                                std::to_string(l_max) + "] invalid for N=" + std::to_string(n));
    }
}

// One L row of the matrix via rolling window sums. With window [a, b] and
// window-local abscissa u = k - a, maintains s1 = sum X_k and sw = sum u*X_k;
// both update in O(1) per slide. sum_u and sum (u - mean_u)^2 are closed
// forms of L alone, so the fit needs no per-cell pass over the window.
void fill_row_rolling(const Profile& profile, int window_length, EvenShift shift,
                      double* row_values, std::uint8_t* row_mask) {
    const std::size_t n = profile.size();
    const std::size_t len = static_cast<std::size_t>(window_length);
    if (len > n) return;

    const WindowOffsets off = offsets_for(window_length, shift);
    const std::size_t t_first = 1 + off.left;
    const std::size_t t_last = n - off.right;
    if (t_first > t_last) return;

    const double l = static_cast<double>(window_length);
    const double u_mean = (l - 1.0) / 2.0;
    const double u_var = l * (l * l - 1.0) / 12.0;  // sum over the window of (u - u_mean)^2
    const double u_t = static_cast<double>(off.left) - u_mean;  // probed point, centered frame

    double s1 = 0.0;
    double sw = 0.0;
    for (std::size_t k = 1; k <= len; ++k) {
        s1 += profile.at(k);
        sw += static_cast<double>(k - 1) * profile.at(k);
    }

    for (std::size_t t = t_first; t <= t_last; ++t) {
        const std::size_t a = t - off.left;
        if (window_length == 2) {
            // two points determine the line; the residual is identically zero
            row_values[t - 1] = 0.0;
        } else {
            const double slope = (sw - s1 * u_mean) / u_var;
            const double fitted = s1 / l + slope * u_t;
            row_values[t - 1] = std::fabs(profile.at(t) - fitted);
        }
        row_mask[t - 1] = 1;

        if (t < t_last) {
            const double incoming = profile.at(a + len);
            sw += -s1 + profile.at(a) + (l - 1.0) * incoming;
            s1 += incoming - profile.at(a);
        }
    }
}

}  // namespace

std::optional<IndexRange> centered_window(std::size_t t, int window_length, std::size_t n,
                                          EvenShift shift) {
    if (t < 1 || t > n) {
        throw std::out_of_range("index t=" + std::to_string(t) + " out of series [1, " +
                                std::to_string(n) + "]");
    }
    if (window_length < 2) {
        throw std::out_of_range("window length must be at least 2, got " +
                                std::to_string(window_length));
    }
    const WindowOffsets off = offsets_for(window_length, shift);
    if (t <= off.left || t + off.right > n) return std::nullopt;
    return IndexRange{t - off.left, t + off.right};
}

std::optional<double> delta_at(const Profile& profile, std::size_t t, int window_length,
                               EvenShift shift) {
    const auto window = centered_window(t, window_length, profile.size(), shift);
    if (!window) return std::nullopt;
    if (window_length == 2) return 0.0;
    const LinearFit fit = least_squares_fit(profile, *window);
    return std::fabs(profile.at(t) - fit.value_at(t));
}

DeltaMatrix delta_matrix(const TimeSeries& series, int l_min, int l_max, EvenShift shift,
                         int threads) {
    const std::size_t n = series.size();
    check_l_range(l_min, l_max, n);

    const Profile profile = build_profile(series);
    DeltaMatrix matrix;
    matrix.n = n;
    matrix.l_min = l_min;
    matrix.l_max = l_max;
    matrix.values.assign(matrix.rows() * n, 0.0);
    matrix.defined_mask.assign(matrix.rows() * n, 0);

    const int nt = resolve_threads(threads);
    (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(matrix.rows()); ++r) {
        const int length = l_min + static_cast<int>(r);
        const std::size_t base = static_cast<std::size_t>(r) * n;
        fill_row_rolling(profile, length, shift, matrix.values.data() + base,
                         matrix.defined_mask.data() + base);
    }
    return matrix;
}

namespace reference {

DeltaMatrix delta_matrix(const TimeSeries& series, int l_min, int l_max, EvenShift shift) {
    const std::size_t n = series.size();
    check_l_range(l_min, l_max, n);

    const Profile profile = build_profile(series);
    DeltaMatrix matrix;
    matrix.n = n;
    matrix.l_min = l_min;
    matrix.l_max = l_max;
    matrix.values.assign(matrix.rows() * n, 0.0);
    matrix.defined_mask.assign(matrix.rows() * n, 0);

    for (int length = l_min; length <= l_max; ++length) {
        for (std::size_t t = 1; t <= n; ++t) {
            const auto value = delta_at(profile, t, length, shift);
            if (!value) continue;
            matrix.values[matrix.cell(t, length)] = *value;
            matrix.defined_mask[matrix.cell(t, length)] = 1;
        }
    }
    return matrix;
}

}  // namespace reference

}  // namespace deltal
