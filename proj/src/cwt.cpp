#include "deltal/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace deltal {

namespace {

// Beyond 7 scale units the gauss2 tail mass is below 4e-10, negligible
// against the 1e-6 annihilation tolerances; used only for the interior flag.
constexpr double kGauss2SupportRadius = 7.0;

int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

void check_scale(WaveletKind kind, double scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("scale must be positive, got " + std::to_string(scale));
    }
    if (kind == WaveletKind::haar && scale < 2.0) {
        throw std::invalid_argument("haar scales below 2 degenerate when sampled, got " +
                                    std::to_string(scale));
    }
}

double center_offset(WaveletKind kind) {
    return kind == WaveletKind::haar ? 0.5 : 0.0;
}

double coefficient(const std::vector<double>& x, WaveletKind kind, double scale, std::size_t b) {
    const double offset = center_offset(kind);
    const double inv_scale = 1.0 / scale;
    double sum = 0.0;
    for (std::size_t t = 1; t <= x.size(); ++t) {
        const double u = (static_cast<double>(t) - static_cast<double>(b)) * inv_scale + offset;
        sum += x[t - 1] * mother_wavelet(kind, u);
    }
    return sum / std::sqrt(scale);
}

bool support_inside(WaveletKind kind, double scale, std::size_t b, std::size_t n) {
    const double shift = static_cast<double>(b);
    if (kind == WaveletKind::haar) {
        // support [b - a/2, b + a/2)
        return shift - scale / 2.0 >= 1.0 && shift + scale / 2.0 <= static_cast<double>(n) + 1.0;
    }
    return shift - kGauss2SupportRadius * scale >= 1.0 &&
           shift + kGauss2SupportRadius * scale <= static_cast<double>(n);
}

void check_scale_list(WaveletKind kind, const std::vector<double>& scales) {
    if (scales.empty()) {
        throw std::invalid_argument("scale list must not be empty");
    }
    double prev = 0.0;
    for (double a : scales) {
        check_scale(kind, a);
        if (a <= prev) {
            throw std::invalid_argument("scales must be strictly increasing near " +
                                        std::to_string(a));
        }
        prev = a;
    }
}

Scalegram scalegram_impl(const TimeSeries& series, WaveletKind kind,
                         const std::vector<double>& scales, int threads, bool parallel) {
    check_scale_list(kind, scales);
    const std::size_t n = series.size();

    Scalegram sg;
    sg.n = n;
    sg.kind = kind;
    sg.scales = scales;
    sg.values.assign(scales.size() * n, 0.0);
    sg.interior_mask.assign(scales.size() * n, 0);

    const int nt = parallel ? resolve_threads(threads) : 1;
    (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(scales.size()); ++s) {
        const double a = scales[static_cast<std::size_t>(s)];
        const std::size_t base = static_cast<std::size_t>(s) * n;
        for (std::size_t b = 1; b <= n; ++b) {
            sg.values[base + b - 1] = coefficient(series.values(), kind, a, b);
            sg.interior_mask[base + b - 1] = support_inside(kind, a, b, n) ? 1 : 0;
        }
    }
    return sg;
}

}  // namespace

double mother_wavelet(WaveletKind kind, double u) {
    switch (kind) {
        case WaveletKind::haar:
            if (u >= 0.0 && u < 0.5) return 1.0;
            if (u >= 0.5 && u < 1.0) return -1.0;
            return 0.0;
        case WaveletKind::gauss2:
            return (1.0 - u * u) * std::exp(-u * u / 2.0);
    }
    return 0.0;
}

double cwt_coefficient(const TimeSeries& series, WaveletKind kind, double scale, std::size_t b) {
    check_scale(kind, scale);
    if (b < 1 || b > series.size()) {
        throw std::out_of_range("shift b=" + std::to_string(b) + " out of series [1, " +
                                std::to_string(series.size()) + "]");
    }
    return coefficient(series.values(), kind, scale, b);
}

Scalegram scalegram(const TimeSeries& series, WaveletKind kind, const std::vector<double>& scales,
                    int threads) {
    return scalegram_impl(series, kind, scales, threads, true);
}

namespace reference {

Scalegram scalegram(const TimeSeries& series, WaveletKind kind,
                    const std::vector<double>& scales) {
    return scalegram_impl(series, kind, scales, 0, false);
}

}  // namespace reference

std::vector<SkeletonLine> skeleton(const Scalegram& scalegram, std::size_t max_drift,
                                   double magnitude_floor) {
    const std::size_t n_scales = scalegram.scales.size();
    const std::size_t n = scalegram.n;
    if (n_scales < 2) {
        throw std::invalid_argument("skeleton needs at least two scales");
    }

    double matrix_max = 0.0;
    for (double v : scalegram.values) matrix_max = std::max(matrix_max, std::fabs(v));

    // Strict |W| maxima along b, per scale (interior b only).
    std::vector<std::vector<std::size_t>> maxima(n_scales);
    for (std::size_t s = 0; s < n_scales; ++s) {
        for (std::size_t b = 2; b + 1 <= n; ++b) {
            const double m = std::fabs(scalegram.at(s, b));
            if (m > std::fabs(scalegram.at(s, b - 1)) && m > std::fabs(scalegram.at(s, b + 1))) {
                maxima[s].push_back(b);
            }
        }
    }

    // Chain maxima upward in scale. A line open at scale s extends to the
    // nearest unclaimed maximum at s+1 within max_drift; ties go to the
    // smaller shift, so the result is schedule-free deterministic.
    std::vector<SkeletonLine> lines;
    std::vector<std::size_t> open;  // indices into lines, still extendable
    for (std::size_t s = 0; s < n_scales; ++s) {
        std::vector<std::size_t> next_open;
        std::vector<bool> claimed(maxima[s].size(), false);

        for (std::size_t line_idx : open) {
            const std::size_t last_b = lines[line_idx].points.back().b;
            std::size_t best = maxima[s].size();
            std::size_t best_dist = max_drift + 1;
            for (std::size_t m = 0; m < maxima[s].size(); ++m) {
                if (claimed[m]) continue;
                const std::size_t b = maxima[s][m];
                const std::size_t dist = b > last_b ? b - last_b : last_b - b;
                if (dist < best_dist) {
                    best_dist = dist;
                    best = m;
                }
            }
            if (best == maxima[s].size()) continue;  // line ends
            claimed[best] = true;
            const std::size_t b = maxima[s][best];
            lines[line_idx].points.push_back({s, b, std::fabs(scalegram.at(s, b))});
            next_open.push_back(line_idx);
        }

        for (std::size_t m = 0; m < maxima[s].size(); ++m) {
            if (claimed[m]) continue;
            const std::size_t b = maxima[s][m];
            lines.push_back({{{s, b, std::fabs(scalegram.at(s, b))}}});
            next_open.push_back(lines.size() - 1);
        }
        open = std::move(next_open);
    }

    const double floor_value = magnitude_floor * matrix_max;
    std::vector<SkeletonLine> kept;
    for (SkeletonLine& line : lines) {
        double peak = 0.0;
        for (const auto& p : line.points) peak = std::max(peak, p.magnitude);
        if (peak >= floor_value && peak > 0.0) kept.push_back(std::move(line));
    }
    std::sort(kept.begin(), kept.end(), [](const SkeletonLine& a, const SkeletonLine& b) {
        if (a.points.front().scale_index != b.points.front().scale_index) {
            return a.points.front().scale_index < b.points.front().scale_index;
        }
        return a.points.front().b < b.points.front().b;
    });
    return kept;
}

}  // namespace deltal
