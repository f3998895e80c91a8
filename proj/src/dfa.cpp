#include "deltal/dfa.hpp"

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

}  // namespace

double window_rms(const Profile& profile, std::size_t j, int window_length) {
    const std::size_t n = profile.size();
    if (window_length < 2) {
        throw std::out_of_range("window length must be at least 2, got " +
                                std::to_string(window_length));
    }
    const std::size_t len = static_cast<std::size_t>(window_length);
    const std::size_t windows = n / len;
    if (j < 1 || j > windows) {
        throw std::out_of_range("window index " + std::to_string(j) + " out of range [1, " +
                                std::to_string(windows) + "] for L=" +
                                std::to_string(window_length));
    }

    const IndexRange range{(j - 1) * len + 1, j * len};
    const LinearFit fit = least_squares_fit(profile, range);

    double ssq = 0.0;
    for (std::size_t t = range.lo; t <= range.hi; ++t) {
        const double r = profile.at(t) - fit.value_at(t);
        ssq += r * r;
    }
    return std::sqrt(ssq / static_cast<double>(len));
}

double fluctuation(const Profile& profile, int window_length) {
    const std::size_t n = profile.size();
    if (window_length < 2 || static_cast<std::size_t>(window_length) * 2 > n) {
        throw std::out_of_range("window length " + std::to_string(window_length) +
                                " out of range [2, N/2] for N=" + std::to_string(n));
    }
    const std::size_t windows = n / static_cast<std::size_t>(window_length);
    double sum = 0.0;
    for (std::size_t j = 1; j <= windows; ++j) {
        sum += window_rms(profile, j, window_length);
    }
    return sum / static_cast<double>(windows);
}

FluctuationSpectrum dfa_spectrum(const TimeSeries& series,
                                 const std::vector<int>& window_lengths,
                                 int threads) {
    const std::size_t n = series.size();
    if (n < 8) {
        throw std::invalid_argument("series too short for a spectrum: N=" + std::to_string(n));
    }
    if (window_lengths.empty()) {
        throw std::invalid_argument("no window lengths requested");
    }
    int prev = 0;
    for (int length : window_lengths) {
        if (length < 3 || static_cast<std::size_t>(length) * 2 > n) {
            throw std::invalid_argument("window length " + std::to_string(length) +
                                        " out of range [3, N/2] for N=" + std::to_string(n));
        }
        if (length <= prev) {
            throw std::invalid_argument("window lengths must be strictly increasing near " +
                                        std::to_string(length));
        }
        prev = length;
    }

    const Profile profile = build_profile(series);
    FluctuationSpectrum spectrum;
    spectrum.points.resize(window_lengths.size());

    const int nt = resolve_threads(threads);
    (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(window_lengths.size()); ++i) {
        const int length = window_lengths[static_cast<std::size_t>(i)];
        spectrum.points[static_cast<std::size_t>(i)] = {length, fluctuation(profile, length)};
    }
    return spectrum;
}

AlphaFit fit_alpha(const FluctuationSpectrum& spectrum, int fit_lo, int fit_hi) {
    std::vector<double> log_l;
    std::vector<double> log_f;
    int used_lo = 0;
    int used_hi = 0;
    for (const SpectrumPoint& p : spectrum.points) {
        if (p.window_length < fit_lo || p.window_length > fit_hi) continue;
        if (!(p.fluctuation > 0.0)) {
            throw std::runtime_error("zero fluctuation at L=" + std::to_string(p.window_length) +
                                     ": scaling exponent undefined");
        }
        if (log_l.empty()) used_lo = p.window_length;
        used_hi = p.window_length;
        log_l.push_back(std::log(static_cast<double>(p.window_length)));
        log_f.push_back(std::log(p.fluctuation));
    }
    if (log_l.size() < 3) {
        throw std::invalid_argument("insufficient points for exponent fit: need 3, have " +
                                    std::to_string(log_l.size()));
    }

    const double n = static_cast<double>(log_l.size());
    double lm = 0.0;
    double fm = 0.0;
    for (std::size_t i = 0; i < log_l.size(); ++i) {
        lm += log_l[i];
        fm += log_f[i];
    }
    lm /= n;
    fm /= n;

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < log_l.size(); ++i) {
        const double dl = log_l[i] - lm;
        const double df = log_f[i] - fm;
        sxx += dl * dl;
        sxy += dl * df;
        syy += df * df;
    }

    AlphaFit fit;
    fit.alpha = sxy / sxx;
    fit.fit_lo = used_lo;
    fit.fit_hi = used_hi;
    fit.n_points = log_l.size();
    if (syy <= 0.0) {
        fit.r_squared = 1.0;  // all log F equal: the flat line fits exactly
    } else {
        double ss_res = 0.0;
        const double intercept = fm - fit.alpha * lm;
        for (std::size_t i = 0; i < log_l.size(); ++i) {
            const double r = log_f[i] - (fit.alpha * log_l[i] + intercept);
            ss_res += r * r;
        }
        double r2 = 1.0 - ss_res / syy;
        if (r2 < 0.0) r2 = 0.0;
        if (r2 > 1.0) r2 = 1.0;
        fit.r_squared = r2;
    }
    return fit;
}

std::vector<int> default_window_grid(std::size_t n) {
    const double ratio = std::pow(2.0, 0.25);
    const int max_l = static_cast<int>(n / 4 < 4 ? 4 : n / 4);
    std::vector<int> grid;
    for (double v = 4.0; ; v *= ratio) {
        const int length = static_cast<int>(std::lround(v));
        if (length > max_l) break;
        if (grid.empty() || length > grid.back()) grid.push_back(length);
    }
    return grid;
}

}  // namespace deltal
