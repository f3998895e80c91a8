// Timing harness: per-cell reference kernels vs the rolling / OpenMP ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "deltal/cwt.hpp"
#include "deltal/delta.hpp"
#include "deltal/dfa.hpp"
#include "deltal/signals.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

double max_defined_gap(const deltal::DeltaMatrix& a, const deltal::DeltaMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (!a.defined_mask[i]) continue;
        const double gap = std::fabs(a.values[i] - b.values[i]);
        if (gap > worst) worst = gap;
    }
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 8192;
    int l_max = 128;
    if (argc > 1) n = static_cast<std::size_t>(std::stoull(argv[1]));
    if (argc > 2) l_max = std::stoi(argv[2]);

    deltal::GeneratorSpec spec;
    spec.kind = deltal::GeneratorKind::random_walk;
    spec.n = n;
    spec.seed = 42;
    const deltal::TimeSeries series = deltal::generate(spec);

    std::printf("deltal benchmark: N=%zu, L=2..%d\n", n, l_max);

    auto t0 = clock_type::now();
    const deltal::DeltaMatrix naive = deltal::reference::delta_matrix(series, 2, l_max);
    const double t_naive = seconds_since(t0);

    t0 = clock_type::now();
    const deltal::DeltaMatrix rolling1 = deltal::delta_matrix(series, 2, l_max,
                                                              deltal::EvenShift::left, 1);
    const double t_roll1 = seconds_since(t0);

    t0 = clock_type::now();
    const deltal::DeltaMatrix rolling = deltal::delta_matrix(series, 2, l_max);
    const double t_roll = seconds_since(t0);

    std::printf("  delta matrix, per-cell reference : %8.3f s\n", t_naive);
    std::printf("  delta matrix, rolling, 1 thread  : %8.3f s  (%.1fx)\n", t_roll1,
                t_naive / t_roll1);
    std::printf("  delta matrix, rolling, all cores : %8.3f s  (%.1fx)\n", t_roll,
                t_naive / t_roll);
    std::printf("  max |reference - rolling| gap    : %.3g\n", max_defined_gap(naive, rolling));

    const std::size_t cwt_n = n < 2048 ? n : 2048;
    const deltal::GeneratorSpec cwt_spec{deltal::GeneratorKind::random_walk, cwt_n, 42};
    const deltal::TimeSeries cwt_series = deltal::generate(cwt_spec);
    std::vector<double> scales;
    for (double a = 2.0; a <= 64.0; a *= std::pow(2.0, 0.25)) scales.push_back(a);

    t0 = clock_type::now();
    const deltal::Scalegram serial =
        deltal::reference::scalegram(cwt_series, deltal::WaveletKind::gauss2, scales);
    const double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    const deltal::Scalegram parallel =
        deltal::scalegram(cwt_series, deltal::WaveletKind::gauss2, scales);
    const double t_parallel = seconds_since(t0);

    double worst = 0.0;
    for (std::size_t i = 0; i < serial.values.size(); ++i) {
        worst = std::max(worst, std::fabs(serial.values[i] - parallel.values[i]));
    }
    std::printf("scalegram benchmark: N=%zu, %zu scales\n", cwt_n, scales.size());
    std::printf("  per-cell reference, serial      : %8.3f s\n", t_serial);
    std::printf("  row kernel, all cores           : %8.3f s  (%.1fx)\n", t_parallel,
                t_serial / t_parallel);
    std::printf("  max gap                         : %.3g\n", worst);

    t0 = clock_type::now();
    const deltal::FluctuationSpectrum spectrum =
        deltal::dfa_spectrum(series, deltal::default_window_grid(n));
    std::printf("dfa spectrum: %zu window lengths in %.3f s\n", spectrum.points.size(),
                seconds_since(t0));
    return 0;
}
