#include "deltal/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace deltal {

namespace {

// Box-Muller on SplitMix64 output: u1 is nudged into (0, 1] so the log is
// always finite. Pairs are consumed in a fixed order; an odd count discards
// the trailing sine variate.
std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(n + 1);
    while (out.size() < n) {
        const double u1 = static_cast<double>((rng.next() >> 11) + 1) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out.push_back(radius * std::cos(angle));
        out.push_back(radius * std::sin(angle));
    }
    out.resize(n);
    return out;
}

void check_period(double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::invalid_argument("period must be positive and finite, got " +
                                    std::to_string(period));
    }
}

std::size_t resolve_position(std::size_t pos, std::size_t n, const char* what) {
    if (pos == 0) return (n + 1) / 2;
    if (pos > n) {
        throw std::invalid_argument(std::string(what) + " position " + std::to_string(pos) +
                                    " out of range [1, " + std::to_string(n) + "]");
    }
    return pos;
}

}  // namespace

TimeSeries generate(const GeneratorSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("generator length must be at least 1");
    }
    const std::size_t n = spec.n;
    std::vector<double> x(n, 0.0);

    switch (spec.kind) {
        case GeneratorKind::sinusoid: {
            check_period(spec.period);
            const double w = 2.0 * std::numbers::pi / spec.period;
            for (std::size_t i = 1; i <= n; ++i) {
                x[i - 1] = spec.amplitude * std::sin(w * static_cast<double>(i));
            }
            break;
        }
        case GeneratorKind::white_noise: {
            const std::vector<double> z = gaussian_noise(n, spec.seed);
            for (std::size_t i = 0; i < n; ++i) x[i] = spec.amplitude * z[i];
            break;
        }
        case GeneratorKind::random_walk: {
            const std::vector<double> z = gaussian_noise(n, spec.seed);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += spec.amplitude * z[i];
                x[i] = acc;
            }
            break;
        }
        case GeneratorKind::impulse: {
            const std::size_t pos = resolve_position(spec.impulse_pos, n, "impulse");
            x[pos - 1] = spec.impulse_height;
            break;
        }
        case GeneratorKind::step: {
            const std::size_t pos = resolve_position(spec.step_pos, n, "step");
            for (std::size_t i = pos; i <= n; ++i) x[i - 1] = spec.step_height;
            break;
        }
        case GeneratorKind::composite: {
            if (spec.noise_sigma != 0.0) {
                const std::vector<double> z = gaussian_noise(n, spec.seed);
                for (std::size_t i = 0; i < n; ++i) x[i] = spec.noise_sigma * z[i];
            }
            if (spec.sine_amplitude != 0.0) {
                check_period(spec.period);
                const double w = 2.0 * std::numbers::pi / spec.period;
                for (std::size_t i = 1; i <= n; ++i) {
                    x[i - 1] += spec.sine_amplitude * std::sin(w * static_cast<double>(i));
                }
            }
            if (spec.impulse_pos != 0) {
                const std::size_t pos = resolve_position(spec.impulse_pos, n, "impulse");
                x[pos - 1] += spec.impulse_height;
            }
            if (spec.step_pos != 0) {
                const std::size_t pos = resolve_position(spec.step_pos, n, "step");
                for (std::size_t i = pos; i <= n; ++i) x[i - 1] += spec.step_height;
            }
            break;
        }
    }
    return TimeSeries(std::move(x));
}

}  // namespace deltal
