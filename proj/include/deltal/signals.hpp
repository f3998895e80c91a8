#pragma once

#include <cstdint>
#include <vector>

#include "deltal/series.hpp"

namespace deltal {

enum class GeneratorKind { sinusoid, white_noise, random_walk, impulse, step, composite };

/**
 * Deterministic synthetic-series recipe: identical specs produce identical
 * output bit for bit, across runs and platforms. Stochastic kinds draw from
 * SplitMix64 (the 64-bit mixer of Steele et al.) with Box-Muller conversion
 * to normals, so the raw u64 stream is reproducible exactly.
 *
 * Positions are 1-based; 0 means "use the default" (mid-series).
 */
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::sinusoid;
    std::size_t n = 366;
    std::uint64_t seed = 1;

    double period = 14.0;     // sinusoid / composite sine component
    double amplitude = 1.0;   // sinusoid amplitude; noise/walk standard deviation
    std::size_t impulse_pos = 0;
    double impulse_height = 1.0;
    std::size_t step_pos = 0;
    double step_height = 1.0;
    double noise_sigma = 0.0;      // composite only
    double sine_amplitude = 0.0;   // composite only; 0 disables the sine part
};

/**
 * Generate the series described by spec.
 *
 * Defaults give the paper-style test signals: the default sinusoid is
 * exactly sin(2 pi i / 14) = sin(i pi / 7) for i = 1..366; white_noise is
 * i.i.d. standard normal scaled by amplitude; random_walk is its running
 * sum; impulse and step place a single feature at the given position; and
 * composite sums noise, sine, impulse and step components.
 *
 * Throws std::invalid_argument on bad parameters (period <= 0, position
 * out of range).
 */
TimeSeries generate(const GeneratorSpec& spec);

/// SplitMix64 stream; exposed so tests can pin the raw u64 sequence.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace deltal
