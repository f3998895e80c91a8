#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deltal/cwt.hpp"
#include "deltal/delta.hpp"
#include "deltal/dfa.hpp"
#include "deltal/series.hpp"

namespace deltal {

/**
 * 8-bit grayscale relief image. Pixels are stored top row first, with the
 * LARGEST window length / scale at the top, so the ordinate increases upward
 * in the rendered figure. Lighter tones encode larger values; masked cells
 * render black.
 */
struct ReliefImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // width * height, top row first
};

/// Matrix CSV parsed back into cells; nullopt marks an empty (masked) field.
struct MatrixCsv {
    std::vector<double> column_values;                       // header values after "t"
    std::vector<std::size_t> row_ids;                        // first column
    std::vector<std::vector<std::optional<double>>> cells;   // per row
};

/**
 * Read a series from CSV text: one record per line, value in the last
 * column; a single non-numeric first row is treated as a header. Rejects
 * NaN/Inf tokens and reports parse failures with their line number.
 */
TimeSeries read_series_csv(std::istream& in);

/**
 * Min-max normalize the defined cells to gray levels 0..255 (round half
 * up). A constant defined matrix maps to 128 everywhere; undefined cells
 * become 0 (black).
 */
ReliefImage normalize_to_gray(const DeltaMatrix& matrix);

/// Scalegram variant; normalizes |W| over all cells (every cell is computed).
ReliefImage normalize_to_gray(const Scalegram& scalegram);

/// Binary PGM: "P5\n<width> <height> 255\n" then raw rows, top first.
void write_pgm(const ReliefImage& image, std::ostream& out);

/**
 * CSV export, one row per time index: header "t,<L values>", undefined
 * cells as empty fields, values at full precision so a round-trip is exact.
 */
void write_matrix_csv(const DeltaMatrix& matrix, std::ostream& out);

/// Scalegram CSV: header "t,<scale values>", signed W values, one row per shift.
void write_matrix_csv(const Scalegram& scalegram, std::ostream& out);

/// Spectrum CSV: "L,F" rows, then a "# alpha=..." summary line when fitted.
void write_spectrum_csv(const FluctuationSpectrum& spectrum, std::ostream& out);

/// Skeleton CSV: one row per ridge point, "line,scale_index,scale,b,magnitude".
void write_skeleton_csv(const std::vector<SkeletonLine>& lines, const Scalegram& scalegram,
                        std::ostream& out);

/// Parse a matrix CSV written by write_matrix_csv.
MatrixCsv read_matrix_csv(std::istream& in);

/// Shortest-exact decimal form (17 significant digits, %g style).
std::string format_double(double value);

}  // namespace deltal
