#include "deltal/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace deltal {

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = 0;
    std::size_t hi = s.size();
    while (lo < hi && (s[lo] == ' ' || s[lo] == '\t')) ++lo;
    while (hi > lo && (s[hi - 1] == ' ' || s[hi - 1] == '\t' || s[hi - 1] == '\r')) --hi;
    return s.substr(lo, hi - lo);
}

std::string last_field(const std::string& line) {
    const std::size_t comma = line.rfind(',');
    return trim(comma == std::string::npos ? line : line.substr(comma + 1));
}

bool parse_number(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (begin != end && *begin == '+') ++begin;  // from_chars takes no leading '+'
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc{} && result.ptr == end && begin != end;
}

std::uint8_t gray_level(double value, double min, double inv_span) {
    return static_cast<std::uint8_t>(std::floor(255.0 * (value - min) * inv_span + 0.5));
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

TimeSeries read_series_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool saw_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string token = last_field(line);
        if (token.empty() && trim(line).empty()) continue;  // blank line

        double value = 0.0;
        if (!parse_number(token, value)) {
            if (!saw_row) {
                saw_row = true;  // single header line
                continue;
            }
            throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                     ": not a number: '" + token + "'");
        }
        saw_row = true;
        if (!std::isfinite(value)) {
            throw std::runtime_error("non-finite value at line " + std::to_string(lineno));
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw std::runtime_error("empty input: no data rows");
    }
    return TimeSeries(std::move(values));
}

ReliefImage normalize_to_gray(const DeltaMatrix& matrix) {
    double min = 0.0;
    double max = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < matrix.values.size(); ++i) {
        if (!matrix.defined_mask[i]) continue;
        const double v = matrix.values[i];
        if (!any || v < min) min = v;
        if (!any || v > max) max = v;
        any = true;
    }
    if (!any) {
        throw std::runtime_error("empty matrix: no defined cells to normalize");
    }

    ReliefImage image;
    image.width = matrix.n;
    image.height = matrix.rows();
    image.pixels.assign(image.width * image.height, 0);

    const bool constant = max == min;
    const double inv_span = constant ? 0.0 : 1.0 / (max - min);
    for (std::size_t row = 0; row < image.height; ++row) {
        const int length = matrix.l_max - static_cast<int>(row);  // top row = largest L
        for (std::size_t t = 1; t <= matrix.n; ++t) {
            if (!matrix.is_defined(t, length)) continue;
            image.pixels[row * image.width + (t - 1)] =
                constant ? 128 : gray_level(matrix.at(t, length), min, inv_span);
        }
    }
    return image;
}

ReliefImage normalize_to_gray(const Scalegram& scalegram) {
    if (scalegram.values.empty()) {
        throw std::runtime_error("empty matrix: no defined cells to normalize");
    }
    double min = std::fabs(scalegram.values[0]);
    double max = min;
    for (double v : scalegram.values) {
        const double m = std::fabs(v);
        if (m < min) min = m;
        if (m > max) max = m;
    }

    ReliefImage image;
    image.width = scalegram.n;
    image.height = scalegram.scales.size();
    image.pixels.assign(image.width * image.height, 128);

    if (max == min) return image;
    const double inv_span = 1.0 / (max - min);
    for (std::size_t row = 0; row < image.height; ++row) {
        const std::size_t scale_index = image.height - 1 - row;  // top row = largest scale
        for (std::size_t b = 1; b <= scalegram.n; ++b) {
            image.pixels[row * image.width + (b - 1)] =
                gray_level(std::fabs(scalegram.at(scale_index, b)), min, inv_span);
        }
    }
    return image;
}

void write_pgm(const ReliefImage& image, std::ostream& out) {
    out << "P5\n" << image.width << ' ' << image.height << " 255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw std::runtime_error("failed to write PGM stream");
}

void write_matrix_csv(const DeltaMatrix& matrix, std::ostream& out) {
    out << 't';
    for (int length = matrix.l_min; length <= matrix.l_max; ++length) out << ',' << length;
    out << '\n';
    for (std::size_t t = 1; t <= matrix.n; ++t) {
        out << t;
        for (int length = matrix.l_min; length <= matrix.l_max; ++length) {
            out << ',';
            if (matrix.is_defined(t, length)) out << format_double(matrix.at(t, length));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed to write matrix CSV stream");
}

void write_matrix_csv(const Scalegram& scalegram, std::ostream& out) {
    out << 't';
    for (double a : scalegram.scales) out << ',' << format_double(a);
    out << '\n';
    for (std::size_t b = 1; b <= scalegram.n; ++b) {
        out << b;
        for (std::size_t s = 0; s < scalegram.scales.size(); ++s) {
            out << ',' << format_double(scalegram.at(s, b));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed to write matrix CSV stream");
}

void write_spectrum_csv(const FluctuationSpectrum& spectrum, std::ostream& out) {
    out << "L,F\n";
    for (const SpectrumPoint& p : spectrum.points) {
        out << p.window_length << ',' << format_double(p.fluctuation) << '\n';
    }
    if (spectrum.alpha) {
        out << "# alpha=" << format_double(spectrum.alpha->alpha)
            << " r2=" << format_double(spectrum.alpha->r_squared) << " fit=["
            << spectrum.alpha->fit_lo << ',' << spectrum.alpha->fit_hi << "]\n";
    }
    if (!out) throw std::runtime_error("failed to write spectrum CSV stream");
}

void write_skeleton_csv(const std::vector<SkeletonLine>& lines, const Scalegram& scalegram,
                        std::ostream& out) {
    out << "line,scale_index,scale,b,magnitude\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (const SkeletonLine::Point& p : lines[i].points) {
            out << i + 1 << ',' << p.scale_index << ',' << format_double(scalegram.scales[p.scale_index])
                << ',' << p.b << ',' << format_double(p.magnitude) << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed to write skeleton CSV stream");
}

MatrixCsv read_matrix_csv(std::istream& in) {
    MatrixCsv parsed;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty input: no header row");
    }
    std::size_t pos = line.find(',');
    if (pos == std::string::npos) {
        throw std::runtime_error("matrix CSV header has no value columns");
    }
    while (pos != std::string::npos) {
        const std::size_t next = line.find(',', pos + 1);
        const std::string token =
            trim(line.substr(pos + 1, next == std::string::npos ? std::string::npos
                                                                : next - pos - 1));
        double v = 0.0;
        if (!parse_number(token, v)) {
            throw std::runtime_error("bad column header: '" + token + "'");
        }
        parsed.column_values.push_back(v);
        pos = next;
    }

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::optional<double>> row;
        std::size_t start = line.find(',');
        if (start == std::string::npos) {
            throw std::runtime_error("matrix CSV row without cells at line " +
                                     std::to_string(lineno));
        }
        double row_id = 0.0;
        if (!parse_number(trim(line.substr(0, start)), row_id)) {
            throw std::runtime_error("bad row id at line " + std::to_string(lineno));
        }
        parsed.row_ids.push_back(static_cast<std::size_t>(row_id));
        while (start != std::string::npos) {
            const std::size_t next = line.find(',', start + 1);
            const std::string token =
                trim(line.substr(start + 1, next == std::string::npos ? std::string::npos
                                                                      : next - start - 1));
            if (token.empty()) {
                row.push_back(std::nullopt);
            } else {
                double v = 0.0;
                if (!parse_number(token, v)) {
                    throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                             ": not a number: '" + token + "'");
                }
                row.push_back(v);
            }
            start = next;
        }
        if (row.size() != parsed.column_values.size()) {
            throw std::runtime_error("ragged matrix CSV at line " + std::to_string(lineno));
        }
        parsed.cells.push_back(std::move(row));
    }
    return parsed;
}

}  // namespace deltal
