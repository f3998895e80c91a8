// deltal: relief diagrams of local linear-approximation deviations, DFA
// scaling exponents, and CWT scalegram baselines for time series.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltal/cwt.hpp"
#include "deltal/delta.hpp"
#include "deltal/dfa.hpp"
#include "deltal/io.hpp"
#include "deltal/signals.hpp"

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Staged file output: everything is rendered to bytes first, written to
// temporary siblings, and renamed only once every artifact succeeded, so a
// failing run leaves no partial files at the declared paths.
struct Staged {
    fs::path path;
    std::string bytes;
};

void commit(const std::vector<Staged>& outputs) {
    std::vector<fs::path> temps;
    temps.reserve(outputs.size());
    try {
        for (const Staged& out : outputs) {
            fs::path temp = out.path;
            temp += ".tmp";
            std::ofstream f(temp, std::ios::binary | std::ios::trunc);
            f.write(out.bytes.data(), static_cast<std::streamsize>(out.bytes.size()));
            f.close();
            if (!f) throw std::runtime_error("cannot write " + temp.string());
            temps.push_back(std::move(temp));
        }
        for (std::size_t i = 0; i < outputs.size(); ++i) {
            fs::rename(temps[i], outputs[i].path);
        }
    } catch (...) {
        for (const fs::path& temp : temps) {
            std::error_code ec;
            fs::remove(temp, ec);
        }
        throw;
    }
}

deltal::TimeSeries load_series(const std::string& input) {
    if (input == "-") {
        return deltal::read_series_csv(std::cin);
    }
    std::ifstream f(input);
    if (!f) throw std::runtime_error("cannot open input file: " + input);
    return deltal::read_series_csv(f);
}

std::string render_pgm(const deltal::ReliefImage& image) {
    std::ostringstream out;
    deltal::write_pgm(image, out);
    return out.str();
}

// "lo:hi:geometric|linear[:count]"
struct RangeSpec {
    double lo = 0.0;
    double hi = 0.0;
    bool geometric = true;
    int count = 0;  // 0: derived from the range
};

RangeSpec parse_range_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string::npos ? std::string::npos
                                                                      : colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 4) {
        throw UsageError("bad range '" + text + "': expected lo:hi:geometric|linear[:count]");
    }
    RangeSpec spec;
    try {
        spec.lo = std::stod(parts[0]);
        spec.hi = std::stod(parts[1]);
        if (parts.size() == 4) spec.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "': numeric bounds expected");
    }
    if (parts[2] == "geometric") {
        spec.geometric = true;
    } else if (parts[2] == "linear") {
        spec.geometric = false;
    } else {
        throw UsageError("bad range '" + text + "': kind must be geometric or linear");
    }
    if (!(spec.lo > 0.0) || !(spec.hi > spec.lo)) {
        throw UsageError("bad range '" + text + "': need 0 < lo < hi");
    }
    if (parts.size() == 4 && spec.count < 2) {
        throw UsageError("bad range '" + text + "': count must be at least 2");
    }
    return spec;
}

std::vector<double> expand_scales(const RangeSpec& spec) {
    int count = spec.count;
    if (count == 0) {
        count = spec.geometric
                    ? static_cast<int>(std::lround(4.0 * std::log2(spec.hi / spec.lo))) + 1
                    : static_cast<int>(std::lround(spec.hi - spec.lo)) + 1;
        if (count < 2) count = 2;
    }
    std::vector<double> scales(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        scales[static_cast<std::size_t>(i)] =
            spec.geometric ? spec.lo * std::pow(spec.hi / spec.lo, f)
                           : spec.lo + (spec.hi - spec.lo) * f;
    }
    scales.front() = spec.lo;
    scales.back() = spec.hi;
    return scales;
}

std::vector<int> expand_window_grid(const RangeSpec& spec) {
    std::vector<int> grid;
    for (double a : expand_scales(spec)) {
        const int length = static_cast<int>(std::lround(a));
        if (grid.empty() || length > grid.back()) grid.push_back(length);
    }
    return grid;
}

// --- subcommand configs -------------------------------------------------

struct DeltalOptions {
    std::string input;
    int l_min = 2;
    int l_max = 0;  // 0: min(N, max(l_min, N/3))
    std::string image_path;
    std::string matrix_path;
    std::string even_shift = "left";
    int threads = 0;
};

struct DfaOptions {
    std::string input;
    std::string grid_spec;
    int fit_lo = 0;
    int fit_hi = 0;
    std::string spectrum_path;
    int threads = 0;
};

struct CwtOptions {
    std::string input;
    std::string wavelet = "gauss2";
    std::string scales_spec;
    std::string image_path;
    std::string matrix_path;
    std::string skeleton_path;
    std::size_t drift = 2;
    double floor = 0.05;
    int threads = 0;
};

struct GenOptions {
    std::string kind;
    std::size_t n = 366;
    std::uint64_t seed = 1;
    double period = 14.0;
    double amplitude = 1.0;
    std::size_t impulse_pos = 0;
    double impulse_height = 1.0;
    std::size_t step_pos = 0;
    double step_height = 1.0;
    double noise_sigma = 0.0;
    double sine_amplitude = 0.0;
    std::string out;
};

void run_deltal(const DeltalOptions& opt) {
    if (opt.l_min < 2) throw UsageError("--lmin must be at least 2");
    if (opt.l_max != 0 && opt.l_max < opt.l_min) {
        throw UsageError("--lmax must be >= --lmin");
    }
    if (opt.image_path.empty() && opt.matrix_path.empty()) {
        throw UsageError("nothing to do: pass --image and/or --matrix");
    }
    const deltal::EvenShift shift =
        opt.even_shift == "right" ? deltal::EvenShift::right : deltal::EvenShift::left;

    const deltal::TimeSeries series = load_series(opt.input);
    const std::size_t n = series.size();
    int l_max = opt.l_max;
    if (l_max == 0) {
        l_max = static_cast<int>(n / 3);
        if (l_max < opt.l_min) l_max = opt.l_min;
        if (static_cast<std::size_t>(l_max) > n) l_max = static_cast<int>(n);
    }
    if (static_cast<std::size_t>(l_max) > n) {
        throw UsageError("--lmax " + std::to_string(l_max) + " exceeds series length " +
                         std::to_string(n));
    }

    const deltal::DeltaMatrix matrix =
        deltal::delta_matrix(series, opt.l_min, l_max, shift, opt.threads);

    std::vector<Staged> outputs;
    if (!opt.image_path.empty()) {
        outputs.push_back({opt.image_path, render_pgm(deltal::normalize_to_gray(matrix))});
    }
    if (!opt.matrix_path.empty()) {
        std::ostringstream csv;
        deltal::write_matrix_csv(matrix, csv);
        outputs.push_back({opt.matrix_path, csv.str()});
    }
    commit(outputs);
}

void run_dfa(const DfaOptions& opt) {
    const deltal::TimeSeries series = load_series(opt.input);
    std::vector<int> grid;
    if (opt.grid_spec.empty()) {
        grid = deltal::default_window_grid(series.size());
    } else {
        grid = expand_window_grid(parse_range_spec(opt.grid_spec));
    }
    if (grid.empty()) throw std::runtime_error("empty window grid");

    deltal::FluctuationSpectrum spectrum = deltal::dfa_spectrum(series, grid, opt.threads);
    const int fit_lo = opt.fit_lo > 0 ? opt.fit_lo : grid.front();
    const int fit_hi = opt.fit_hi > 0 ? opt.fit_hi : grid.back();
    spectrum.alpha = deltal::fit_alpha(spectrum, fit_lo, fit_hi);

    std::printf("alpha=%.12g r2=%.12g fit=[%d,%d] points=%zu\n", spectrum.alpha->alpha,
                spectrum.alpha->r_squared, spectrum.alpha->fit_lo, spectrum.alpha->fit_hi,
                spectrum.alpha->n_points);

    if (!opt.spectrum_path.empty()) {
        std::ostringstream csv;
        deltal::write_spectrum_csv(spectrum, csv);
        commit({{opt.spectrum_path, csv.str()}});
    }
}

void run_cwt(const CwtOptions& opt) {
    if (opt.image_path.empty() && opt.matrix_path.empty() && opt.skeleton_path.empty()) {
        throw UsageError("nothing to do: pass --image, --matrix and/or --skeleton");
    }
    if (opt.floor < 0.0 || opt.floor > 1.0) {
        throw UsageError("--floor must be in [0, 1]");
    }
    const deltal::WaveletKind kind =
        opt.wavelet == "haar" ? deltal::WaveletKind::haar : deltal::WaveletKind::gauss2;

    const deltal::TimeSeries series = load_series(opt.input);
    std::vector<double> scales;
    if (opt.scales_spec.empty()) {
        const double hi = std::max(4.0, static_cast<double>(series.size()) / 4.0);
        scales = expand_scales({2.0, hi, true, 0});
    } else {
        scales = expand_scales(parse_range_spec(opt.scales_spec));
    }

    const deltal::Scalegram sg = deltal::scalegram(series, kind, scales, opt.threads);

    std::vector<Staged> outputs;
    if (!opt.image_path.empty()) {
        outputs.push_back({opt.image_path, render_pgm(deltal::normalize_to_gray(sg))});
    }
    if (!opt.matrix_path.empty()) {
        std::ostringstream csv;
        deltal::write_matrix_csv(sg, csv);
        outputs.push_back({opt.matrix_path, csv.str()});
    }
    if (!opt.skeleton_path.empty()) {
        const auto lines = deltal::skeleton(sg, opt.drift, opt.floor);
        std::ostringstream csv;
        deltal::write_skeleton_csv(lines, sg, csv);
        outputs.push_back({opt.skeleton_path, csv.str()});
    }
    commit(outputs);
}

void run_gen(const GenOptions& opt) {
    deltal::GeneratorSpec spec;
    if (opt.kind == "sinusoid") {
        spec.kind = deltal::GeneratorKind::sinusoid;
    } else if (opt.kind == "white_noise") {
        spec.kind = deltal::GeneratorKind::white_noise;
    } else if (opt.kind == "random_walk") {
        spec.kind = deltal::GeneratorKind::random_walk;
    } else if (opt.kind == "impulse") {
        spec.kind = deltal::GeneratorKind::impulse;
    } else if (opt.kind == "step") {
        spec.kind = deltal::GeneratorKind::step;
    } else if (opt.kind == "composite") {
        spec.kind = deltal::GeneratorKind::composite;
    } else {
        throw UsageError("unknown generator kind: " + opt.kind);
    }
    spec.n = opt.n;
    spec.seed = opt.seed;
    spec.period = opt.period;
    spec.amplitude = opt.amplitude;
    spec.impulse_pos = opt.impulse_pos;
    spec.impulse_height = opt.impulse_height;
    spec.step_pos = opt.step_pos;
    spec.step_height = opt.step_height;
    spec.noise_sigma = opt.noise_sigma;
    spec.sine_amplitude = opt.sine_amplitude;

    const deltal::TimeSeries series = deltal::generate(spec);
    std::string csv;
    for (double v : series.values()) {
        csv += deltal::format_double(v);
        csv += '\n';
    }
    if (opt.out == "-") {
        std::cout << csv;
    } else {
        commit({{opt.out, csv}});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relief diagrams of deviations from local linear approximations (deltal),\n"
                 "DFA scaling exponents, and CWT scalegrams for time series."};
    app.require_subcommand(1);

    DeltalOptions deltal_opt;
    CLI::App* cmd_deltal = app.add_subcommand(
        "deltal", "Deviation relief matrix over centered windows, as PGM image and/or CSV");
    cmd_deltal->add_option("--input", deltal_opt.input, "series CSV path, or - for stdin")
        ->required();
    cmd_deltal->add_option("--lmin", deltal_opt.l_min, "smallest window length (default 2)");
    cmd_deltal->add_option("--lmax", deltal_opt.l_max,
                           "largest window length (default: series length / 3)");
    cmd_deltal->add_option("--image", deltal_opt.image_path, "output PGM path");
    cmd_deltal->add_option("--matrix", deltal_opt.matrix_path, "output matrix CSV path");
    cmd_deltal
        ->add_option("--even-shift", deltal_opt.even_shift,
                     "side an even window extends further: left|right (default left)")
        ->check(CLI::IsMember({"left", "right"}));
    cmd_deltal->add_option("--threads", deltal_opt.threads,
                           "worker threads, 0 = all (output independent of this)");

    DfaOptions dfa_opt;
    CLI::App* cmd_dfa =
        app.add_subcommand("dfa", "Fluctuation function F(L) and scaling exponent alpha");
    cmd_dfa->add_option("--input", dfa_opt.input, "series CSV path, or - for stdin")->required();
    cmd_dfa->add_option("--lgrid", dfa_opt.grid_spec,
                        "window grid lo:hi:geometric|linear[:count] "
                        "(default 4:N/4:geometric, quarter-octave)");
    cmd_dfa->add_option("--fit-lo", dfa_opt.fit_lo, "smallest L of the alpha fit (default: grid start)");
    cmd_dfa->add_option("--fit-hi", dfa_opt.fit_hi, "largest L of the alpha fit (default: grid end)");
    cmd_dfa->add_option("--spectrum", dfa_opt.spectrum_path, "output spectrum CSV path");
    cmd_dfa->add_option("--threads", dfa_opt.threads, "worker threads, 0 = all");

    CwtOptions cwt_opt;
    CLI::App* cmd_cwt =
        app.add_subcommand("cwt", "Continuous wavelet scalegram and skeleton lines");
    cmd_cwt->add_option("--input", cwt_opt.input, "series CSV path, or - for stdin")->required();
    cmd_cwt->add_option("--wavelet", cwt_opt.wavelet, "haar|gauss2 (default gauss2)")
        ->check(CLI::IsMember({"haar", "gauss2"}));
    cmd_cwt->add_option("--scales", cwt_opt.scales_spec,
                        "scale list lo:hi:geometric|linear[:count] "
                        "(default 2:N/4:geometric, quarter-octave)");
    cmd_cwt->add_option("--image", cwt_opt.image_path, "output PGM path");
    cmd_cwt->add_option("--matrix", cwt_opt.matrix_path, "output matrix CSV path");
    cmd_cwt->add_option("--skeleton", cwt_opt.skeleton_path, "output skeleton polyline CSV path");
    cmd_cwt->add_option("--drift", cwt_opt.drift,
                        "max shift drift per scale step when chaining maxima (default 2)");
    cmd_cwt->add_option("--floor", cwt_opt.floor,
                        "discard lines peaking below this fraction of max |W| (default 0.05)");
    cmd_cwt->add_option("--threads", cwt_opt.threads, "worker threads, 0 = all");

    GenOptions gen_opt;
    CLI::App* cmd_gen = app.add_subcommand("gen", "Generate a synthetic test series");
    cmd_gen->add_option("--kind", gen_opt.kind,
                        "sinusoid|white_noise|random_walk|impulse|step|composite")
        ->required();
    cmd_gen->add_option("--n", gen_opt.n, "series length (default 366)");
    cmd_gen->add_option("--seed", gen_opt.seed, "random seed for stochastic kinds (default 1)");
    cmd_gen->add_option("--period", gen_opt.period, "sinusoid period in samples (default 14)");
    cmd_gen->add_option("--amplitude", gen_opt.amplitude,
                        "sinusoid amplitude / noise standard deviation (default 1)");
    cmd_gen->add_option("--impulse-pos", gen_opt.impulse_pos,
                        "impulse position, 1-based (default: mid-series)");
    cmd_gen->add_option("--impulse-height", gen_opt.impulse_height, "impulse height (default 1)");
    cmd_gen->add_option("--step-pos", gen_opt.step_pos, "step position, 1-based (default: mid-series)");
    cmd_gen->add_option("--step-height", gen_opt.step_height, "step height (default 1)");
    cmd_gen->add_option("--noise-sigma", gen_opt.noise_sigma,
                        "composite: noise standard deviation (default 0)");
    cmd_gen->add_option("--sine-amplitude", gen_opt.sine_amplitude,
                        "composite: sine amplitude (default 0 = off)");
    cmd_gen->add_option("--out", gen_opt.out, "output CSV path, or - for stdout")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_deltal->parsed()) run_deltal(deltal_opt);
        if (cmd_dfa->parsed()) run_dfa(dfa_opt);
        if (cmd_cwt->parsed()) run_cwt(cwt_opt);
        if (cmd_gen->parsed()) run_gen(gen_opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
