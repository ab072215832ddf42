#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vsa/theory.hpp"

namespace vsa {

// Every number written to disk goes through this: printf %.17g, which
// round-trips IEEE doubles exactly through strtod. Non-finite values print
// as nan/inf/-inf; the CSV parser accepts those back.
std::string format_double(double v);

// One typed cell of a result table. Int and Real cells compare by numeric
// value (a column that holds 1 and 1.0 across runs is still equal); NaN
// compares equal to NaN so flagged overflow cells round-trip.
using Cell = std::variant<std::string, long long, double>;

bool cell_equal(const Cell& a, const Cell& b);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

bool table_equal(const Table& a, const Table& b);

// Header line then one line per row, comma-separated, LF endings, trailing
// newline. Field values never contain commas or quotes, so no quoting layer.
std::string to_csv(const Table& t);

// Inverse of to_csv. Cells parse as Int when the whole field is a decimal
// integer, as Real when strtod consumes the whole field, else as Str.
// Throws std::runtime_error on ragged rows or a missing header.
Table parse_csv(const std::string& text);

// JSON array of row objects keyed by column name. Non-finite reals become
// null (JSON has no NaN); CSV is the round-trip format, JSON the export one.
std::string to_json_rows(const Table& t);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

// Heatmap rendering: one rect per cell, diverging blue-white-red over the
// stated [vmin, vmax] (fixed per figure family, not data-derived, so two
// runs are visually comparable). Flagged cells render gray.
struct HeatmapStyle {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    double vmin = 0.0;
    double vmax = 1.0;
};

std::string render_svg_heatmap(const GridResult& grid, const HeatmapStyle& style);

// Curve rendering: theoretical line plus empirical mean with a +-1 std band.
struct CurveSeries {
    std::vector<double> x;
    std::vector<double> mean;
    std::vector<double> std_dev;
    std::vector<double> theory;  // same length as x, may be empty
    std::string title;
    std::string xlabel;
    std::string ylabel;
};

std::string render_svg_curve(const CurveSeries& series);

// Everything needed to reproduce a run. Timestamps are recorded for humans
// and excluded from replay comparison; byte-identical outputs come from the
// command, config and seed alone.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  // resolved, ordered
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

std::string utc_timestamp_now();

}  // namespace vsa
