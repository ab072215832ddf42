#include "vsa/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vsa {

namespace {

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return std::string(buf);
}

// Short display form for axis ticks; data files use format_double instead.
std::string display_number(double v) { return fmt("%g", v); }

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    out += fmt("\\u%04x", c);
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

bool looks_like_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

Cell parse_cell(const std::string& field) {
    if (looks_like_integer(field)) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec == std::errc() && ptr == field.data() + field.size()) return Cell(v);
    }
    if (!field.empty()) {
        char* end = nullptr;
        double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() + field.size()) return Cell(v);
    }
    return Cell(field);
}

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return format_double(std::get<double>(c));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

struct Rgb {
    int r, g, b;
};

// Diverging blue-white-red, t in [0,1] after clamping.
Rgb diverging_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const Rgb low{33, 102, 172};
    const Rgb mid{247, 247, 247};
    const Rgb high{178, 24, 43};
    auto lerp = [](const Rgb& a, const Rgb& b, double u) {
        return Rgb{static_cast<int>(std::lround(a.r + (b.r - a.r) * u)),
                   static_cast<int>(std::lround(a.g + (b.g - a.g) * u)),
                   static_cast<int>(std::lround(a.b + (b.b - a.b) * u))};
    };
    if (t < 0.5) return lerp(low, mid, t * 2.0);
    return lerp(mid, high, (t - 0.5) * 2.0);
}

std::string rgb_attr(const Rgb& c) { return fmt("rgb(%d,%d,%d)", c.r, c.g, c.b); }

void svg_text(std::string& out, double x, double y, const std::string& anchor,
              const std::string& text, const std::string& extra = "") {
    out += fmt("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"%s\" "
               "font-family=\"monospace\" font-size=\"12\"%s>",
               x, y, anchor.c_str(), extra.c_str());
    out += json_escape(text);  // escapes nothing SVG-hostile; <,> never occur in our labels
    out += "</text>\n";
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

bool cell_equal(const Cell& a, const Cell& b) {
    const bool sa = std::holds_alternative<std::string>(a);
    const bool sb = std::holds_alternative<std::string>(b);
    if (sa || sb) return sa && sb && std::get<std::string>(a) == std::get<std::string>(b);
    auto num = [](const Cell& c) {
        return std::holds_alternative<long long>(c)
                   ? static_cast<double>(std::get<long long>(c))
                   : std::get<double>(c);
    };
    const double x = num(a);
    const double y = num(b);
    if (std::isnan(x) && std::isnan(y)) return true;
    return x == y;
}

bool table_equal(const Table& a, const Table& b) {
    if (a.columns != b.columns) return false;
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].size() != b.rows[i].size()) return false;
        for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
            if (!cell_equal(a.rows[i][j], b.rows[i][j])) return false;
        }
    }
    return true;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        if (j) out += ',';
        out += t.columns[j];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += cell_to_string(row[j]);
        }
        out += '\n';
    }
    return out;
}

Table parse_csv(const std::string& text) {
    Table t;
    std::size_t pos = 0;
    bool header_done = false;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::size_t end = (nl == std::string::npos) ? text.size() : nl;
        std::string line = text.substr(pos, end - pos);
        pos = (nl == std::string::npos) ? text.size() : nl + 1;
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (!header_done) {
            t.columns = fields;
            header_done = true;
            continue;
        }
        if (fields.size() != t.columns.size()) {
            throw std::runtime_error("csv row has " + std::to_string(fields.size()) +
                                     " fields, header has " + std::to_string(t.columns.size()));
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_cell(f));
        t.rows.push_back(std::move(row));
    }
    if (!header_done) throw std::runtime_error("csv text has no header line");
    return t;
}

std::string to_json_rows(const Table& t) {
    std::string out = "[";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        out += (i == 0) ? "\n" : ",\n";
        out += "  {";
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            if (j) out += ", ";
            out += '"';
            out += json_escape(t.columns[j]);
            out += "\": ";
            const Cell& c = t.rows[i][j];
            if (std::holds_alternative<std::string>(c)) {
                out += '"';
                out += json_escape(std::get<std::string>(c));
                out += '"';
            } else if (std::holds_alternative<long long>(c)) {
                out += std::to_string(std::get<long long>(c));
            } else {
                const double v = std::get<double>(c);
                out += std::isfinite(v) ? format_double(v) : std::string("null");
            }
        }
        out += "}";
    }
    out += "\n]\n";
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string render_svg_heatmap(const GridResult& grid, const HeatmapStyle& style) {
    const std::size_t nrows = grid.axis1.size();
    const std::size_t ncols = grid.axis2.size();
    if (nrows == 0 || ncols == 0) throw std::invalid_argument("heatmap grid is empty");

    const double cw = std::clamp(640.0 / static_cast<double>(ncols), 8.0, 28.0);
    const double ch = std::clamp(400.0 / static_cast<double>(nrows), 8.0, 32.0);
    const double left = 70, top = 50, right = 130, bottom = 60;
    const double plot_w = cw * static_cast<double>(ncols);
    const double plot_h = ch * static_cast<double>(nrows);
    const double width = left + plot_w + right;
    const double height = top + plot_h + bottom;

    std::string out = fmt(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
        "viewBox=\"0 0 %.0f %.0f\">\n",
        width, height, width, height);
    out += fmt("<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", width, height);
    svg_text(out, left + plot_w / 2, top - 20, "middle", style.title);

    const double span = style.vmax - style.vmin;
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) {
            const double v = grid.cells[i][j];
            const bool bad =
                !std::isfinite(v) || (!grid.flagged.empty() && grid.flagged[i][j]);
            const std::string fill =
                bad ? "rgb(153,153,153)"
                    : rgb_attr(diverging_color(span != 0.0 ? (v - style.vmin) / span : 0.5));
            out += fmt("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\"/>\n",
                       left + cw * static_cast<double>(j), top + ch * static_cast<double>(i),
                       cw, ch, fill.c_str());
        }
    }

    const std::size_t xstep = std::max<std::size_t>(1, ncols / 10);
    for (std::size_t j = 0; j < ncols; j += xstep) {
        svg_text(out, left + cw * (static_cast<double>(j) + 0.5), top + plot_h + 16, "middle",
                 display_number(grid.axis2[j]));
    }
    const std::size_t ystep = std::max<std::size_t>(1, nrows / 12);
    for (std::size_t i = 0; i < nrows; i += ystep) {
        svg_text(out, left - 8, top + ch * (static_cast<double>(i) + 0.5) + 4, "end",
                 display_number(grid.axis1[i]));
    }
    svg_text(out, left + plot_w / 2, height - 16, "middle", style.xlabel);
    svg_text(out, 18, top + plot_h / 2, "middle", style.ylabel,
             fmt(" transform=\"rotate(-90 18 %.1f)\"", top + plot_h / 2));

    // Legend: vertical gradient bar, vmax at the top.
    const double lx = left + plot_w + 36;
    const int strips = 40;
    const double sh = plot_h / strips;
    for (int s = 0; s < strips; ++s) {
        const double t = 1.0 - (static_cast<double>(s) + 0.5) / strips;
        out += fmt("<rect x=\"%.1f\" y=\"%.1f\" width=\"18\" height=\"%.2f\" fill=\"%s\"/>\n",
                   lx, top + sh * s, sh + 0.5, rgb_attr(diverging_color(t)).c_str());
    }
    svg_text(out, lx + 24, top + 10, "start", display_number(style.vmax));
    svg_text(out, lx + 24, top + plot_h / 2 + 4, "start",
             display_number((style.vmin + style.vmax) / 2));
    svg_text(out, lx + 24, top + plot_h, "start", display_number(style.vmin));

    out += "</svg>\n";
    return out;
}

std::string render_svg_curve(const CurveSeries& series) {
    const std::size_t n = series.x.size();
    if (n == 0 || series.mean.size() != n || series.std_dev.size() != n ||
        (!series.theory.empty() && series.theory.size() != n)) {
        throw std::invalid_argument("curve series lengths disagree");
    }

    const double left = 70, top = 50, right = 30, bottom = 60;
    const double plot_w = 620, plot_h = 370;
    const double width = left + plot_w + right;
    const double height = top + plot_h + bottom;

    double xmin = series.x.front(), xmax = series.x.back();
    double ymin = series.mean[0], ymax = series.mean[0];
    for (std::size_t i = 0; i < n; ++i) {
        ymin = std::min(ymin, series.mean[i] - series.std_dev[i]);
        ymax = std::max(ymax, series.mean[i] + series.std_dev[i]);
        if (!series.theory.empty()) {
            ymin = std::min(ymin, series.theory[i]);
            ymax = std::max(ymax, series.theory[i]);
        }
    }
    const double pad = (ymax - ymin == 0.0) ? 1.0 : (ymax - ymin) * 0.08;
    ymin -= pad;
    ymax += pad;
    auto sx = [&](double v) { return left + (v - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double v) { return top + (ymax - v) / (ymax - ymin) * plot_h; };

    std::string out = fmt(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
        "viewBox=\"0 0 %.0f %.0f\">\n",
        width, height, width, height);
    out += fmt("<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", width, height);
    svg_text(out, left + plot_w / 2, top - 20, "middle", series.title);

    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 5.0;
        const double yv = ymin + (ymax - ymin) * k / 5.0;
        out += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                   "stroke=\"rgb(225,225,225)\" stroke-width=\"1\"/>\n",
                   sx(xv), top, sx(xv), top + plot_h);
        out += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                   "stroke=\"rgb(225,225,225)\" stroke-width=\"1\"/>\n",
                   left, sy(yv), left + plot_w, sy(yv));
        svg_text(out, sx(xv), top + plot_h + 18, "middle", display_number(xv));
        svg_text(out, left - 8, sy(yv) + 4, "end", display_number(yv));
    }

    std::string band = "<polygon points=\"";
    for (std::size_t i = 0; i < n; ++i) {
        band += fmt("%.1f,%.1f ", sx(series.x[i]), sy(series.mean[i] + series.std_dev[i]));
    }
    for (std::size_t i = n; i-- > 0;) {
        band += fmt("%.1f,%.1f ", sx(series.x[i]), sy(series.mean[i] - series.std_dev[i]));
    }
    band += "\" fill=\"rgb(120,160,210)\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
    out += band;

    if (!series.theory.empty()) {
        std::string line = "<polyline points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            line += fmt("%.1f,%.1f ", sx(series.x[i]), sy(series.theory[i]));
        }
        line += "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
                "stroke-dasharray=\"6 4\"/>\n";
        out += line;
    }
    std::string line = "<polyline points=\"";
    for (std::size_t i = 0; i < n; ++i) {
        line += fmt("%.1f,%.1f ", sx(series.x[i]), sy(series.mean[i]));
    }
    line += "\" fill=\"none\" stroke=\"rgb(33,102,172)\" stroke-width=\"1.8\"/>\n";
    out += line;

    out += fmt("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
               "stroke=\"black\" stroke-width=\"1\"/>\n",
               left, top, plot_w, plot_h);
    svg_text(out, left + plot_w / 2, height - 16, "middle", series.xlabel);
    svg_text(out, 18, top + plot_h / 2, "middle", series.ylabel,
             fmt(" transform=\"rotate(-90 18 %.1f)\"", top + plot_h / 2));

    double ly = top + 16;
    out += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
               "stroke=\"rgb(33,102,172)\" stroke-width=\"1.8\"/>\n",
               left + plot_w - 170, ly - 4, left + plot_w - 140, ly - 4);
    svg_text(out, left + plot_w - 132, ly, "start", "empirical mean (band: std)");
    if (!series.theory.empty()) {
        ly += 18;
        out += fmt("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\" "
                   "stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n",
                   left + plot_w - 170, ly - 4, left + plot_w - 140, ly - 4);
        svg_text(out, left + plot_w - 132, ly, "start", "theory");
    }

    out += "</svg>\n";
    return out;
}

std::string manifest_to_json(const RunManifest& m) {
    std::string out = "{\n";
    out += "  \"command\": \"" + json_escape(m.command) + "\",\n";
    out += "  \"config\": {";
    for (std::size_t i = 0; i < m.config.size(); ++i) {
        out += (i == 0) ? "\n" : ",\n";
        out += "    \"" + json_escape(m.config[i].first) + "\": \"" +
               json_escape(m.config[i].second) + "\"";
    }
    out += m.config.empty() ? "},\n" : "\n  },\n";
    out += fmt("  \"seed\": %llu,\n", static_cast<unsigned long long>(m.seed));
    out += "  \"tool_version\": \"" + json_escape(m.tool_version) + "\",\n";
    out += "  \"started_utc\": \"" + json_escape(m.started_utc) + "\",\n";
    out += "  \"finished_utc\": \"" + json_escape(m.finished_utc) + "\",\n";
    out += "  \"outputs\": [";
    for (std::size_t i = 0; i < m.outputs.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + json_escape(m.outputs[i]) + "\"";
    }
    out += "]\n}\n";
    return out;
}

RunManifest manifest_from_json(const std::string& text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    for (const auto& [key, value] : j.at("config").items()) {
        m.config.emplace_back(key, value.get<std::string>());
    }
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.started_utc = j.at("started_utc").get<std::string>();
    m.finished_utc = j.at("finished_utc").get<std::string>();
    for (const auto& o : j.at("outputs")) m.outputs.push_back(o.get<std::string>());
    return m;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return std::string(buf);
}

}  // namespace vsa
