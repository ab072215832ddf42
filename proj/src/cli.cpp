#include "vsa/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <list>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "vsa/codebook.hpp"
#include "vsa/experiments.hpp"
#include "vsa/io.hpp"
#include "vsa/models.hpp"

namespace fs = std::filesystem;

namespace vsa {

namespace {

enum class Action {
    None,
    BenchRetrieval,
    BenchSequential,
    HeatCorrection,
    HeatNoise,
    RelationNorm,
    RelationCosine,
    XmlDemo,
    CspsDemo,
    CodebookNew,
    CodebookShow,
    CodebookQuery,
};

struct Opts {
    std::string model = "all";
    std::vector<int> dims;
    std::string rho;
    std::string nrange = "1..10";
    int trials = 0;
    double mu = 1.0;
    std::uint64_t seed = 7;
    std::string metric = "cosine";
    std::string out = ".";
    std::string format = "csv";
    bool svg = false;
    bool serial = false;

    int depth = 50;
    std::string mode = "both";
    int pool = 1000;
    bool all_j = false;
    int labels = 1000;
    int k = 5;
    int size = 16;
    double noise = 0.1;
    std::string in_file;
    std::string name;

    CLI::Option* seed_opt = nullptr;
};

int parse_int(const std::string& s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("not an integer: " + s);
    }
    return v;
}

// "LO..HI", or "HI" alone with the caller's implicit lower end.
std::pair<int, int> parse_range(const std::string& s, int implicit_lo) {
    const std::size_t dots = s.find("..");
    if (dots == std::string::npos) return {implicit_lo, parse_int(s)};
    return {parse_int(s.substr(0, dots)), parse_int(s.substr(dots + 2))};
}

std::vector<ModelKind> models_from_flag(const std::string& flag) {
    if (flag == "all") {
        return {ModelKind::HLB, ModelKind::HRR, ModelKind::VTB, ModelKind::MAP_C,
                ModelKind::MAP_B};
    }
    return {model_from_name(flag)};
}

std::string join_args(const std::vector<std::string>& args) {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ' ';
        out += args[i];
    }
    return out;
}

std::string join_dims(const std::vector<int>& dims) {
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(dims[i]);
    }
    return out;
}

// --seed wins; otherwise VSA_SEED; otherwise the built-in default 7.
void resolve_seed(Opts& o) {
    if (o.seed_opt != nullptr && o.seed_opt->count() > 0) return;
    const char* env = std::getenv("VSA_SEED");
    if (env == nullptr) return;
    const std::string s(env);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("VSA_SEED is not an unsigned integer: " + s);
    }
    o.seed = v;
}

// Collects data files plus the manifest for one command invocation.
class Writer {
public:
    Writer(const Opts& o, std::string command_display,
           std::vector<std::pair<std::string, std::string>> config)
        : dir_(o.out), format_(o.format) {
        fs::create_directories(dir_);
        manifest_.command = std::move(command_display);
        manifest_.config = std::move(config);
        manifest_.seed = o.seed;
        manifest_.tool_version = kToolVersion;
        manifest_.started_utc = utc_timestamp_now();
    }

    void table(const std::string& stem, const Table& t) {
        const std::string file = stem + (format_ == "json" ? ".json" : ".csv");
        write_text_file(dir_ / file, format_ == "json" ? to_json_rows(t) : to_csv(t));
        files_.push_back(file);
        std::cout << "wrote " << (dir_ / file).string() << " (" << t.rows.size()
                  << " rows)\n";
    }

    void svg(const std::string& stem, const std::string& content) {
        const std::string file = stem + ".svg";
        write_text_file(dir_ / file, content);
        files_.push_back(file);
        std::cout << "wrote " << (dir_ / file).string() << "\n";
    }

    void finish(const std::string& stem) {
        manifest_.outputs = files_;
        manifest_.finished_utc = utc_timestamp_now();
        write_text_file(dir_ / (stem + "_manifest.json"), manifest_to_json(manifest_));
    }

private:
    fs::path dir_;
    std::string format_;
    RunManifest manifest_;
    std::vector<std::string> files_;
};

std::vector<std::pair<std::string, std::string>> base_config(const Opts& o,
                                                             const std::string& subcommand) {
    return {{"subcommand", subcommand},
            {"seed", std::to_string(o.seed)},
            {"out", o.out},
            {"format", o.format},
            {"svg", o.svg ? "true" : "false"},
            {"serial", o.serial ? "true" : "false"}};
}

int do_bench_retrieval(const Opts& o, const std::string& display) {
    const auto [rho_lo, rho_hi] = parse_range(o.rho, 1);
    RetrievalConfig cfg;
    cfg.pool_size = o.pool;
    cfg.dims = o.dims;
    cfg.rho_min = rho_lo;
    cfg.rho_max = rho_hi;
    cfg.trials = o.trials;
    cfg.models = models_from_flag(o.model);
    cfg.metric = metric_from_name(o.metric);
    cfg.mu = o.mu;
    cfg.seed = o.seed;
    cfg.parallel = !o.serial;

    auto config = base_config(o, "bench retrieval");
    config.emplace_back("model", o.model);
    config.emplace_back("dims", join_dims(o.dims));
    config.emplace_back("rho", o.rho);
    config.emplace_back("trials", std::to_string(o.trials));
    config.emplace_back("mu", format_double(o.mu));
    config.emplace_back("metric", o.metric);
    config.emplace_back("pool", std::to_string(o.pool));
    Writer w(o, display, config);

    const ExperimentResult res = run_retrieval(cfg);
    w.table("retrieval", res.rows);
    w.table("retrieval_summary", res.summary);
    w.table("retrieval_auc", res.auc);
    for (const auto& row : res.auc.rows) {
        std::cout << "auc " << std::get<std::string>(row[0]) << " d=" << std::get<long long>(row[1])
                  << ": " << format_double(std::get<double>(row[2])) << "\n";
    }
    w.finish("retrieval");
    return 0;
}

int do_bench_sequential(const Opts& o, const std::string& display) {
    SequentialConfig cfg;
    cfg.depth = o.depth;
    cfg.d = o.dims.front();
    cfg.trials = o.trials;
    cfg.models = models_from_flag(o.model);
    cfg.mu = o.mu;
    cfg.seed = o.seed;
    cfg.parallel = !o.serial;
    if (o.mode == "random") {
        cfg.modes = {SequentialMode::Random};
    } else if (o.mode == "auto") {
        cfg.modes = {SequentialMode::Auto};
    } else {
        cfg.modes = {SequentialMode::Random, SequentialMode::Auto};
    }

    auto config = base_config(o, "bench sequential");
    config.emplace_back("model", o.model);
    config.emplace_back("dims", join_dims(o.dims));
    config.emplace_back("depth", std::to_string(o.depth));
    config.emplace_back("mode", o.mode);
    config.emplace_back("trials", std::to_string(o.trials));
    config.emplace_back("mu", format_double(o.mu));
    Writer w(o, display, config);

    const ExperimentResult res = run_sequential(cfg);
    w.table("sequential", res.rows);
    w.table("sequential_summary", res.summary);
    w.finish("sequential");
    return 0;
}

HeatmapConfig heatmap_config(const Opts& o, int rho_implicit_lo) {
    const auto [n_lo, n_hi] = parse_range(o.nrange, 1);
    const auto [rho_lo, rho_hi] = parse_range(o.rho, rho_implicit_lo);
    HeatmapConfig cfg;
    cfg.n_min = n_lo;
    cfg.n_max = n_hi;
    cfg.rho_min = rho_lo;
    cfg.rho_max = rho_hi;
    cfg.trials = o.trials;
    cfg.mu = o.mu;
    cfg.seed = o.seed;
    cfg.negative_all_j = o.all_j;
    cfg.parallel = !o.serial;
    return cfg;
}

void print_grid_extent(const GridResult& g) {
    double lo = 0.0, hi = 0.0;
    bool seen = false;
    for (const auto& row : g.cells) {
        for (double v : row) {
            if (!std::isfinite(v)) continue;
            lo = seen ? std::min(lo, v) : v;
            hi = seen ? std::max(hi, v) : v;
            seen = true;
        }
    }
    std::cout << g.metric << ": cells in [" << format_double(lo) << ", " << format_double(hi)
              << "]\n";
}

int do_heatmap(const Opts& o, const std::string& display, bool correction) {
    HeatmapConfig cfg = heatmap_config(o, correction ? 1 : 2);
    auto config = base_config(o, correction ? "heatmap correction" : "heatmap noise");
    config.emplace_back("n", o.nrange);
    config.emplace_back("rho", o.rho);
    config.emplace_back("trials", std::to_string(o.trials));
    config.emplace_back("mu", format_double(o.mu));
    if (correction) config.emplace_back("all-j", o.all_j ? "true" : "false");
    Writer w(o, display, config);

    const auto [grid_a, grid_b] =
        correction ? run_correction_heatmap(cfg) : run_noise_heatmap(cfg);
    const std::string stem_a = correction ? "correction_positive" : "noise_circ";
    const std::string stem_b = correction ? "correction_negative" : "noise_proj";
    w.table(stem_a, grid_to_table(grid_a));
    w.table(stem_b, grid_to_table(grid_b));
    print_grid_extent(grid_a);
    print_grid_extent(grid_b);
    if (o.svg) {
        HeatmapStyle style;
        style.xlabel = "rho";
        style.ylabel = "n (d = 2^n)";
        if (correction) {
            style.vmin = 0.0;
            style.vmax = 1.0;
        } else {
            style.vmin = -3.0;
            style.vmax = 11.0;
        }
        style.title = grid_a.metric;
        w.svg(stem_a, render_svg_heatmap(grid_a, style));
        style.title = grid_b.metric;
        w.svg(stem_b, render_svg_heatmap(grid_b, style));
    }
    w.finish(correction ? "correction" : "noise");
    return 0;
}

int do_relation(const Opts& o, const std::string& display, bool norm_mode) {
    const auto [rho_lo, rho_hi] = parse_range(o.rho, 1);
    CurveConfig cfg;
    cfg.d = o.dims.front();
    cfg.mu = o.mu;
    cfg.rho_min = rho_lo;
    cfg.rho_max = rho_hi;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.parallel = !o.serial;

    auto config = base_config(o, norm_mode ? "relation norm" : "relation cosine");
    config.emplace_back("dims", join_dims(o.dims));
    config.emplace_back("rho", o.rho);
    config.emplace_back("trials", std::to_string(o.trials));
    config.emplace_back("mu", format_double(o.mu));
    Writer w(o, display, config);

    const CurveResult res = norm_mode ? run_relation_norm(cfg) : run_relation_phi(cfg);
    const std::string stem = norm_mode ? "relation_norm" : "relation_cosine";
    w.table(stem, curve_to_table(res));

    double worst = 0.0;
    for (std::size_t i = 0; i < res.rho.size(); ++i) {
        const double dev = std::fabs(res.mean[i] - res.theory[i]);
        worst = std::max(worst, norm_mode ? dev / res.theory[i] : dev);
    }
    std::cout << "max " << (norm_mode ? "relative" : "absolute")
              << " deviation from theory: " << format_double(worst) << "\n";

    if (o.svg) {
        CurveSeries series;
        series.x = res.rho;
        series.mean = res.mean;
        series.std_dev = res.std_dev;
        series.theory = res.theory;
        series.xlabel = "rho";
        series.ylabel = norm_mode ? "|chi|_2" : "cosine";
        series.title = norm_mode ? "composite norm vs mu^2 sqrt(rho d)"
                                 : "retrieval cosine vs 1/sqrt(rho)";
        w.svg(stem, render_svg_curve(series));
    }
    w.finish(stem);
    return 0;
}

int do_xml_demo(const Opts& o, const std::string& display) {
    if (o.k < 1 || o.k > o.labels) {
        throw std::invalid_argument("xml demo: need 1 <= k <= labels");
    }
    auto config = base_config(o, "xml demo");
    config.emplace_back("model", o.model);
    config.emplace_back("dims", join_dims(o.dims));
    config.emplace_back("labels", std::to_string(o.labels));
    config.emplace_back("k", std::to_string(o.k));
    config.emplace_back("mu", format_double(o.mu));
    Writer w(o, display, config);

    const int d = o.dims.front();
    Table t;
    t.columns = {"model", "d", "labels", "k", "metric", "value"};
    for (ModelKind kind : models_from_flag(o.model)) {
        const BindingModel model = make_model(kind, d, o.mu);

        SeedSpec class_seed{o.seed};
        class_seed.label("xml").label(model_name(kind)).label("classes");
        Stream class_stream = derive_stream(class_seed);
        Codebook classes(model);
        for (int i = 0; i < o.labels; ++i) {
            classes.insert("c" + std::to_string(i), sample(model, class_stream));
        }
        SeedSpec role_seed{o.seed};
        role_seed.label("xml").label(model_name(kind)).label("roles");
        Stream role_stream = derive_stream(role_seed);
        const XmlContext ctx = make_xml_context(model, classes, sample(model, role_stream),
                                                sample(model, role_stream));

        // K distinct labels by a partial shuffle of the index list.
        SeedSpec pres_seed{o.seed};
        pres_seed.label("xml").label(model_name(kind)).label("present");
        Stream pres_stream = derive_stream(pres_seed);
        std::vector<int> indices(static_cast<std::size_t>(o.labels));
        for (int i = 0; i < o.labels; ++i) indices[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < o.k; ++i) {
            const int j = i + static_cast<int>(pres_stream.index(
                                  static_cast<std::uint64_t>(o.labels - i)));
            std::swap(indices[static_cast<std::size_t>(i)],
                      indices[static_cast<std::size_t>(j)]);
        }
        const std::vector<int> present(indices.begin(), indices.begin() + o.k);

        const HyperVector fast = xml_encode(ctx, present);
        const HyperVector brute = xml_encode_brute(ctx, present);
        double diff = 0.0;
        for (std::size_t i = 0; i < fast.dim(); ++i) {
            diff = std::max(diff, std::fabs(fast[i] - brute[i]));
        }
        const double loss = xml_loss(ctx, fast, present);

        t.rows.push_back({Cell(model_name(kind)), Cell(static_cast<long long>(d)),
                          Cell(static_cast<long long>(o.labels)),
                          Cell(static_cast<long long>(o.k)),
                          Cell(std::string("complement_max_abs_diff")), Cell(diff)});
        t.rows.push_back({Cell(model_name(kind)), Cell(static_cast<long long>(d)),
                          Cell(static_cast<long long>(o.labels)),
                          Cell(static_cast<long long>(o.k)), Cell(std::string("loss")),
                          Cell(loss)});
        std::cout << model_name(kind) << ": complement diff " << format_double(diff)
                  << ", loss " << format_double(loss) << "\n";
    }
    w.table("xml_demo", t);
    w.finish("xml");
    return 0;
}

int do_csps_demo(const Opts& o, const std::string& display) {
    auto config = base_config(o, "csps demo");
    config.emplace_back("model", o.model);
    config.emplace_back("dims", join_dims(o.dims));
    config.emplace_back("trials", std::to_string(o.trials));
    config.emplace_back("mu", format_double(o.mu));
    Writer w(o, display, config);

    const int d = o.dims.front();
    Table t;
    t.columns = {"model", "d", "trial", "metric", "value"};
    for (ModelKind kind : models_from_flag(o.model)) {
        const BindingModel model = make_model(kind, d, o.mu);
        double rt_acc = 0.0, hide_acc = 0.0, pair_acc = 0.0;
        for (int trial = 0; trial < o.trials; ++trial) {
            SeedSpec spec{o.seed};
            spec.label("csps").label(model_name(kind)).label(
                static_cast<std::uint64_t>(trial));
            Stream stream = derive_stream(spec);
            const HyperVector x = sample(model, stream);
            const HyperVector s1 = sample(model, stream);
            const HyperVector s2 = sample(model, stream);

            const HyperVector masked = csps_mask(model, x, s1);
            const HyperVector recovered = csps_unmask(model, masked, s1);
            const double rt = norm2(sub(recovered, x)) / norm2(x);
            const double hide = cosine(masked, x);
            const double pair = cosine(masked, csps_mask(model, x, s2));
            rt_acc += rt;
            hide_acc += std::fabs(hide);
            pair_acc += std::fabs(pair);

            t.rows.push_back({Cell(model_name(kind)), Cell(static_cast<long long>(d)),
                              Cell(static_cast<long long>(trial)),
                              Cell(std::string("roundtrip_rel_error")), Cell(rt)});
            t.rows.push_back({Cell(model_name(kind)), Cell(static_cast<long long>(d)),
                              Cell(static_cast<long long>(trial)),
                              Cell(std::string("cos_mask_vs_x")), Cell(hide)});
            t.rows.push_back({Cell(model_name(kind)), Cell(static_cast<long long>(d)),
                              Cell(static_cast<long long>(trial)),
                              Cell(std::string("cos_two_masks")), Cell(pair)});
        }
        std::cout << model_name(kind) << ": mean roundtrip " << format_double(rt_acc / o.trials)
                  << ", mean |cos(mask,x)| " << format_double(hide_acc / o.trials)
                  << ", mean |cos(mask,mask')| " << format_double(pair_acc / o.trials) << "\n";
    }
    w.table("csps_demo", t);
    w.finish("csps");
    return 0;
}

int do_codebook_new(const Opts& o, const std::string& display) {
    if (o.model == "all") {
        throw std::invalid_argument("codebook new: pick one model, not 'all'");
    }
    if (o.size < 1) throw std::invalid_argument("codebook new: size must be >= 1");
    auto config = base_config(o, "codebook new");
    config.emplace_back("model", o.model);
    config.emplace_back("dims", join_dims(o.dims));
    config.emplace_back("size", std::to_string(o.size));
    config.emplace_back("mu", format_double(o.mu));
    Writer w(o, display, config);

    const BindingModel model = make_model(model_from_name(o.model), o.dims.front(), o.mu);
    SeedSpec spec{o.seed};
    spec.label("codebook").label(o.model);
    Stream stream = derive_stream(spec);
    Codebook cb(model);
    for (int i = 0; i < o.size; ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "sym_%04d", i);
        cb.insert(name, sample(model, stream));
    }
    const fs::path path = fs::path(o.out) / "codebook.json";
    save_codebook(cb, path);
    std::cout << "wrote " << path.string() << " (" << cb.size() << " entries, d=" << cb.dim()
              << ")\n";
    w.finish("codebook");
    return 0;
}

int do_codebook_show(const Opts& o) {
    const Codebook cb = load_codebook(o.in_file);
    std::cout << "model: " << model_name(cb.model().kind) << "\n";
    std::cout << "d: " << cb.dim() << "\n";
    if (cb.model().kind == ModelKind::HLB) {
        std::cout << "mu: " << format_double(cb.model().mu) << "\n";
    }
    std::cout << "entries: " << cb.size() << "\n";
    const std::size_t shown = std::min<std::size_t>(cb.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
        std::cout << "  " << cb.name_of(i) << "\n";
    }
    if (cb.size() > shown) std::cout << "  ... " << (cb.size() - shown) << " more\n";
    return 0;
}

int do_codebook_query(const Opts& o) {
    const Codebook cb = load_codebook(o.in_file);
    if (cb.empty()) throw std::domain_error("codebook query: empty codebook");
    const std::string target = o.name.empty() ? cb.name_of(0) : o.name;
    const HyperVector& stored = cb.at(target);

    SeedSpec spec{o.seed};
    spec.label("codebook_query").label(target);
    Stream stream = derive_stream(spec);
    std::vector<double> noisy(stored.dim());
    for (std::size_t i = 0; i < stored.dim(); ++i) {
        noisy[i] = stored[i] + o.noise * stream.normal();
    }
    const NearestMatch match = codebook_nearest(cb, HyperVector::unchecked(std::move(noisy)),
                                                metric_from_name(o.metric));
    std::cout << "query: " << target << " + noise sigma " << format_double(o.noise) << "\n";
    std::cout << "nearest: " << match.name << " (" << o.metric << " "
              << format_double(match.value) << ")"
              << (match.name == target ? " [recovered]" : " [mismatch]") << "\n";
    return 0;
}

void add_output_opts(CLI::App* cmd, Opts& o) {
    o.seed_opt = cmd->add_option("--seed", o.seed, "base seed (env VSA_SEED as fallback)")
                     ->capture_default_str();
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--format", o.format, "data file format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_flag("--svg", o.svg, "also render SVG figures");
    cmd->add_flag("--serial", o.serial, "force the serial reference path");
}

void add_model_opt(CLI::App* cmd, Opts& o, const std::string& def) {
    o.model = def;
    cmd->add_option("--model", o.model, "binding model")
        ->check(CLI::IsMember({"hlb", "hrr", "vtb", "map-c", "map-b", "all"}))
        ->capture_default_str();
}

void add_dims_opt(CLI::App* cmd, Opts& o, std::vector<int> def) {
    o.dims = std::move(def);
    cmd->add_option("--dims", o.dims, "dimension list")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_rho_opt(CLI::App* cmd, Opts& o, const std::string& def) {
    o.rho = def;
    cmd->add_option("--rho", o.rho, "pair-count range LO..HI (or HI alone)")
        ->capture_default_str();
}

void add_trials_opt(CLI::App* cmd, Opts& o, int def) {
    o.trials = def;
    cmd->add_option("--trials", o.trials, "trials per cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_mu_opt(CLI::App* cmd, Opts& o, double def) {
    o.mu = def;
    cmd->add_option("--mu", o.mu, "hlb MiND absolute mean")->capture_default_str();
}

void add_metric_opt(CLI::App* cmd, Opts& o) {
    cmd->add_option("--metric", o.metric, "similarity metric")
        ->check(CLI::IsMember({"dot", "cosine"}))
        ->capture_default_str();
}

std::vector<std::string> args_from_manifest(const RunManifest& m) {
    std::vector<std::string> args;
    std::string sub;
    for (const auto& [key, value] : m.config) {
        if (key == "subcommand") {
            sub = value;
            break;
        }
    }
    if (sub.empty()) throw std::runtime_error("manifest has no subcommand entry");
    std::istringstream ss(sub);
    std::string tok;
    while (ss >> tok) args.push_back(tok);
    for (const auto& [key, value] : m.config) {
        if (key == "subcommand") continue;
        if (key == "svg" || key == "serial" || key == "all-j") {
            if (value == "true") args.push_back("--" + key);
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

}  // namespace

int cli_dispatch(std::vector<std::string> args) {
    const std::string display = join_args(args);

    CLI::App app{"HLB workbench: binding algebra experiments and figures"};
    app.require_subcommand(0, 1);
    std::string manifest_path;
    CLI::Option* from_manifest =
        app.add_option("--from-manifest", manifest_path,
                       "re-run the command recorded in a manifest file");

    Action action = Action::None;
    std::list<Opts> opt_store;
    Opts* chosen = nullptr;
    auto make_opts = [&]() -> Opts& { return opt_store.emplace_back(); };
    auto arm = [&](CLI::App* leaf, Opts& o, Action a) {
        leaf->callback([&action, &chosen, &o, a]() {
            action = a;
            chosen = &o;
        });
    };

    CLI::App* bench = app.add_subcommand("bench", "retrieval and sequential benchmarks");
    bench->require_subcommand(1);
    {
        Opts& o = make_opts();
        CLI::App* c = bench->add_subcommand("retrieval", "pool retrieval accuracy and AUC");
        add_model_opt(c, o, "all");
        add_dims_opt(c, o, {16, 64, 256, 1024});
        add_rho_opt(c, o, "1..25");
        add_trials_opt(c, o, 50);
        add_mu_opt(c, o, 1.0);
        add_metric_opt(c, o);
        c->add_option("--pool", o.pool, "pool size N")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        add_output_opts(c, o);
        arm(c, o, Action::BenchRetrieval);
    }
    {
        Opts& o = make_opts();
        CLI::App* c = bench->add_subcommand("sequential", "repeated binding stability");
        add_model_opt(c, o, "all");
        add_dims_opt(c, o, {1024});
        c->add_option("--depth", o.depth, "binding rounds p")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        c->add_option("--mode", o.mode, "sequential mode")
            ->check(CLI::IsMember({"random", "auto", "both"}))
            ->capture_default_str();
        add_trials_opt(c, o, 10);
        add_mu_opt(c, o, 1.0);
        add_output_opts(c, o);
        arm(c, o, Action::BenchSequential);
    }

    CLI::App* heatmap = app.add_subcommand("heatmap", "similarity and noise grids");
    heatmap->require_subcommand(1);
    {
        Opts& o = make_opts();
        CLI::App* c = heatmap->add_subcommand("correction", "corrected cosine over (n, rho)");
        c->add_option("--n", o.nrange, "log2-dimension range LO..HI")->capture_default_str();
        add_rho_opt(c, o, "1..50");
        add_trials_opt(c, o, 100);
        add_mu_opt(c, o, 1.0);
        c->add_flag("--all-j", o.all_j, "average the negative case over every j != i");
        add_output_opts(c, o);
        arm(c, o, Action::HeatCorrection);
    }
    {
        Opts& o = make_opts();
        CLI::App* c = heatmap->add_subcommand("noise", "eta_circ and eta_proj over (n, rho)");
        c->add_option("--n", o.nrange, "log2-dimension range LO..HI")->capture_default_str();
        add_rho_opt(c, o, "2..50");
        add_trials_opt(c, o, 100);
        add_mu_opt(c, o, 1.0);
        add_output_opts(c, o);
        arm(c, o, Action::HeatNoise);
    }

    CLI::App* relation = app.add_subcommand("relation", "theorem curves vs experiment");
    relation->require_subcommand(1);
    {
        Opts& o = make_opts();
        CLI::App* c = relation->add_subcommand("norm", "|chi| against mu^2 sqrt(rho d)");
        add_dims_opt(c, o, {1024});
        add_rho_opt(c, o, "1..200");
        add_trials_opt(c, o, 100);
        add_mu_opt(c, o, 0.5);
        add_output_opts(c, o);
        arm(c, o, Action::RelationNorm);
    }
    {
        Opts& o = make_opts();
        CLI::App* c = relation->add_subcommand("cosine", "retrieval cosine against 1/sqrt(rho)");
        add_dims_opt(c, o, {512});
        add_rho_opt(c, o, "1..50");
        add_trials_opt(c, o, 100);
        add_mu_opt(c, o, 1.0);
        add_output_opts(c, o);
        arm(c, o, Action::RelationCosine);
    }

    CLI::App* xml = app.add_subcommand("xml", "multi-label encoding demo");
    xml->require_subcommand(1);
    {
        Opts& o = make_opts();
        CLI::App* c = xml->add_subcommand("demo", "complement identity and loss");
        add_model_opt(c, o, "all");
        add_dims_opt(c, o, {256});
        c->add_option("--labels", o.labels, "total label count L")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        c->add_option("--k", o.k, "present label count K")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        add_mu_opt(c, o, 1.0);
        add_output_opts(c, o);
        arm(c, o, Action::XmlDemo);
    }

    CLI::App* csps = app.add_subcommand("csps", "masking demo");
    csps->require_subcommand(1);
    {
        Opts& o = make_opts();
        CLI::App* c = csps->add_subcommand("demo", "mask/unmask round trip and hiding");
        add_model_opt(c, o, "all");
        add_dims_opt(c, o, {1024});
        add_trials_opt(c, o, 100);
        add_mu_opt(c, o, 1.0);
        add_output_opts(c, o);
        arm(c, o, Action::CspsDemo);
    }

    CLI::App* codebook = app.add_subcommand("codebook", "symbol table files");
    codebook->require_subcommand(1);
    {
        Opts& o = make_opts();
        CLI::App* c = codebook->add_subcommand("new", "sample and save a codebook");
        add_model_opt(c, o, "hlb");
        add_dims_opt(c, o, {1024});
        c->add_option("--size", o.size, "entry count")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        add_mu_opt(c, o, 1.0);
        add_output_opts(c, o);
        arm(c, o, Action::CodebookNew);
    }
    {
        Opts& o = make_opts();
        CLI::App* c = codebook->add_subcommand("show", "print a codebook summary");
        c->add_option("--in", o.in_file, "codebook JSON file")->required();
        arm(c, o, Action::CodebookShow);
    }
    {
        Opts& o = make_opts();
        CLI::App* c = codebook->add_subcommand("query", "noisy nearest-neighbor lookup");
        c->add_option("--in", o.in_file, "codebook JSON file")->required();
        c->add_option("--name", o.name, "entry to perturb (default: first)");
        c->add_option("--noise", o.noise, "noise sigma")->capture_default_str();
        add_metric_opt(c, o);
        o.seed_opt = c->add_option("--seed", o.seed, "base seed")->capture_default_str();
        arm(c, o, Action::CodebookQuery);
    }

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n(run with --help for usage)\n";
        return 2;
    }

    try {
        if (from_manifest->count() > 0) {
            const RunManifest m = manifest_from_json(read_text_file(manifest_path));
            return cli_dispatch(args_from_manifest(m));
        }
        if (action == Action::None) {
            std::cerr << app.help();
            return 2;
        }
        Opts& o = *chosen;
        resolve_seed(o);
        switch (action) {
            case Action::BenchRetrieval: return do_bench_retrieval(o, display);
            case Action::BenchSequential: return do_bench_sequential(o, display);
            case Action::HeatCorrection: return do_heatmap(o, display, true);
            case Action::HeatNoise: return do_heatmap(o, display, false);
            case Action::RelationNorm: return do_relation(o, display, true);
            case Action::RelationCosine: return do_relation(o, display, false);
            case Action::XmlDemo: return do_xml_demo(o, display);
            case Action::CspsDemo: return do_csps_demo(o, display);
            case Action::CodebookNew: return do_codebook_new(o, display);
            case Action::CodebookShow: return do_codebook_show(o);
            case Action::CodebookQuery: return do_codebook_query(o);
            case Action::None: break;
        }
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace vsa
