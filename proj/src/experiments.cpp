#include "vsa/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace vsa {

namespace {

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

// Sample standard deviation; 0 for fewer than two values.
double std_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

bool is_perfect_square(int d) {
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
    return r * r == d;
}

std::vector<HyperVector> sample_pool(const BindingModel& model, Stream& stream, int n) {
    std::vector<HyperVector> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.push_back(sample(model, stream));
    return pool;
}

void accumulate(std::vector<double>& acc, const HyperVector& v) {
    for (std::size_t k = 0; k < v.dim(); ++k) acc[k] += v[k];
}

double mean_abs(const HyperVector& v) {
    double acc = 0.0;
    for (double x : v) acc += std::fabs(x);
    return acc / static_cast<double>(v.dim());
}

}  // namespace

std::string sequential_mode_name(SequentialMode m) {
    return m == SequentialMode::Random ? "random" : "auto";
}

ExperimentResult run_retrieval(const RetrievalConfig& cfg) {
    if (cfg.pool_size < 2) throw std::invalid_argument("retrieval: pool_size must be >= 2");
    if (cfg.rho_min < 1 || cfg.rho_max < cfg.rho_min) {
        throw std::invalid_argument("retrieval: need 1 <= rho_min <= rho_max");
    }
    if (cfg.trials < 1) throw std::invalid_argument("retrieval: trials must be >= 1");
    if (cfg.dims.empty() || cfg.models.empty()) {
        throw std::invalid_argument("retrieval: empty dimension or model list");
    }
    for (ModelKind kind : cfg.models) {
        for (int d : cfg.dims) {
            if (kind == ModelKind::VTB && !is_perfect_square(d)) {
                throw std::invalid_argument("retrieval: vtb needs a perfect-square d, got " +
                                            std::to_string(d));
            }
            if (d < 1) throw std::invalid_argument("retrieval: d must be >= 1");
        }
    }

    const int n_models = static_cast<int>(cfg.models.size());
    const int n_dims = static_cast<int>(cfg.dims.size());
    const int n_rho = cfg.rho_max - cfg.rho_min + 1;
    const int n_pool = cfg.pool_size;

    // One slot per (model, d, trial, rho); jobs fill disjoint slices, the
    // aggregation below reads them in fixed order.
    std::vector<double> acc_slots(
        static_cast<std::size_t>(n_models) * n_dims * cfg.trials * n_rho, 0.0);
    struct Job {
        int mi, di, trial;
    };
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(n_models) * n_dims * cfg.trials);
    for (int mi = 0; mi < n_models; ++mi) {
        for (int di = 0; di < n_dims; ++di) {
            for (int t = 0; t < cfg.trials; ++t) jobs.push_back({mi, di, t});
        }
    }

    const bool par = cfg.parallel;
    const std::int64_t n_jobs = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (par)
    for (std::int64_t ji = 0; ji < n_jobs; ++ji) {
        const Job& job = jobs[static_cast<std::size_t>(ji)];
        const ModelKind kind = cfg.models[static_cast<std::size_t>(job.mi)];
        const int d = cfg.dims[static_cast<std::size_t>(job.di)];
        const BindingModel model = make_model(kind, d, cfg.mu);

        SeedSpec pool_seed{cfg.seed};
        pool_seed.label("retrieval")
            .label(model_name(kind))
            .label(static_cast<std::uint64_t>(d))
            .label(static_cast<std::uint64_t>(job.trial))
            .label("pool");
        Stream pool_stream = derive_stream(pool_seed);
        const std::vector<HyperVector> pool = sample_pool(model, pool_stream, n_pool);

        std::vector<double> inv_norm(static_cast<std::size_t>(n_pool), 1.0);
        if (cfg.metric == Metric::Cosine) {
            for (int i = 0; i < n_pool; ++i) {
                inv_norm[static_cast<std::size_t>(i)] =
                    1.0 / norm2(pool[static_cast<std::size_t>(i)]);
            }
        }

        for (int rho = cfg.rho_min; rho <= cfg.rho_max; ++rho) {
            SeedSpec pair_seed{cfg.seed};
            pair_seed.label("retrieval")
                .label(model_name(kind))
                .label(static_cast<std::uint64_t>(d))
                .label(static_cast<std::uint64_t>(job.trial))
                .label("pairs")
                .label(static_cast<std::uint64_t>(rho));
            Stream pair_stream = derive_stream(pair_seed);

            std::vector<int> qi(static_cast<std::size_t>(rho));
            std::vector<int> pi(static_cast<std::size_t>(rho));
            for (int q = 0; q < rho; ++q) {
                qi[static_cast<std::size_t>(q)] =
                    static_cast<int>(pair_stream.index(static_cast<std::uint64_t>(n_pool)));
                pi[static_cast<std::size_t>(q)] =
                    static_cast<int>(pair_stream.index(static_cast<std::uint64_t>(n_pool)));
            }

            // Partner bound under the query key, then summed.
            HyperVector chi;
            for (int q = 0; q < rho; ++q) {
                const HyperVector bound =
                    bind(model, pool[static_cast<std::size_t>(pi[static_cast<std::size_t>(q)])],
                         pool[static_cast<std::size_t>(qi[static_cast<std::size_t>(q)])]);
                chi = (q == 0) ? bound : add(chi, bound);
            }

            int correct = 0;
            for (int q = 0; q < rho; ++q) {
                const HyperVector xhat =
                    unbind(model, chi,
                           pool[static_cast<std::size_t>(qi[static_cast<std::size_t>(q)])]);
                const int true_partner = pi[static_cast<std::size_t>(q)];
                double best = -1.0 / 0.0;
                double true_score = 0.0;
                for (int j = 0; j < n_pool; ++j) {
                    const double s =
                        dot(xhat, pool[static_cast<std::size_t>(j)]) *
                        inv_norm[static_cast<std::size_t>(j)];
                    if (s > best) best = s;
                    if (j == true_partner) true_score = s;
                }
                // correct iff the true partner attains the maximum (ties count)
                if (true_score >= best) ++correct;
            }
            const std::size_t slot =
                ((static_cast<std::size_t>(job.mi) * n_dims + job.di) * cfg.trials +
                 job.trial) *
                    n_rho +
                static_cast<std::size_t>(rho - cfg.rho_min);
            acc_slots[slot] = static_cast<double>(correct) / static_cast<double>(rho);
        }
    }

    ExperimentResult out;
    out.rows.columns = {"model", "d", "rho", "trial", "accuracy"};
    out.summary.columns = {"model", "d", "rho", "accuracy_mean", "accuracy_std"};
    out.auc.columns = {"model", "d", "auc"};
    for (int mi = 0; mi < n_models; ++mi) {
        const std::string name = model_name(cfg.models[static_cast<std::size_t>(mi)]);
        for (int di = 0; di < n_dims; ++di) {
            const int d = cfg.dims[static_cast<std::size_t>(di)];
            std::vector<double> rho_axis, rho_mean;
            for (int rho = cfg.rho_min; rho <= cfg.rho_max; ++rho) {
                std::vector<double> per_trial(static_cast<std::size_t>(cfg.trials));
                for (int t = 0; t < cfg.trials; ++t) {
                    const std::size_t slot =
                        ((static_cast<std::size_t>(mi) * n_dims + di) * cfg.trials + t) *
                            n_rho +
                        static_cast<std::size_t>(rho - cfg.rho_min);
                    per_trial[static_cast<std::size_t>(t)] = acc_slots[slot];
                    out.rows.rows.push_back({Cell(name), Cell(static_cast<long long>(d)),
                                             Cell(static_cast<long long>(rho)),
                                             Cell(static_cast<long long>(t)),
                                             Cell(acc_slots[slot])});
                }
                rho_axis.push_back(static_cast<double>(rho));
                rho_mean.push_back(mean_of(per_trial));
                out.summary.rows.push_back({Cell(name), Cell(static_cast<long long>(d)),
                                            Cell(static_cast<long long>(rho)),
                                            Cell(mean_of(per_trial)),
                                            Cell(std_of(per_trial))});
            }
            if (rho_axis.size() >= 2) {
                out.auc.rows.push_back({Cell(name), Cell(static_cast<long long>(d)),
                                        Cell(compute_auc(rho_axis, rho_mean))});
            }
        }
    }
    return out;
}

double compute_auc(const std::vector<double>& rhos, const std::vector<double>& accuracies) {
    if (rhos.size() != accuracies.size()) {
        throw std::invalid_argument("compute_auc: length mismatch");
    }
    if (rhos.size() < 2) throw std::invalid_argument("compute_auc: need at least 2 points");
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < rhos.size(); ++i) {
        if (rhos[i + 1] <= rhos[i]) {
            throw std::invalid_argument("compute_auc: rho values must ascend");
        }
        integral += (rhos[i + 1] - rhos[i]) * (accuracies[i + 1] + accuracies[i]) / 2.0;
    }
    return integral / (rhos.back() - rhos.front());
}

ExperimentResult run_sequential(const SequentialConfig& cfg) {
    if (cfg.depth < 1) throw std::invalid_argument("sequential: depth must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("sequential: trials must be >= 1");
    if (cfg.models.empty() || cfg.modes.empty()) {
        throw std::invalid_argument("sequential: empty model or mode list");
    }
    for (ModelKind kind : cfg.models) {
        if (kind == ModelKind::VTB && !is_perfect_square(cfg.d)) {
            throw std::invalid_argument("sequential: vtb needs a perfect-square d");
        }
    }

    const int n_models = static_cast<int>(cfg.models.size());
    const int n_modes = static_cast<int>(cfg.modes.size());
    const int p = cfg.depth;

    std::vector<double> sim_slots(
        static_cast<std::size_t>(n_models) * n_modes * cfg.trials * p, 0.0);
    std::vector<double> mag_slots(sim_slots.size(), 0.0);

    struct Job {
        int mi, oi, trial;
    };
    std::vector<Job> jobs;
    for (int mi = 0; mi < n_models; ++mi) {
        for (int oi = 0; oi < n_modes; ++oi) {
            for (int t = 0; t < cfg.trials; ++t) jobs.push_back({mi, oi, t});
        }
    }

    const bool par = cfg.parallel;
    const std::int64_t n_jobs = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (par)
    for (std::int64_t ji = 0; ji < n_jobs; ++ji) {
        const Job& job = jobs[static_cast<std::size_t>(ji)];
        const ModelKind kind = cfg.models[static_cast<std::size_t>(job.mi)];
        const SequentialMode mode = cfg.modes[static_cast<std::size_t>(job.oi)];
        const BindingModel model = make_model(kind, cfg.d, cfg.mu);

        SeedSpec spec{cfg.seed};
        spec.label("sequential")
            .label(model_name(kind))
            .label(sequential_mode_name(mode))
            .label(static_cast<std::uint64_t>(cfg.d))
            .label(static_cast<std::uint64_t>(job.trial));
        Stream stream = derive_stream(spec);

        HyperVector b = sample(model, stream);
        HyperVector fixed_x;
        if (mode == SequentialMode::Auto) fixed_x = sample(model, stream);

        for (int t = 1; t <= p; ++t) {
            const HyperVector x =
                (mode == SequentialMode::Auto) ? fixed_x : sample(model, stream);
            const HyperVector b_next = bind(model, b, x);
            const HyperVector r = unbind(model, b_next, x);
            const std::size_t slot =
                ((static_cast<std::size_t>(job.mi) * n_modes + job.oi) * cfg.trials +
                 job.trial) *
                    p +
                static_cast<std::size_t>(t - 1);
            sim_slots[slot] = cosine(r, b);
            mag_slots[slot] = norm2(r);
            b = b_next;
        }
    }

    ExperimentResult out;
    out.rows.columns = {"model", "mode", "d", "t", "trial", "similarity", "magnitude"};
    out.summary.columns = {"model", "mode",     "d",       "t",
                           "sim_mean", "sim_std", "mag_mean", "mag_std"};
    for (int mi = 0; mi < n_models; ++mi) {
        const std::string name = model_name(cfg.models[static_cast<std::size_t>(mi)]);
        for (int oi = 0; oi < n_modes; ++oi) {
            const std::string mode = sequential_mode_name(cfg.modes[static_cast<std::size_t>(oi)]);
            for (int t = 1; t <= p; ++t) {
                std::vector<double> sims(static_cast<std::size_t>(cfg.trials));
                std::vector<double> mags(static_cast<std::size_t>(cfg.trials));
                for (int tr = 0; tr < cfg.trials; ++tr) {
                    const std::size_t slot =
                        ((static_cast<std::size_t>(mi) * n_modes + oi) * cfg.trials + tr) * p +
                        static_cast<std::size_t>(t - 1);
                    sims[static_cast<std::size_t>(tr)] = sim_slots[slot];
                    mags[static_cast<std::size_t>(tr)] = mag_slots[slot];
                    out.rows.rows.push_back(
                        {Cell(name), Cell(mode), Cell(static_cast<long long>(cfg.d)),
                         Cell(static_cast<long long>(t)), Cell(static_cast<long long>(tr)),
                         Cell(sim_slots[slot]), Cell(mag_slots[slot])});
                }
                out.summary.rows.push_back(
                    {Cell(name), Cell(mode), Cell(static_cast<long long>(cfg.d)),
                     Cell(static_cast<long long>(t)), Cell(mean_of(sims)), Cell(std_of(sims)),
                     Cell(mean_of(mags)), Cell(std_of(mags))});
            }
        }
    }
    return out;
}

namespace {

// Shared sweep scaffolding for the two heatmaps: cells over (n, rho) filled
// in parallel, flags tracked as char to keep concurrent writes on distinct
// bytes.
struct GridBuffers {
    std::vector<double> a, b;
    std::vector<char> flag_a, flag_b;
    int n_cells;
};

GridResult finish_grid(const HeatmapConfig& cfg, const std::vector<double>& cells,
                       const std::vector<char>& flags, const std::string& metric) {
    GridResult g;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) g.axis1.push_back(static_cast<double>(n));
    for (int rho = cfg.rho_min; rho <= cfg.rho_max; ++rho) {
        g.axis2.push_back(static_cast<double>(rho));
    }
    const std::size_t n_rho = g.axis2.size();
    for (std::size_t i = 0; i < g.axis1.size(); ++i) {
        g.cells.emplace_back(cells.begin() + static_cast<std::ptrdiff_t>(i * n_rho),
                             cells.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_rho));
        std::vector<bool> row(n_rho);
        for (std::size_t j = 0; j < n_rho; ++j) row[j] = flags[i * n_rho + j] != 0;
        g.flagged.push_back(std::move(row));
    }
    g.metric = metric;
    g.trials = cfg.trials;
    g.seed = cfg.seed;
    return g;
}

}  // namespace

std::pair<GridResult, GridResult> run_correction_heatmap(const HeatmapConfig& cfg) {
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) {
        throw std::invalid_argument("correction heatmap: need 1 <= n_min <= n_max");
    }
    if (cfg.rho_min < 1 || cfg.rho_max < cfg.rho_min) {
        throw std::invalid_argument("correction heatmap: need 1 <= rho_min <= rho_max");
    }
    if (cfg.trials < 1) throw std::invalid_argument("correction heatmap: trials must be >= 1");

    const int n_n = cfg.n_max - cfg.n_min + 1;
    const int n_rho = cfg.rho_max - cfg.rho_min + 1;
    std::vector<double> pos(static_cast<std::size_t>(n_n) * n_rho, 0.0);
    std::vector<double> neg(pos.size(), 0.0);
    std::vector<char> pos_flag(pos.size(), 0), neg_flag(pos.size(), 0);

    const bool par = cfg.parallel;
    const std::int64_t n_cells = static_cast<std::int64_t>(pos.size());
#pragma omp parallel for schedule(dynamic) if (par)
    for (std::int64_t ci = 0; ci < n_cells; ++ci) {
        const int n = cfg.n_min + static_cast<int>(ci) / n_rho;
        const int rho = cfg.rho_min + static_cast<int>(ci) % n_rho;
        const int d = 1 << n;
        const BindingModel model = make_model(ModelKind::HLB, d, cfg.mu);

        double pos_acc = 0.0, neg_acc = 0.0;
        int neg_count = 0;
        bool pos_bad = false, neg_bad = false;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            SeedSpec spec{cfg.seed};
            spec.label("correction")
                .label(static_cast<std::uint64_t>(n))
                .label(static_cast<std::uint64_t>(rho))
                .label(static_cast<std::uint64_t>(trial));
            Stream stream = derive_stream(spec);

            std::vector<HyperVector> xs, ys;
            xs.reserve(static_cast<std::size_t>(rho));
            ys.reserve(static_cast<std::size_t>(rho));
            std::vector<double> chi(static_cast<std::size_t>(d), 0.0);
            for (int j = 0; j < rho; ++j) {
                xs.push_back(sample(model, stream));
                ys.push_back(sample(model, stream));
                for (int k = 0; k < d; ++k) {
                    chi[static_cast<std::size_t>(k)] += xs.back()[static_cast<std::size_t>(k)] *
                                                        ys.back()[static_cast<std::size_t>(k)];
                }
            }
            const HyperVector xhat =
                div(HyperVector::unchecked(std::move(chi)), ys[0]);

            const double phi_pos = corrected_cosine(xhat, xs[0], rho);
            if (std::isfinite(phi_pos)) {
                pos_acc += phi_pos;
            } else {
                pos_bad = true;
            }

            if (rho >= 2) {
                if (cfg.negative_all_j) {
                    for (int j = 1; j < rho; ++j) {
                        const double v =
                            corrected_cosine(xhat, xs[static_cast<std::size_t>(j)], rho);
                        if (std::isfinite(v)) {
                            neg_acc += v;
                            ++neg_count;
                        } else {
                            neg_bad = true;
                        }
                    }
                } else {
                    const int j =
                        1 + static_cast<int>(stream.index(static_cast<std::uint64_t>(rho - 1)));
                    const double v = corrected_cosine(xhat, xs[static_cast<std::size_t>(j)], rho);
                    if (std::isfinite(v)) {
                        neg_acc += v;
                        ++neg_count;
                    } else {
                        neg_bad = true;
                    }
                }
            }
        }
        const std::size_t idx = static_cast<std::size_t>(ci);
        pos[idx] = pos_bad ? std::nan("") : pos_acc / cfg.trials;
        pos_flag[idx] = pos_bad ? 1 : 0;
        if (rho >= 2 && !neg_bad && neg_count > 0) {
            neg[idx] = neg_acc / neg_count;
        } else {
            // rho = 1 has no off-pair x_j; the cell is flagged rather than 0
            neg[idx] = std::nan("");
            neg_flag[idx] = 1;
        }
    }

    return {finish_grid(cfg, pos, pos_flag, "corrected_cosine_positive"),
            finish_grid(cfg, neg, neg_flag, "corrected_cosine_negative")};
}

NoiseReport noise_cell(int n, int rho, int trials, double mu, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("noise_cell: n must be >= 1");
    if (rho < 2) throw std::invalid_argument("noise_cell: rho must be >= 2");
    if (trials < 1) throw std::invalid_argument("noise_cell: trials must be >= 1");
    const int d = 1 << n;
    const BindingModel model = make_model(ModelKind::HLB, d, mu);

    NoiseReport report;
    report.n = n;
    report.rho = rho;
    report.trials = trials;
    double circ_acc = 0.0, proj_acc = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        SeedSpec spec{seed};
        spec.label("noise")
            .label(static_cast<std::uint64_t>(n))
            .label(static_cast<std::uint64_t>(rho))
            .label(static_cast<std::uint64_t>(trial));
        Stream stream = derive_stream(spec);
        std::vector<std::pair<HyperVector, HyperVector>> pairs;
        pairs.reserve(static_cast<std::size_t>(rho));
        for (int j = 0; j < rho; ++j) {
            HyperVector x = sample(model, stream);
            HyperVector y = sample(model, stream);
            pairs.emplace_back(std::move(x), std::move(y));
        }
        circ_acc += mean_abs(noise_circ(pairs, 0));
        proj_acc += mean_abs(noise_proj(pairs, 0));
    }
    report.mean_abs_eta_circ = circ_acc / trials;
    report.mean_abs_eta_proj = proj_acc / trials;
    return report;
}

std::pair<GridResult, GridResult> run_noise_heatmap(const HeatmapConfig& cfg) {
    if (cfg.rho_min < 2) {
        throw std::invalid_argument("noise heatmap: rho_min must be >= 2");
    }
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min || cfg.rho_max < cfg.rho_min) {
        throw std::invalid_argument("noise heatmap: bad axis ranges");
    }
    if (cfg.trials < 1) throw std::invalid_argument("noise heatmap: trials must be >= 1");

    const int n_rho = cfg.rho_max - cfg.rho_min + 1;
    const int n_n = cfg.n_max - cfg.n_min + 1;
    std::vector<double> circ(static_cast<std::size_t>(n_n) * n_rho, 0.0);
    std::vector<double> proj(circ.size(), 0.0);
    std::vector<char> circ_flag(circ.size(), 0), proj_flag(circ.size(), 0);

    const bool par = cfg.parallel;
    const std::int64_t n_cells = static_cast<std::int64_t>(circ.size());
#pragma omp parallel for schedule(dynamic) if (par)
    for (std::int64_t ci = 0; ci < n_cells; ++ci) {
        const int n = cfg.n_min + static_cast<int>(ci) / n_rho;
        const int rho = cfg.rho_min + static_cast<int>(ci) % n_rho;
        const NoiseReport r = noise_cell(n, rho, cfg.trials, cfg.mu, cfg.seed);
        const std::size_t idx = static_cast<std::size_t>(ci);
        if (std::isfinite(r.mean_abs_eta_circ)) {
            circ[idx] = std::log(r.mean_abs_eta_circ);
        } else {
            circ[idx] = std::nan("");
            circ_flag[idx] = 1;
        }
        if (std::isfinite(r.mean_abs_eta_proj)) {
            proj[idx] = std::log(r.mean_abs_eta_proj);
        } else {
            proj[idx] = std::nan("");
            proj_flag[idx] = 1;
        }
    }

    return {finish_grid(cfg, circ, circ_flag, "ln_mean_abs_eta_circ"),
            finish_grid(cfg, proj, proj_flag, "ln_mean_abs_eta_proj")};
}

namespace {

// Each trial grows one bundle pair by pair and reads the series off the
// partial sums, so the sweep costs rho_max pairs per trial instead of
// sum(rho). chi_rho's marginal distribution per rho is unchanged; only the
// across-rho correlation within a trial differs, which the per-rho mean and
// std do not see.
CurveResult run_curve(const CurveConfig& cfg, const std::string& metric) {
    if (cfg.rho_min < 1 || cfg.rho_max < cfg.rho_min) {
        throw std::invalid_argument("relation curve: need 1 <= rho_min <= rho_max");
    }
    if (cfg.trials < 1) throw std::invalid_argument("relation curve: trials must be >= 1");
    const BindingModel model = make_model(ModelKind::HLB, cfg.d, cfg.mu);
    const bool phi_mode = metric == "phi";
    const std::string stream_tag = phi_mode ? "relation_phi" : "relation_norm";

    const int n_rho = cfg.rho_max - cfg.rho_min + 1;
    // values[rho_idx * trials + trial]; each trial job fills its own column
    std::vector<double> values(static_cast<std::size_t>(n_rho) * cfg.trials, 0.0);

    const bool par = cfg.parallel;
    const std::int64_t n_trials = cfg.trials;
#pragma omp parallel for schedule(dynamic) if (par)
    for (std::int64_t trial = 0; trial < n_trials; ++trial) {
        SeedSpec spec{cfg.seed};
        spec.label(stream_tag).label(static_cast<std::uint64_t>(trial));
        Stream stream = derive_stream(spec);

        HyperVector x0, y0;
        std::vector<double> chi(static_cast<std::size_t>(cfg.d), 0.0);
        for (int j = 1; j <= cfg.rho_max; ++j) {
            HyperVector x = sample(model, stream);
            HyperVector y = sample(model, stream);
            for (int k = 0; k < cfg.d; ++k) {
                chi[static_cast<std::size_t>(k)] +=
                    x[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)];
            }
            if (j == 1) {
                x0 = std::move(x);
                y0 = std::move(y);
            }
            if (j < cfg.rho_min) continue;
            const std::size_t slot =
                static_cast<std::size_t>(j - cfg.rho_min) * cfg.trials +
                static_cast<std::size_t>(trial);
            if (phi_mode) {
                std::vector<double> xhat(static_cast<std::size_t>(cfg.d));
                for (int k = 0; k < cfg.d; ++k) {
                    xhat[static_cast<std::size_t>(k)] =
                        chi[static_cast<std::size_t>(k)] / y0[static_cast<std::size_t>(k)];
                }
                values[slot] = cosine(HyperVector::unchecked(std::move(xhat)), x0);
            } else {
                double acc = 0.0;
                for (int k = 0; k < cfg.d; ++k) {
                    acc += chi[static_cast<std::size_t>(k)] * chi[static_cast<std::size_t>(k)];
                }
                values[slot] = std::sqrt(acc);
            }
        }
    }

    std::vector<double> means(static_cast<std::size_t>(n_rho), 0.0);
    std::vector<double> stds(static_cast<std::size_t>(n_rho), 0.0);
    for (int ri = 0; ri < n_rho; ++ri) {
        std::vector<double> column(
            values.begin() + static_cast<std::ptrdiff_t>(ri) * cfg.trials,
            values.begin() + static_cast<std::ptrdiff_t>(ri + 1) * cfg.trials);
        means[static_cast<std::size_t>(ri)] = mean_of(column);
        stds[static_cast<std::size_t>(ri)] = std_of(column);
    }

    CurveResult out;
    out.metric = metric;
    out.trials = cfg.trials;
    out.seed = cfg.seed;
    for (int rho = cfg.rho_min; rho <= cfg.rho_max; ++rho) {
        out.rho.push_back(static_cast<double>(rho));
        out.theory.push_back(phi_mode ? theoretical_phi(rho)
                                      : norm_curve(rho, cfg.mu, cfg.d));
    }
    out.mean = std::move(means);
    out.std_dev = std::move(stds);
    return out;
}

}  // namespace

CurveResult run_relation_norm(const CurveConfig& cfg) { return run_curve(cfg, "norm"); }

CurveResult run_relation_phi(const CurveConfig& cfg) { return run_curve(cfg, "phi"); }

Table curve_to_table(const CurveResult& c) {
    Table t;
    t.columns = {"rho", "empirical_mean", "empirical_std", "theory", "metric"};
    for (std::size_t i = 0; i < c.rho.size(); ++i) {
        t.rows.push_back({Cell(static_cast<long long>(std::llround(c.rho[i]))),
                          Cell(c.mean[i]), Cell(c.std_dev[i]), Cell(c.theory[i]),
                          Cell(c.metric)});
    }
    return t;
}

XmlContext make_xml_context(const BindingModel& model, const Codebook& classes,
                            HyperVector p, HyperVector m) {
    if (classes.empty()) throw std::invalid_argument("xml: empty codebook");
    const std::size_t d = static_cast<std::size_t>(model.d);
    if (classes.dim() != model.d || p.dim() != d || m.dim() != d) {
        throw std::invalid_argument("xml: dimension mismatch");
    }
    std::vector<double> a(d, 0.0);
    for (std::size_t i = 0; i < classes.size(); ++i) accumulate(a, classes.vector_of(i));
    XmlContext ctx;
    ctx.model = model;
    ctx.classes = &classes;
    ctx.a = HyperVector::unchecked(std::move(a));
    ctx.p = std::move(p);
    ctx.m = std::move(m);
    return ctx;
}

namespace {

HyperVector present_sum(const XmlContext& ctx, const std::vector<int>& present) {
    const std::size_t d = ctx.a.dim();
    const std::size_t l = ctx.classes->size();
    std::vector<char> seen(l, 0);
    std::vector<double> acc(d, 0.0);
    for (int i : present) {
        if (i < 0 || static_cast<std::size_t>(i) >= l) {
            throw std::invalid_argument("xml: present index out of range");
        }
        if (seen[static_cast<std::size_t>(i)]) {
            throw std::invalid_argument("xml: present indices must form a set");
        }
        seen[static_cast<std::size_t>(i)] = 1;
        accumulate(acc, ctx.classes->vector_of(static_cast<std::size_t>(i)));
    }
    return HyperVector::unchecked(std::move(acc));
}

}  // namespace

HyperVector xml_encode(const XmlContext& ctx, const std::vector<int>& present) {
    const HyperVector sum_p = present_sum(ctx, present);
    // complement via the precomputed total: never iterates absent labels
    const HyperVector sum_m = sub(ctx.a, sum_p);
    return add(bind(ctx.model, sum_p, ctx.p), bind(ctx.model, sum_m, ctx.m));
}

HyperVector xml_encode_brute(const XmlContext& ctx, const std::vector<int>& present) {
    const HyperVector sum_p = present_sum(ctx, present);
    std::vector<char> in_present(ctx.classes->size(), 0);
    for (int i : present) in_present[static_cast<std::size_t>(i)] = 1;
    std::vector<double> acc(ctx.a.dim(), 0.0);
    for (std::size_t j = 0; j < ctx.classes->size(); ++j) {
        if (!in_present[j]) accumulate(acc, ctx.classes->vector_of(j));
    }
    const HyperVector sum_m = HyperVector::unchecked(std::move(acc));
    return add(bind(ctx.model, sum_p, ctx.p), bind(ctx.model, sum_m, ctx.m));
}

double xml_loss(const XmlContext& ctx, const HyperVector& s_hat,
                const std::vector<int>& present) {
    if (present.empty()) {
        throw std::domain_error("xml_loss: empty present set has no defined loss");
    }
    const HyperVector r_p = unbind(ctx.model, s_hat, ctx.p);
    double loss = 0.0;
    for (int i : present) {
        loss += 1.0 - cosine(r_p, ctx.classes->vector_of(static_cast<std::size_t>(i)));
    }
    const HyperVector r_m = unbind(ctx.model, s_hat, ctx.m);
    loss += cosine(r_m, present_sum(ctx, present));
    return loss;
}

HyperVector csps_mask(const BindingModel& model, const HyperVector& x, const HyperVector& s) {
    return bind(model, x, s);
}

HyperVector csps_unmask(const BindingModel& model, const HyperVector& y, const HyperVector& s) {
    return unbind(model, y, s);
}

Table grid_to_table(const GridResult& grid) {
    Table t;
    t.columns = {"n", "rho", "value", "metric"};
    for (std::size_t i = 0; i < grid.axis1.size(); ++i) {
        for (std::size_t j = 0; j < grid.axis2.size(); ++j) {
            t.rows.push_back({Cell(static_cast<long long>(std::llround(grid.axis1[i]))),
                              Cell(static_cast<long long>(std::llround(grid.axis2[j]))),
                              Cell(grid.cells[i][j]), Cell(grid.metric)});
        }
    }
    return t;
}

}  // namespace vsa
