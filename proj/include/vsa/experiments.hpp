#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vsa/codebook.hpp"
#include "vsa/io.hpp"
#include "vsa/models.hpp"
#include "vsa/theory.hpp"

namespace vsa {

// Every run here is a pure function of (config, seed): rerunning produces
// byte-identical tables under any worker count, because each trial draws from
// its own derived stream and aggregation reads preallocated slots in a fixed
// order. parallel=false forces the serial reference path; results match the
// parallel path bitwise.

struct RetrievalConfig {
    int pool_size = 1000;
    std::vector<int> dims = {16, 64, 256, 1024};
    int rho_min = 1;
    int rho_max = 25;
    int trials = 50;
    std::vector<ModelKind> models = {ModelKind::HLB, ModelKind::HRR, ModelKind::VTB,
                                     ModelKind::MAP_C, ModelKind::MAP_B};
    Metric metric = Metric::Cosine;
    double mu = 1.0;
    std::uint64_t seed = 7;
    bool parallel = true;
};

enum class SequentialMode { Random, Auto };

std::string sequential_mode_name(SequentialMode m);

struct SequentialConfig {
    std::vector<SequentialMode> modes = {SequentialMode::Random, SequentialMode::Auto};
    int depth = 50;
    int d = 1024;
    int trials = 10;
    std::vector<ModelKind> models = {ModelKind::HLB, ModelKind::HRR, ModelKind::VTB,
                                     ModelKind::MAP_C, ModelKind::MAP_B};
    double mu = 1.0;
    std::uint64_t seed = 7;
    bool parallel = true;
};

// rows: the per-trial long table. summary: per-cell mean/std aggregation.
// auc: area-under-accuracy-curve per (model, d); retrieval only.
struct ExperimentResult {
    Table rows;
    Table summary;
    Table auc;
};

// Pool of pool_size symbols per (model, d, trial); for each rho in range,
// rho index pairs are drawn with replacement, the partners are bound under
// the query keys and bundled, and each query key q is scored: unbind the
// bundle by q, then the retrieval counts as correct iff the true partner
// attains the maximum metric value over the whole pool (ties keep it
// correct). One row per (model, d, rho, trial) holding the accuracy.
ExperimentResult run_retrieval(const RetrievalConfig& cfg);

// Trapezoidal mean of accuracy over [rho_min, rho_max]: integral divided by
// the span. Throws std::invalid_argument on fewer than 2 points, length
// mismatch, or non-ascending rho.
double compute_auc(const std::vector<double>& rhos, const std::vector<double>& accuracies);

// Chain b_{t+1} = bind(b_t, x_t) for depth rounds; random mode draws a fresh
// x_t each round, auto mode reuses one x for all rounds. Records the one-step
// recovery r_t = unbind(b_{t+1}, x_t): cosine(r_t, b_t) and |r_t|_2.
ExperimentResult run_sequential(const SequentialConfig& cfg);

struct HeatmapConfig {
    int n_min = 1;   // d = 2^n
    int n_max = 10;
    int rho_min = 1;
    int rho_max = 50;
    int trials = 100;
    double mu = 1.0;
    std::uint64_t seed = 7;
    // Correction map negative case: false picks one random j != i per trial,
    // true averages over every j != i.
    bool negative_all_j = false;
    bool parallel = true;
};

// HLB bundles of rho pairs at d = 2^n; retrieve pair 0 and correct by
// sqrt(rho). First grid: mean corrected cosine against the true x_0.
// Second: against a bundled x_j, j != 0 (flagged NaN at rho = 1, where no
// other pair exists).
std::pair<GridResult, GridResult> run_correction_heatmap(const HeatmapConfig& cfg);

// Mean absolute component of the two noise terms per (n, rho) cell, reported
// as ln(mean |eta|). eta_circ divides by Hadamard-domain components and can
// overflow at large n; such cells carry NaN and a flag. Uses rho >= 2.
std::pair<GridResult, GridResult> run_noise_heatmap(const HeatmapConfig& cfg);

// One (n, rho) cell of the noise sweep; the grid above is this per cell.
NoiseReport noise_cell(int n, int rho, int trials, double mu, std::uint64_t seed);

struct CurveConfig {
    int d = 1024;
    double mu = 0.5;
    int rho_min = 1;
    int rho_max = 200;
    int trials = 100;
    std::uint64_t seed = 7;
    bool parallel = true;
};

struct CurveResult {
    std::vector<double> rho;
    std::vector<double> mean;
    std::vector<double> std_dev;
    std::vector<double> theory;
    std::string metric;  // "norm" or "phi"
    int trials = 0;
    std::uint64_t seed = 0;
};

// |chi_rho|_2 against mu^2 sqrt(rho d). Defaults mirror the canonical run:
// mu = 0.5, d = 1024, rho = 1..200.
CurveResult run_relation_norm(const CurveConfig& cfg);

// Raw cosine between x_0 and its retrieval from a rho-bundle, against
// 1/sqrt(rho). Canonical run: d = 512, mu = 1, rho = 1..50, 100 trials.
CurveResult run_relation_phi(const CurveConfig& cfg);

Table curve_to_table(const CurveResult& c);

// Multi-label encoding: with a = sum of all class vectors precomputed, a
// present-set s binds the present sum under p and the complement under m
// without ever iterating absent labels.
struct XmlContext {
    BindingModel model;
    const Codebook* classes = nullptr;
    HyperVector a;  // sum over every class vector
    HyperVector p;
    HyperVector m;
};

// Throws std::invalid_argument on an empty codebook or dimension mismatch.
XmlContext make_xml_context(const BindingModel& model, const Codebook& classes,
                            HyperVector p, HyperVector m);

// s = bind(sum_{present} c_i, p) + bind(a - sum_{present} c_i, m), Theta(dK).
HyperVector xml_encode(const XmlContext& ctx, const std::vector<int>& present);

// O(L) reference that sums the absent classes explicitly. Oracle for the
// complement identity; keep independent of xml_encode.
HyperVector xml_encode_brute(const XmlContext& ctx, const std::vector<int>& present);

// sum_{present}(1 - cos(unbind(s_hat, p), c_i)) + cos(unbind(s_hat, m),
// sum_{present} c_i). Throws std::domain_error for an empty present set or a
// zero-norm unbind output.
double xml_loss(const XmlContext& ctx, const HyperVector& s_hat,
                const std::vector<int>& present);

// One-time-pad style masking: mask = bind(x, s), unmask = unbind(y, s).
HyperVector csps_mask(const BindingModel& model, const HyperVector& x, const HyperVector& s);
HyperVector csps_unmask(const BindingModel& model, const HyperVector& y, const HyperVector& s);

// Schema n,rho,value,metric; one row per cell, NaN for flagged cells.
Table grid_to_table(const GridResult& grid);

}  // namespace vsa
