#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vsa/hypervector.hpp"
#include "vsa/models.hpp"

namespace vsa {

// Hadamard-domain machinery. These routes exist to check the linear HLB form
// against the transform derivation it came from, so they must stay
// independent of the elementwise implementations in models.

// B(x,y) = (1/d) H(Hx .* Hy). Power-of-two d only.
HyperVector hadamard_bind(const HyperVector& x, const HyperVector& y);

// y-dagger with H(y-dagger) = 1 ./ Hy, i.e. (1/d) H(1 ./ Hy). Throws
// std::domain_error when any component of Hy is zero.
HyperVector hadamard_inverse_vector(const HyperVector& y);

// pi(x) = (1/d) H x. fwht is its inverse: pi(fwht(x)) = x.
HyperVector projection(const HyperVector& x);

// Retrieves pair i from the bundle along both routes:
//   linear    (sum_j x_j .* y_j) ./ y_i
//   transform project the inputs, bind with hadamard_bind, unbind with the
//             projected query's hadamard_inverse_vector, reverse-project
// The derivation says these agree exactly; the pair is returned for tests to
// compare.
std::pair<HyperVector, HyperVector> pipeline_equivalence_check(
    const std::vector<std::pair<HyperVector, HyperVector>>& pairs, std::size_t i);

// Retrieval noise without projection:
// eta_circ_i = (1/d) H((1 ./ Hy_i) .* sum_{j != i} (Hx_j .* Hy_j)).
// Zero vector when rho = 1.
HyperVector noise_circ(const std::vector<std::pair<HyperVector, HyperVector>>& pairs,
                       std::size_t i);

// Retrieval noise with projection: eta_proj_i = (sum_{j != i} x_j .* y_j) ./ y_i.
HyperVector noise_proj(const std::vector<std::pair<HyperVector, HyperVector>>& pairs,
                       std::size_t i);

struct NoiseReport {
    int n = 0;  // log2 dimension
    int rho = 0;
    double mean_abs_eta_circ = 0.0;
    double mean_abs_eta_proj = 0.0;
    int trials = 0;
};

// Rectangular sweep result. cells[i][j] pairs axis1[i] with axis2[j];
// flagged[i][j] marks cells whose evaluation overflowed (value then NaN).
struct GridResult {
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<std::vector<double>> cells;
    std::vector<std::vector<bool>> flagged;
    std::string metric;
    int trials = 0;
    std::uint64_t seed = 0;
};

// round(|chi|^2 / (mu^4 d)), clamped to >= 1.
int estimate_rho(const Composite& chi, double mu, int d);

// Curve generators: 1/sqrt(rho) and mu^2 sqrt(rho d).
double theoretical_phi(int rho);
double norm_curve(int rho, double mu, int d);

}  // namespace vsa
