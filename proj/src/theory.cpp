#include "vsa/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "vsa/transforms.hpp"

namespace vsa {

namespace {

void check_pairs(const std::vector<std::pair<HyperVector, HyperVector>>& pairs,
                 std::size_t i) {
    if (pairs.empty()) throw std::invalid_argument("pair list is empty");
    if (i >= pairs.size()) throw std::invalid_argument("pair index out of range");
    const std::size_t d = pairs[0].first.dim();
    for (const auto& [x, y] : pairs) {
        if (x.dim() != d || y.dim() != d) {
            throw std::invalid_argument("pairs disagree on dimension");
        }
    }
}

}  // namespace

HyperVector hadamard_bind(const HyperVector& x, const HyperVector& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("hadamard_bind: dimension mismatch");
    const HyperVector hx = fwht(x);
    const HyperVector hy = fwht(y);
    HyperVector prod = mul(hx, hy);
    return scale(fwht(prod), 1.0 / static_cast<double>(x.dim()));
}

HyperVector hadamard_inverse_vector(const HyperVector& y) {
    const HyperVector hy = fwht(y);
    std::vector<double> recip(hy.dim());
    for (std::size_t i = 0; i < hy.dim(); ++i) {
        if (hy[i] == 0.0) {
            throw std::domain_error("hadamard_inverse_vector: zero transform component");
        }
        recip[i] = 1.0 / hy[i];
    }
    return scale(fwht(HyperVector::unchecked(std::move(recip))),
                 1.0 / static_cast<double>(y.dim()));
}

HyperVector projection(const HyperVector& x) {
    return scale(fwht(x), 1.0 / static_cast<double>(x.dim()));
}

std::pair<HyperVector, HyperVector> pipeline_equivalence_check(
    const std::vector<std::pair<HyperVector, HyperVector>>& pairs, std::size_t i) {
    check_pairs(pairs, i);
    const std::size_t d = pairs[0].first.dim();

    // Linear route: retrieve from the elementwise bundle by division.
    std::vector<double> acc(d, 0.0);
    for (const auto& [x, y] : pairs) {
        for (std::size_t k = 0; k < d; ++k) acc[k] += x[k] * y[k];
    }
    const HyperVector linear = div(HyperVector::unchecked(std::move(acc)), pairs[i].second);

    // Transform route: everything through the Hadamard domain.
    HyperVector bundle_t;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const HyperVector bound =
            hadamard_bind(projection(pairs[j].first), projection(pairs[j].second));
        bundle_t = (j == 0) ? bound : add(bundle_t, bound);
    }
    const HyperVector key_dagger = hadamard_inverse_vector(projection(pairs[i].second));
    const HyperVector transform = fwht(hadamard_bind(bundle_t, key_dagger));

    return {linear, transform};
}

HyperVector noise_circ(const std::vector<std::pair<HyperVector, HyperVector>>& pairs,
                       std::size_t i) {
    check_pairs(pairs, i);
    const std::size_t d = pairs[0].first.dim();
    std::vector<double> cross(d, 0.0);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (j == i) continue;
        const HyperVector hx = fwht(pairs[j].first);
        const HyperVector hy = fwht(pairs[j].second);
        for (std::size_t k = 0; k < d; ++k) cross[k] += hx[k] * hy[k];
    }
    const HyperVector hyi = fwht(pairs[i].second);
    // 1/Hy_i can overflow to Inf near zero components; callers flag that.
    for (std::size_t k = 0; k < d; ++k) cross[k] /= hyi[k];
    return scale(fwht(HyperVector::unchecked(std::move(cross))),
                 1.0 / static_cast<double>(d));
}

HyperVector noise_proj(const std::vector<std::pair<HyperVector, HyperVector>>& pairs,
                       std::size_t i) {
    check_pairs(pairs, i);
    const std::size_t d = pairs[0].first.dim();
    std::vector<double> cross(d, 0.0);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (j == i) continue;
        for (std::size_t k = 0; k < d; ++k) cross[k] += pairs[j].first[k] * pairs[j].second[k];
    }
    return div(HyperVector::unchecked(std::move(cross)), pairs[i].second);
}

int estimate_rho(const Composite& chi, double mu, int d) {
    if (mu <= 0.0) throw std::invalid_argument("estimate_rho: mu must be positive");
    if (d < 1) throw std::invalid_argument("estimate_rho: d must be >= 1");
    const double n = norm2(chi.vector);
    const double est = (n * n) / (mu * mu * mu * mu * static_cast<double>(d));
    const long r = std::lround(est);
    return r < 1 ? 1 : static_cast<int>(r);
}

double theoretical_phi(int rho) {
    if (rho < 1) throw std::invalid_argument("theoretical_phi: rho must be >= 1");
    return 1.0 / std::sqrt(static_cast<double>(rho));
}

double norm_curve(int rho, double mu, int d) {
    if (rho < 1) throw std::invalid_argument("norm_curve: rho must be >= 1");
    return mu * mu * std::sqrt(static_cast<double>(rho) * static_cast<double>(d));
}

}  // namespace vsa
