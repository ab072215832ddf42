#include "vsa/hypervector.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace vsa {

HyperVector::HyperVector(std::vector<double> data) : data_(std::move(data)) {
    if (data_.empty()) {
        throw std::invalid_argument("HyperVector: dimension must be >= 1");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("HyperVector: non-finite component");
        }
    }
}

HyperVector HyperVector::unchecked(std::vector<double> data) {
    HyperVector x;
    x.data_ = std::move(data);
    return x;
}

bool all_finite(const HyperVector& x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

namespace {

void require_same_dim(const HyperVector& a, const HyperVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch");
    }
}

}  // namespace

double dot(const HyperVector& a, const HyperVector& b) {
    require_same_dim(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(const HyperVector& a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return std::sqrt(acc);
}

double cosine(const HyperVector& a, const HyperVector& b) {
    require_same_dim(a, b);
    const double na = norm2(a);
    const double nb = norm2(b);
    if (na == 0.0 || nb == 0.0) {
        throw std::domain_error("cosine: zero-norm input");
    }
    return dot(a, b) / (na * nb);
}

double corrected_cosine(const HyperVector& xhat, const HyperVector& x, int rho) {
    if (rho < 1) {
        throw std::domain_error("corrected_cosine: rho must be >= 1");
    }
    const double phi = cosine(xhat, x);
    if (rho == 1) return phi;
    return phi * std::sqrt(static_cast<double>(rho));
}

HyperVector add(const HyperVector& a, const HyperVector& b) {
    require_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return HyperVector::unchecked(std::move(out));
}

HyperVector sub(const HyperVector& a, const HyperVector& b) {
    require_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return HyperVector::unchecked(std::move(out));
}

HyperVector mul(const HyperVector& a, const HyperVector& b) {
    require_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] * b[i];
    return HyperVector::unchecked(std::move(out));
}

HyperVector div(const HyperVector& a, const HyperVector& b) {
    require_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] / b[i];
    return HyperVector::unchecked(std::move(out));
}

HyperVector scale(const HyperVector& a, double c) {
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] * c;
    return HyperVector::unchecked(std::move(out));
}

}  // namespace vsa
