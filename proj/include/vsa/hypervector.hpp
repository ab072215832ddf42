#pragma once

#include <cstddef>
#include <vector>

namespace vsa {

// Dense real hypervector, the atom of every binding algebra. The dimension is
// fixed at construction and components are 64-bit floats. The checked
// constructor rejects NaN/Inf; operations that can produce non-finite values
// (elementwise and spectral division) say so at their declaration and build
// their result through unchecked().
class HyperVector {
public:
    HyperVector() = default;

    // Throws std::invalid_argument on empty input or non-finite components.
    explicit HyperVector(std::vector<double> data);

    // Bypasses the finiteness scan. For internal results whose components are
    // finite by construction, and for division outputs where non-finite
    // values are part of the documented contract.
    static HyperVector unchecked(std::vector<double> data);

    std::size_t dim() const { return data_.size(); }
    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }
    const std::vector<double>& data() const { return data_; }

    std::vector<double>::const_iterator begin() const { return data_.begin(); }
    std::vector<double>::const_iterator end() const { return data_.end(); }

    bool operator==(const HyperVector& other) const = default;

private:
    std::vector<double> data_;
};

bool all_finite(const HyperVector& x);

// Both throw std::invalid_argument on dimension mismatch.
double dot(const HyperVector& a, const HyperVector& b);
double norm2(const HyperVector& a);

// cos(a,b) = <a,b> / (|a||b|). Throws std::domain_error when either norm is 0.
double cosine(const HyperVector& a, const HyperVector& b);

// phi' = phi * sqrt(rho). For rho = 1 this is the same call as cosine, so the
// two results are bitwise identical. Throws std::domain_error for rho < 1.
double corrected_cosine(const HyperVector& xhat, const HyperVector& x, int rho);

// Elementwise arithmetic. All throw std::invalid_argument on mismatch.
HyperVector add(const HyperVector& a, const HyperVector& b);
HyperVector sub(const HyperVector& a, const HyperVector& b);
HyperVector mul(const HyperVector& a, const HyperVector& b);
// Division propagates Inf/NaN when b has zero components.
HyperVector div(const HyperVector& a, const HyperVector& b);
HyperVector scale(const HyperVector& a, double c);

}  // namespace vsa
