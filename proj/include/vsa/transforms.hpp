#pragma once

#include <cstddef>
#include <vector>

#include "vsa/hypervector.hpp"

namespace vsa {

// Walsh-Hadamard transform for the unnormalized +-1 matrix H of the
// Sylvester recursion, computed in place by the radix-2 butterfly in
// Theta(d log d). H(Hx) = d*x, so the inverse is fwht followed by a 1/d
// scale. Throws std::domain_error unless d is a power of two.
HyperVector fwht(const HyperVector& x);

// O(d^2) dense reference: builds H by the recursion and multiplies row by
// row. Kept as the independent oracle for fwht; do not fold the two paths.
HyperVector fwht_dense_reference(const HyperVector& x);

bool is_power_of_two(std::size_t d);

struct ComplexVector {
    std::vector<double> re;
    std::vector<double> im;

    std::size_t dim() const { return re.size(); }
};

// Forward DFT, X_k = sum_j x_j e^{-2 pi i jk/d}. Radix-2 iterative FFT when d
// is a power of two, O(d^2) reference otherwise (any d >= 1 accepted).
ComplexVector dft(const HyperVector& x);

// Inverse DFT of a spectrum with conjugate symmetry; returns the real part.
HyperVector idft(const ComplexVector& X);

ComplexVector complex_mul(const ComplexVector& a, const ComplexVector& b);
// Spectral division; components with zero magnitude produce non-finite
// output, which is the documented HRR instability.
ComplexVector complex_div(const ComplexVector& a, const ComplexVector& b);

// z_k = sum_j x_j * y_{(k-j) mod d}. O(d^2), the oracle for the FFT path.
// Throws std::domain_error on dimension mismatch.
HyperVector circ_conv_naive(const HyperVector& x, const HyperVector& y);

// V_y without materializing the d x d matrix: one d' x d' block (d' = sqrt d)
// applied to each chunk of the input, times d^{1/4}. Apply cost Theta(d*d').
class BlockDiagonalOperator {
public:
    BlockDiagonalOperator(std::vector<double> block, std::size_t block_dim, double scale);

    HyperVector apply(const HyperVector& x) const;
    HyperVector apply_transpose(const HyperVector& x) const;

    std::size_t dim() const { return block_dim_ * block_dim_; }
    double scale() const { return scale_; }
    const std::vector<double>& block() const { return block_; }

private:
    std::vector<double> block_;  // row-major d' x d'
    std::size_t block_dim_;
    double scale_;
};

// Block = reshape(y, d', d') row-major, scale = d^{1/4}. Throws
// std::domain_error when dim(y) is not a perfect square.
BlockDiagonalOperator vtb_operator(const HyperVector& y);

}  // namespace vsa
