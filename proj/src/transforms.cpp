#include "vsa/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace vsa {

bool is_power_of_two(std::size_t d) {
    return d >= 1 && (d & (d - 1)) == 0;
}

HyperVector fwht(const HyperVector& x) {
    const std::size_t d = x.dim();
    if (!is_power_of_two(d)) {
        throw std::domain_error("fwht: dimension must be a power of two");
    }
    std::vector<double> v(x.begin(), x.end());
    for (std::size_t h = 1; h < d; h <<= 1) {
        for (std::size_t i = 0; i < d; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = v[j];
                const double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
    return HyperVector::unchecked(std::move(v));
}

HyperVector fwht_dense_reference(const HyperVector& x) {
    const std::size_t d = x.dim();
    if (!is_power_of_two(d)) {
        throw std::domain_error("fwht_dense_reference: dimension must be a power of two");
    }
    // H_1 = [1], H_2n = [[H_n, H_n], [H_n, -H_n]].
    std::vector<double> h(d * d, 1.0);
    for (std::size_t n = 1; n < d; n <<= 1) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const double v = h[r * d + c];
                h[r * d + (c + n)] = v;
                h[(r + n) * d + c] = v;
                h[(r + n) * d + (c + n)] = -v;
            }
        }
    }
    std::vector<double> out(d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) acc += h[r * d + c] * x[c];
        out[r] = acc;
    }
    return HyperVector::unchecked(std::move(out));
}

namespace {

// In-place iterative radix-2 Cooley-Tukey. sign = -1 forward, +1 inverse.
void fft_pow2(std::vector<double>& re, std::vector<double>& im, double sign) {
    const std::size_t d = re.size();
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < d; ++i) {
        std::size_t bit = d >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::size_t len = 2; len <= d; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const double wr = std::cos(ang);
        const double wi = std::sin(ang);
        for (std::size_t i = 0; i < d; i += len) {
            double cr = 1.0, ci = 0.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::size_t a = i + j;
                const std::size_t b = i + j + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }
}

ComplexVector dft_naive(const HyperVector& x, double sign) {
    const std::size_t d = x.dim();
    ComplexVector out;
    out.re.assign(d, 0.0);
    out.im.assign(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        double sr = 0.0, si = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi *
                               static_cast<double>(j) * static_cast<double>(k) /
                               static_cast<double>(d);
            sr += x[j] * std::cos(ang);
            si += x[j] * std::sin(ang);
        }
        out.re[k] = sr;
        out.im[k] = si;
    }
    return out;
}

}  // namespace

ComplexVector dft(const HyperVector& x) {
    const std::size_t d = x.dim();
    if (is_power_of_two(d)) {
        ComplexVector X;
        X.re.assign(x.begin(), x.end());
        X.im.assign(d, 0.0);
        fft_pow2(X.re, X.im, -1.0);
        return X;
    }
    return dft_naive(x, -1.0);
}

HyperVector idft(const ComplexVector& X) {
    const std::size_t d = X.dim();
    if (d == 0 || X.im.size() != d) {
        throw std::invalid_argument("idft: malformed spectrum");
    }
    std::vector<double> re(X.re), im(X.im);
    if (is_power_of_two(d)) {
        fft_pow2(re, im, 1.0);
    } else {
        std::vector<double> or_(d, 0.0), oi(d, 0.0);
        for (std::size_t k = 0; k < d; ++k) {
            double sr = 0.0, si = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) *
                                   static_cast<double>(k) / static_cast<double>(d);
                const double c = std::cos(ang), s = std::sin(ang);
                sr += re[j] * c - im[j] * s;
                si += re[j] * s + im[j] * c;
            }
            or_[k] = sr;
            oi[k] = si;
        }
        re = std::move(or_);
        im = std::move(oi);
    }
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = re[i] / static_cast<double>(d);
    return HyperVector::unchecked(std::move(out));
}

ComplexVector complex_mul(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("complex_mul: dimension mismatch");
    ComplexVector out;
    out.re.resize(a.dim());
    out.im.resize(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.re[i] = a.re[i] * b.re[i] - a.im[i] * b.im[i];
        out.im[i] = a.re[i] * b.im[i] + a.im[i] * b.re[i];
    }
    return out;
}

ComplexVector complex_div(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("complex_div: dimension mismatch");
    ComplexVector out;
    out.re.resize(a.dim());
    out.im.resize(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double den = b.re[i] * b.re[i] + b.im[i] * b.im[i];
        out.re[i] = (a.re[i] * b.re[i] + a.im[i] * b.im[i]) / den;
        out.im[i] = (a.im[i] * b.re[i] - a.re[i] * b.im[i]) / den;
    }
    return out;
}

HyperVector circ_conv_naive(const HyperVector& x, const HyperVector& y) {
    const std::size_t d = x.dim();
    if (d != y.dim()) throw std::domain_error("circ_conv_naive: dimension mismatch");
    std::vector<double> out(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            acc += x[j] * y[(k + d - j) % d];
        }
        out[k] = acc;
    }
    return HyperVector::unchecked(std::move(out));
}

BlockDiagonalOperator::BlockDiagonalOperator(std::vector<double> block,
                                             std::size_t block_dim, double scale)
    : block_(std::move(block)), block_dim_(block_dim), scale_(scale) {
    if (block_.size() != block_dim_ * block_dim_) {
        throw std::invalid_argument("BlockDiagonalOperator: block size mismatch");
    }
}

HyperVector BlockDiagonalOperator::apply(const HyperVector& x) const {
    const std::size_t d = dim();
    if (x.dim() != d) throw std::invalid_argument("BlockDiagonalOperator: dimension mismatch");
    std::vector<double> out(d, 0.0);
    for (std::size_t blk = 0; blk < block_dim_; ++blk) {
        const std::size_t base = blk * block_dim_;
        for (std::size_t r = 0; r < block_dim_; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < block_dim_; ++c) {
                acc += block_[r * block_dim_ + c] * x[base + c];
            }
            out[base + r] = scale_ * acc;
        }
    }
    return HyperVector::unchecked(std::move(out));
}

HyperVector BlockDiagonalOperator::apply_transpose(const HyperVector& x) const {
    const std::size_t d = dim();
    if (x.dim() != d) throw std::invalid_argument("BlockDiagonalOperator: dimension mismatch");
    std::vector<double> out(d, 0.0);
    for (std::size_t blk = 0; blk < block_dim_; ++blk) {
        const std::size_t base = blk * block_dim_;
        for (std::size_t r = 0; r < block_dim_; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < block_dim_; ++c) {
                acc += block_[c * block_dim_ + r] * x[base + c];
            }
            out[base + r] = scale_ * acc;
        }
    }
    return HyperVector::unchecked(std::move(out));
}

BlockDiagonalOperator vtb_operator(const HyperVector& y) {
    const std::size_t d = y.dim();
    const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
    if (root * root != d) {
        throw std::domain_error("vtb_operator: dimension must be a perfect square");
    }
    std::vector<double> block(y.begin(), y.end());
    const double scale = std::pow(static_cast<double>(d), 0.25);
    return BlockDiagonalOperator(std::move(block), root, scale);
}

}  // namespace vsa
