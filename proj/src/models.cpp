#include "vsa/models.hpp"

#include <cmath>
#include <stdexcept>

#include "vsa/transforms.hpp"

namespace vsa {

namespace {

bool is_perfect_square(int d) {
    const auto root = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(d))));
    return root * root == d;
}

}  // namespace

BindingModel make_model(ModelKind kind, int d, double mu) {
    if (d < 1) throw std::invalid_argument("make_model: dimension must be >= 1");
    if (kind == ModelKind::VTB && !is_perfect_square(d)) {
        throw std::invalid_argument("make_model: VTB requires a perfect-square dimension");
    }
    if (kind == ModelKind::HLB && (!std::isfinite(mu) || mu <= 0.0)) {
        throw std::invalid_argument("make_model: mu must be finite and > 0");
    }
    return BindingModel{kind, d, mu};
}

std::string model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::HLB: return "hlb";
        case ModelKind::HRR: return "hrr";
        case ModelKind::VTB: return "vtb";
        case ModelKind::MAP_C: return "map-c";
        case ModelKind::MAP_B: return "map-b";
    }
    throw std::invalid_argument("model_name: unknown kind");
}

ModelKind model_from_name(std::string_view name) {
    if (name == "hlb") return ModelKind::HLB;
    if (name == "hrr") return ModelKind::HRR;
    if (name == "vtb") return ModelKind::VTB;
    if (name == "map-c") return ModelKind::MAP_C;
    if (name == "map-b") return ModelKind::MAP_B;
    throw std::invalid_argument("model_from_name: unknown model '" + std::string(name) + "'");
}

HyperVector sample(const BindingModel& model, Stream& stream) {
    const std::size_t d = static_cast<std::size_t>(model.d);
    std::vector<double> v(d);
    switch (model.kind) {
        case ModelKind::HLB: {
            const double sd = 1.0 / std::sqrt(static_cast<double>(d));
            for (std::size_t i = 0; i < d; ++i) {
                v[i] = stream.sign() * model.mu + stream.normal() * sd;
            }
            break;
        }
        case ModelKind::HRR: {
            const double sd = 1.0 / std::sqrt(static_cast<double>(d));
            for (std::size_t i = 0; i < d; ++i) v[i] = stream.normal() * sd;
            break;
        }
        case ModelKind::VTB: {
            double sq = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                v[i] = stream.normal();
                sq += v[i] * v[i];
            }
            const double inv = 1.0 / std::sqrt(sq);
            for (std::size_t i = 0; i < d; ++i) v[i] *= inv;
            break;
        }
        case ModelKind::MAP_C:
            for (std::size_t i = 0; i < d; ++i) v[i] = stream.uniform_pm1();
            break;
        case ModelKind::MAP_B:
            for (std::size_t i = 0; i < d; ++i) v[i] = stream.sign();
            break;
    }
    return HyperVector::unchecked(std::move(v));
}

HyperVector bind(const BindingModel& model, const HyperVector& x, const HyperVector& y) {
    if (x.dim() != static_cast<std::size_t>(model.d) || y.dim() != x.dim()) {
        throw std::invalid_argument("bind: dimension mismatch");
    }
    switch (model.kind) {
        case ModelKind::HLB:
        case ModelKind::MAP_C:
        case ModelKind::MAP_B:
            return mul(x, y);
        case ModelKind::HRR:
            return idft(complex_mul(dft(x), dft(y)));
        case ModelKind::VTB:
            return vtb_operator(y).apply(x);
    }
    throw std::invalid_argument("bind: unknown kind");
}

HyperVector unbind(const BindingModel& model, const HyperVector& s, const HyperVector& y,
                   bool strict) {
    if (s.dim() != static_cast<std::size_t>(model.d) || y.dim() != s.dim()) {
        throw std::invalid_argument("unbind: dimension mismatch");
    }
    switch (model.kind) {
        case ModelKind::HLB:
            if (strict) {
                for (double v : y) {
                    if (std::fabs(v) < 1e-8) {
                        throw std::domain_error("unbind: divisor component below 1e-8");
                    }
                }
            }
            return div(s, y);
        case ModelKind::MAP_C:
        case ModelKind::MAP_B:
            return mul(s, y);
        case ModelKind::HRR:
            return idft(complex_div(dft(s), dft(y)));
        case ModelKind::VTB:
            return vtb_operator(y).apply_transpose(s);
    }
    throw std::invalid_argument("unbind: unknown kind");
}

Composite bundle(const BindingModel& model,
                 const std::vector<std::pair<HyperVector, HyperVector>>& pairs) {
    if (pairs.empty()) throw std::domain_error("bundle: empty pair list");
    HyperVector acc = bind(model, pairs[0].first, pairs[0].second);
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        acc = add(acc, bind(model, pairs[i].first, pairs[i].second));
    }
    return Composite{std::move(acc), static_cast<int>(pairs.size())};
}

std::vector<HyperVector> sequential_bind(const BindingModel& model, const HyperVector& b0,
                                         const std::vector<HyperVector>& xs) {
    std::vector<HyperVector> out;
    out.reserve(xs.size());
    HyperVector b = b0;
    for (const HyperVector& x : xs) {
        b = bind(model, b, x);
        out.push_back(b);
    }
    return out;
}

}  // namespace vsa
