#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsa/hypervector.hpp"
#include "vsa/rng.hpp"

namespace vsa {

enum class ModelKind { HLB, HRR, VTB, MAP_C, MAP_B };

// Tagged descriptor of one algebra. mu parameterizes HLB's MiND init and is
// ignored by the other kinds. VTB needs a perfect-square d; the Hadamard
// oracle in the theory module needs a power of two, but the linear HLB form
// itself works for any d >= 1.
struct BindingModel {
    ModelKind kind;
    int d;
    double mu = 1.0;
};

// Validates and builds a descriptor; throws std::invalid_argument on a bad
// dimension or non-positive mu.
BindingModel make_model(ModelKind kind, int d, double mu = 1.0);

std::string model_name(ModelKind kind);
// Accepts hlb, hrr, vtb, map-c, map-b; throws std::invalid_argument otherwise.
ModelKind model_from_name(std::string_view name);

// A sum of rho bound pairs. rho_hint, when present, is that rho.
struct Composite {
    HyperVector vector;
    std::optional<int> rho_hint;
};

// Init column of the algebra table:
//   HLB   components N(-mu,1/d) or N(+mu,1/d) with equal probability
//   HRR   components N(0, 1/d)
//   VTB   N(0,1) then scaled to unit L2 norm
//   MAP-C components U(-1,1)
//   MAP-B components uniform on {-1,+1}
HyperVector sample(const BindingModel& model, Stream& stream);

// HLB/MAP: x .* y. HRR: idft(dft(x) .* dft(y)). VTB: V_y x.
HyperVector bind(const BindingModel& model, const HyperVector& x, const HyperVector& y);

// HLB: s ./ y (raw division; NaN/Inf propagate, and with strict=true any
// divisor component below 1e-8 in magnitude throws std::domain_error
// instead). MAP: s .* y. VTB: V_y^T s. HRR: spectral division, numerically
// unstable near zero spectral bins; that instability is documented, not
// patched.
HyperVector unbind(const BindingModel& model, const HyperVector& s, const HyperVector& y,
                   bool strict = false);

// chi = sum of bind(x_i, y_i) in list order. Throws std::domain_error on an
// empty list.
Composite bundle(const BindingModel& model,
                 const std::vector<std::pair<HyperVector, HyperVector>>& pairs);

// b_{t+1} = bind(b_t, x_t); returns [b_1 .. b_p].
std::vector<HyperVector> sequential_bind(const BindingModel& model, const HyperVector& b0,
                                         const std::vector<HyperVector>& xs);

}  // namespace vsa
