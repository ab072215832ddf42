#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vsa/hypervector.hpp"
#include "vsa/models.hpp"
#include "vsa/rng.hpp"
#include "vsa/transforms.hpp"

using namespace vsa;

namespace {

HyperVector hv(std::vector<double> v) { return HyperVector(std::move(v)); }

double rel_l2_error(const HyperVector& got, const HyperVector& want) {
    return norm2(sub(got, want)) / norm2(want);
}

HyperVector ones(std::size_t d) { return hv(std::vector<double>(d, 1.0)); }

HyperVector impulse(std::size_t d) {
    std::vector<double> v(d, 0.0);
    v[0] = 1.0;
    return hv(v);
}

}  // namespace

TEST_CASE("hlb sampling statistics") {
    // Component mean 0, mean |component| mu, norm sqrt(mu^2 d). With
    // Var(x_i) = mu^2 + 1/d the 3 sigma guards below are wide but honest.
    const int d = 4096;
    const double mu = 1.0;
    const BindingModel m = make_model(ModelKind::HLB, d, mu);
    Stream s = derive_stream(SeedSpec{41}.label("hlb-stats"));
    const HyperVector x = sample(m, s);
    double sum = 0.0, sum_abs = 0.0;
    for (double v : x) {
        sum += v;
        sum_abs += std::fabs(v);
    }
    const double sd_component = std::sqrt(mu * mu + 1.0 / d);
    CHECK(std::fabs(sum / d) <= 3.0 * sd_component / std::sqrt(double(d)));
    // |x_i| is mu + noise of scale 1/sqrt(d) per component
    CHECK(std::fabs(sum_abs / d - mu) <= 3.0 / std::sqrt(double(d) * d));
    CHECK(std::fabs(norm2(x) / std::sqrt(mu * mu * d) - 1.0) <= 0.02);
}

TEST_CASE("vtb samples are unit norm") {
    for (int d : {16, 64, 1024}) {
        const BindingModel m = make_model(ModelKind::VTB, d);
        Stream s = derive_stream(SeedSpec{42}.label("vtb-unit").label(std::uint64_t(d)));
        for (int rep = 0; rep < 5; ++rep) {
            CHECK(std::fabs(norm2(sample(m, s)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("map-b samples are bipolar") {
    const BindingModel m = make_model(ModelKind::MAP_B, 256);
    Stream s = derive_stream(SeedSpec{43}.label("mapb"));
    const HyperVector x = sample(m, s);
    for (double v : x) CHECK((v == 1.0 || v == -1.0));
}

TEST_CASE("map-c samples stay in the open unit interval") {
    const BindingModel m = make_model(ModelKind::MAP_C, 4096);
    Stream s = derive_stream(SeedSpec{44}.label("mapc"));
    const HyperVector x = sample(m, s);
    double sum = 0.0;
    for (double v : x) {
        CHECK(v >= -1.0);
        CHECK(v < 1.0);
        sum += v;
    }
    // U(-1,1) mean 0 with sd 1/sqrt(3d)
    CHECK(std::fabs(sum / 4096) <= 3.0 / std::sqrt(3.0 * 4096));
}

TEST_CASE("hrr samples match N(0,1/d) scale") {
    const int d = 4096;
    const BindingModel m = make_model(ModelKind::HRR, d);
    Stream s = derive_stream(SeedSpec{45}.label("hrr"));
    const HyperVector x = sample(m, s);
    // E||x||_2 = 1 with ~2% concentration at this d
    CHECK(std::fabs(norm2(x) - 1.0) <= 0.05);
}

TEST_CASE("bind identities") {
    Stream s = derive_stream(SeedSpec{46}.label("bind-id"));
    SUBCASE("hlb binding with ones is the identity") {
        const BindingModel m = make_model(ModelKind::HLB, 64);
        const HyperVector x = sample(m, s);
        CHECK(bind(m, x, ones(64)).data() == x.data());
    }
    SUBCASE("hrr binding with the impulse is the identity") {
        const BindingModel m = make_model(ModelKind::HRR, 64);
        const HyperVector x = sample(m, s);
        CHECK(rel_l2_error(bind(m, x, impulse(64)), x) <= 1e-10);
    }
    SUBCASE("map-b self-binding gives all ones") {
        const BindingModel m = make_model(ModelKind::MAP_B, 64);
        const HyperVector x = sample(m, s);
        CHECK(bind(m, x, x).data() == ones(64).data());
    }
}

TEST_CASE("bind symmetry and vtb exemption") {
    Stream s = derive_stream(SeedSpec{47}.label("sym"));
    for (ModelKind k : {ModelKind::HLB, ModelKind::HRR, ModelKind::MAP_C, ModelKind::MAP_B}) {
        const BindingModel m = make_model(k, 64);
        const HyperVector x = sample(m, s);
        const HyperVector y = sample(m, s);
        CHECK(rel_l2_error(bind(m, x, y), bind(m, y, x)) <= 1e-10);
    }
    const BindingModel vtb = make_model(ModelKind::VTB, 64);
    const HyperVector x = sample(vtb, s);
    const HyperVector y = sample(vtb, s);
    CHECK(rel_l2_error(bind(vtb, x, y), bind(vtb, y, x)) > 1e-3);
}

TEST_CASE("bind distributes over addition in the second argument") {
    Stream s = derive_stream(SeedSpec{48}.label("distrib"));
    for (ModelKind k : {ModelKind::HLB, ModelKind::HRR, ModelKind::VTB, ModelKind::MAP_C,
                        ModelKind::MAP_B}) {
        const BindingModel m = make_model(k, 64);
        const HyperVector x = sample(m, s);
        const HyperVector y = sample(m, s);
        const HyperVector z = sample(m, s);
        const HyperVector lhs = bind(m, x, add(y, z));
        const HyperVector rhs = add(bind(m, x, y), bind(m, x, z));
        CHECK(norm2(sub(lhs, rhs)) <= 1e-12 * (norm2(lhs) + norm2(rhs) + 1.0));
    }
}

TEST_CASE("hlb exact inverse at rho 1") {
    for (int d : {256, 1024, 4096}) {
        for (double mu : {0.5, 1.0}) {
            const BindingModel m = make_model(ModelKind::HLB, d, mu);
            Stream s = derive_stream(
                SeedSpec{49}.label("inv").label(std::uint64_t(d)).label(mu == 0.5 ? "h" : "w"));
            const HyperVector x = sample(m, s);
            const HyperVector y = sample(m, s);
            CHECK(rel_l2_error(unbind(m, bind(m, x, y), y), x) <= 1e-10);
        }
    }
}

TEST_CASE("map-b unbind is exact, map-c approximate") {
    Stream s = derive_stream(SeedSpec{50}.label("map-unbind"));
    SUBCASE("map-b recovers bitwise") {
        const BindingModel m = make_model(ModelKind::MAP_B, 256);
        const HyperVector x = sample(m, s);
        const HyperVector y = sample(m, s);
        CHECK(unbind(m, bind(m, x, y), y).data() == x.data());
    }
    SUBCASE("map-c is x*y*y with positive expected cosine") {
        const BindingModel m = make_model(ModelKind::MAP_C, 1024);
        double acc = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const HyperVector x = sample(m, s);
            const HyperVector y = sample(m, s);
            const HyperVector got = unbind(m, bind(m, x, y), y);
            CHECK(got.data() == mul(mul(x, y), y).data());
            CHECK(rel_l2_error(got, x) > 1e-3);  // not an exact inverse
            acc += cosine(got, x);
        }
        // E[x_i^2 y_i^2] / sqrt(E[x^2] E[x^2 y^4]) = (1/3)/sqrt((1/3)(1/5)) = sqrt(5)/3
        CHECK(acc / 100.0 > 0.5);
        CHECK(std::fabs(acc / 100.0 - std::sqrt(5.0) / 3.0) < 0.05);
    }
}

TEST_CASE("hrr bind agrees with naive circular convolution") {
    for (int d : {16, 64, 256}) {
        const BindingModel m = make_model(ModelKind::HRR, d);
        Stream s = derive_stream(SeedSpec{51}.label("hrr-conv").label(std::uint64_t(d)));
        const HyperVector x = sample(m, s);
        const HyperVector y = sample(m, s);
        const HyperVector fast = bind(m, x, y);
        const HyperVector slow = circ_conv_naive(x, y);
        CHECK(norm2(sub(fast, slow)) <= 1e-9 * norm2(slow));
    }
}

TEST_CASE("hrr unbind inverts bind away from spectral zeros") {
    const BindingModel m = make_model(ModelKind::HRR, 512);
    Stream s = derive_stream(SeedSpec{52}.label("hrr-unbind"));
    const HyperVector x = sample(m, s);
    const HyperVector y = sample(m, s);
    // exact spectral division; random spectra sit away from zero with
    // overwhelming probability at this d, so recovery is near machine level
    CHECK(rel_l2_error(unbind(m, bind(m, x, y), y), x) <= 1e-6);
}

TEST_CASE("vtb unbind is the transpose apply") {
    const BindingModel m = make_model(ModelKind::VTB, 1024);
    Stream s = derive_stream(SeedSpec{53}.label("vtb-unbind"));
    const HyperVector x = sample(m, s);
    const HyperVector y = sample(m, s);
    const BlockDiagonalOperator op = vtb_operator(y);
    CHECK(unbind(m, bind(m, x, y), y).data() == op.apply_transpose(op.apply(x)).data());
}

TEST_CASE("hlb strict unbind rejects tiny divisor components") {
    const BindingModel m = make_model(ModelKind::HLB, 4);
    const HyperVector s_vec = hv({1, 2, 3, 4});
    const HyperVector y_ok = hv({0.5, -0.5, 1, 2});
    const HyperVector y_bad = hv({0.5, 1e-9, 1, 2});
    CHECK(all_finite(unbind(m, s_vec, y_ok, true)));
    CHECK_THROWS_AS(unbind(m, s_vec, y_bad, true), std::domain_error);
    // non-strict raw division propagates Inf instead
    const HyperVector raw = unbind(m, s_vec, hv({0.5, 0.0, 1, 2}), false);
    CHECK(std::isinf(raw[1]));
}

TEST_CASE("bundle") {
    const BindingModel m = make_model(ModelKind::HLB, 64);
    Stream s = derive_stream(SeedSpec{54}.label("bundle"));
    std::vector<std::pair<HyperVector, HyperVector>> pairs;
    for (int i = 0; i < 3; ++i) pairs.emplace_back(sample(m, s), sample(m, s));
    SUBCASE("single pair reduces to bind with rho hint 1") {
        const Composite c = bundle(m, {pairs[0]});
        REQUIRE(c.rho_hint.has_value());
        CHECK(*c.rho_hint == 1);
        CHECK(c.vector.data() == bind(m, pairs[0].first, pairs[0].second).data());
    }
    SUBCASE("rho 2 unbind splits into signal plus crosstalk") {
        const Composite c = bundle(m, {pairs[0], pairs[1]});
        const HyperVector got = unbind(m, c.vector, pairs[0].second);
        const HyperVector want =
            add(pairs[0].first,
                div(mul(pairs[1].first, pairs[1].second), pairs[0].second));
        CHECK(norm2(sub(got, want)) <= 1e-12 * norm2(want));
    }
    SUBCASE("order invariance") {
        const Composite fwd = bundle(m, pairs);
        const Composite rev = bundle(m, {pairs[2], pairs[1], pairs[0]});
        CHECK(norm2(sub(fwd.vector, rev.vector)) <= 1e-12 * norm2(fwd.vector));
        CHECK(*fwd.rho_hint == 3);
    }
    CHECK_THROWS_AS(bundle(m, {}), std::domain_error);
}

TEST_CASE("sequential bind keeps hlb similarity and magnitude stable") {
    const BindingModel m = make_model(ModelKind::HLB, 1024, 1.0);
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        Stream s = derive_stream(SeedSpec{31}.label("seq").label(trial));
        const HyperVector b0 = sample(m, s);
        std::vector<HyperVector> xs;
        for (int t = 0; t < 50; ++t) xs.push_back(sample(m, s));
        const auto bs = sequential_bind(m, b0, xs);
        REQUIRE(bs.size() == 50);
        const HyperVector* prev = &b0;
        for (std::size_t t = 0; t < bs.size(); ++t) {
            // one-step readback: unbinding the last factor recovers b_t exactly
            CHECK(std::fabs(cosine(unbind(m, bs[t], xs[t]), *prev) - 1.0) <= 1e-9);
            // norm stays within 5% of sqrt(d); measured worst over these
            // seeds is 2.74%
            CHECK(std::fabs(norm2(bs[t]) / 32.0 - 1.0) <= 0.05);
            prev = &bs[t];
        }
    }
}

TEST_CASE("map-b auto binding recovers exactly every even step") {
    const BindingModel m = make_model(ModelKind::MAP_B, 256);
    Stream s = derive_stream(SeedSpec{55}.label("auto"));
    const HyperVector b0 = sample(m, s);
    const HyperVector x = sample(m, s);
    const std::vector<HyperVector> xs(20, x);
    const auto bs = sequential_bind(m, b0, xs);
    for (std::size_t t = 1; t < bs.size(); t += 2) {
        // bs[t] is b_{t+1}; even subscripts are b0 * (x*x)^k = b0
        CHECK(bs[t].data() == b0.data());
    }
}

TEST_CASE("hlb retrieval from a rho 25 bundle stays accurate") {
    // Wide pool, deep bundle: cleanup by corrected cosine still lands on the
    // right partner nearly always at d=1024.
    const int d = 1024, n_pool = 1000, rho = 25, trials = 10;
    const BindingModel m = make_model(ModelKind::HLB, d, 1.0);
    int correct = 0, total = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Stream s = derive_stream(SeedSpec{56}.label("retr").label(trial));
        std::vector<HyperVector> pool;
        pool.reserve(n_pool);
        for (int i = 0; i < n_pool; ++i) pool.push_back(sample(m, s));
        std::vector<std::size_t> left(rho), right(rho);
        std::vector<std::pair<HyperVector, HyperVector>> pairs;
        for (int i = 0; i < rho; ++i) {
            left[i] = s.index(n_pool);
            right[i] = s.index(n_pool);
            pairs.emplace_back(pool[left[i]], pool[right[i]]);
        }
        const Composite chi = bundle(m, pairs);
        for (int i = 0; i < rho; ++i) {
            const HyperVector xhat = unbind(m, chi.vector, pool[right[i]]);
            double best = -1e300;
            std::size_t best_idx = 0;
            for (std::size_t p = 0; p < pool.size(); ++p) {
                const double c = cosine(xhat, pool[p]);
                if (c > best) {
                    best = c;
                    best_idx = p;
                }
            }
            ++total;
            if (best_idx == left[i]) ++correct;
        }
    }
    CHECK(double(correct) / double(total) >= 0.95);
}
