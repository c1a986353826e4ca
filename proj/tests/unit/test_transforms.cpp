#include <doctest.h>

#include "ncl/builders.hpp"
#include "ncl/generators.hpp"
#include "ncl/transforms.hpp"

using namespace ncl;

namespace {

const Field kF;

// Checks every bundle contract against the expanded source.
void check_bundle(const Circuit& c, GateId target, const WeightVector& w) {
    const auto bundle = baur_strassen(c, target, w);
    const auto f = expand(c, target);
    REQUIRE(bundle.outputs.size() == c.nvars());
    std::vector<GateId> ids;
    for (const auto& [v, g] : bundle.outputs) ids.push_back(g);
    expand_each(bundle.circuit, ids, [&](std::size_t k, const NCPolynomial& d) {
        const Var v = static_cast<Var>(k + 1);
        CHECK(d == partial_first(f, v));
        if (!d.is_zero()) {
            const auto wd = weight_of(d, w);
            const auto wf = weight_of(f, w);
            CHECK(wd.kind == Weight::Kind::homogeneous);
            CHECK(wd.value + w[v] == wf.value);
        }
    });
    const auto src = metrics(c);
    const auto out = metrics(bundle.circuit);
    CHECK(bundle.provenance.size == src.size);
    CHECK(bundle.provenance.non_scalar == src.non_scalar);
    CHECK(out.size <= 5 * src.size);
    CHECK(out.non_scalar <= 2 * src.non_scalar);
    CHECK(check_homogeneous(bundle.circuit, w).homogeneous);
    CHECK(validate(bundle.circuit).empty());
}

}  // namespace

TEST_CASE("derivatives of a single product") {
    CircuitBuilder b(kF, 2);
    const GateId x1 = b.input(1), x2 = b.input(2);
    const GateId m = b.mul(x1, x2);
    const auto c = std::move(b).build();
    const auto bundle = baur_strassen(c, m, WeightVector::unit(2));
    CHECK(bundle.outputs.at(1) == x2);
    CHECK(expand(bundle.circuit, bundle.outputs.at(2)).is_zero());
    check_bundle(c, m, WeightVector::unit(2));
}

TEST_CASE("derivatives of the ordered symmetric polynomials") {
    const auto e = build_esym_homogeneous(5);
    const auto bundle = baur_strassen(e.circuit, e.by_degree[3], WeightVector::unit(5));
    for (Var i = 1; i <= 5; ++i) {
        // d_{x_i} E^3_5 is E^2 over x_{i+1}, ..., x_5.
        NCPolynomial expected(kF, 5);
        const auto shifted = esym(5 - i, 2);
        shifted.for_each_term([&](WordView w, const FieldElement& c) {
            Word moved(w.begin(), w.end());
            for (auto& v : moved) v = static_cast<Var>(v + i);
            expected = expected + NCPolynomial::monomial(c, 5, moved);
        });
        CHECK(expand(bundle.circuit, bundle.outputs.at(i)) == expected);
    }
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto h = build_esym_homogeneous(n);
        for (GateId g : h.by_degree) check_bundle(h.circuit, g, WeightVector::unit(n));
    }
}

TEST_CASE("derivatives of the mainnd family") {
    const auto fam = hard_poly_mainnd(2, 3);
    CircuitBuilder b(kF, 2);
    std::optional<GateId> sum;
    for (Var i = 1; i <= 2; ++i) {
        const GateId x = b.input(i);
        const GateId term = b.mul(x, b.mul(x, x));
        sum = sum ? b.add(*sum, term) : term;
    }
    const auto c = std::move(b).build();
    CHECK(expand(c, *sum) == fam.f);
    const auto bundle = baur_strassen(c, *sum, WeightVector::unit(2));
    CHECK(expand(bundle.circuit, bundle.outputs.at(1)) == fam.parts[0]);
    CHECK(expand(bundle.circuit, bundle.outputs.at(2)) == fam.parts[1]);
}

TEST_CASE("weighted circuits and special shapes") {
    // Weights (2, 1): x1 + x2 x2 is homogeneous of weight 2.
    CircuitBuilder b(kF, 2);
    const GateId x1 = b.input(1), x2 = b.input(2);
    const GateId s = b.add(x1, b.mul(x2, x2));
    const GateId twice = b.add(s, s);
    const GateId scaled = b.mul(b.constant(3), b.mul(twice, b.constant(5)));
    const GateId out = b.mul(scaled, x1);
    const auto c = std::move(b).build();
    check_bundle(c, out, WeightVector({2, 1}));
    check_bundle(c, s, WeightVector({2, 1}));
    check_bundle(c, x1, WeightVector({2, 1}));

    CircuitBuilder k(kF, 1);
    const GateId konst = k.add(k.constant(2), k.constant(3));
    const GateId zero = k.mul(k.constant(0), k.input(1));
    const GateId use = k.add(k.mul(konst, k.input(1)), zero);
    const auto kc = std::move(k).build();
    check_bundle(kc, use, WeightVector::unit(1));
    check_bundle(kc, konst, WeightVector::unit(1));
    check_bundle(kc, zero, WeightVector::unit(1));
}

TEST_CASE("transform preconditions") {
    CircuitBuilder b(kF, 2);
    const GateId bad = b.add(b.input(1), b.mul(b.input(1), b.input(2)));
    const auto c = std::move(b).build();
    CHECK_THROWS_AS(baur_strassen(c, bad, WeightVector::unit(2)), InvalidArgument);
    CHECK_THROWS_AS(baur_strassen(c, bad, WeightVector({1, 0})), InvalidArgument);
    CHECK_THROWS_AS(baur_strassen(c, 99, WeightVector::unit(2)), InvalidArgument);
}

TEST_CASE("transform on random homogeneous circuits") {
    RandomCircuitOptions opts;
    opts.nvars = 4;
    opts.gate_budget = 10;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        opts.seed = seed;
        opts.nvars = 1 + seed % 4;
        const auto c = random_homogeneous_circuit(opts);
        for (GateId g : c.outputs()) check_bundle(c, g, WeightVector::unit(opts.nvars));
    }
}
