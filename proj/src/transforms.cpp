#include "ncl/transforms.hpp"

namespace ncl {

// With positive input weights a non-constant homogeneous gate has no
// constant term, so the first-position rule for a product u = a*b is
// d(u) = d(a)*b. Unrolled, d_x(target) is the sum over paths from the target
// down to x of the right factors met on the way, innermost first. adj[u]
// holds that sum for the paths ending at u.
DerivativeBundle baur_strassen(const Circuit& c, GateId target, const WeightVector& w) {
    require_valid(c);
    const std::size_t t = c.require_index(target);
    if (w.nvars() < c.nvars()) throw InvalidArgument("weight vector shorter than the variable universe");
    const auto hom = check_homogeneous(c, w);
    if (!hom.homogeneous) {
        throw InvalidArgument("circuit is not w-homogeneous (gate " + std::to_string(*hom.failing_gate) + ")");
    }
    const auto constant = structurally_constant(c);
    std::vector<bool> in_cone(c.gate_count(), false);
    in_cone[t] = true;
    for (std::size_t i = t + 1; i-- > 0;) {
        if (!in_cone[i]) continue;
        const Gate& g = c.gates()[i];
        if (g.kind == GateKind::input && w[g.var] == 0) {
            throw InvalidArgument("input x" + std::to_string(g.var) + " has weight 0");
        }
        if (!g.is_leaf()) in_cone[c.left_index(i)] = in_cone[c.right_index(i)] = true;
    }
    const auto metric = metrics(c);

    CircuitBuilder b(c);
    const GateId one = b.constant(1);
    std::optional<GateId> two, zero;
    std::vector<std::optional<GateId>> adj(c.gate_count());

    // Proven-zero and constant gates have zero derivative; skip them.
    auto live = [&](std::size_t i) { return !constant[i] && hom.gate_weights[i].kind != Weight::Kind::zero; };
    auto scaled = [&](GateId scalar, GateId a) { return a == one ? scalar : b.mul(scalar, a); };
    auto accumulate = [&](std::size_t i, GateId term) { adj[i] = adj[i] ? b.add(*adj[i], term) : term; };

    if (live(t)) adj[t] = one;
    for (std::size_t u = t + 1; u-- > 0;) {
        if (!adj[u]) continue;
        const Gate& g = c.gates()[u];
        if (g.is_leaf()) continue;
        const std::size_t l = c.left_index(u), r = c.right_index(u);
        const GateId a = *adj[u];
        if (g.kind == GateKind::add) {
            if (l == r) {
                if (!live(l)) continue;
                if (!two) two = b.constant(2);
                accumulate(l, scaled(*two, a));
                continue;
            }
            for (std::size_t ch : {l, r}) {
                if (live(ch)) accumulate(ch, a);
            }
        } else if (constant[l]) {
            if (live(r)) accumulate(r, scaled(c.gates()[l].id, a));
        } else if (live(l)) {
            // Right factor: either a scalar or a genuine product.
            accumulate(l, scaled(c.gates()[r].id, a));
        }
    }

    // Circuits read from files may repeat an input; their adjoints add up.
    std::vector<std::optional<GateId>> by_var(c.nvars() + 1);
    for (std::size_t i = 0; i <= t; ++i) {
        const Gate& g = c.gates()[i];
        if (g.kind != GateKind::input || !adj[i]) continue;
        auto& d = by_var[g.var];
        d = d ? b.add(*d, *adj[i]) : *adj[i];
    }
    DerivativeBundle out;
    std::vector<GateId> outputs;
    for (Var v = 1; v <= c.nvars(); ++v) {
        if (!by_var[v]) {
            if (!zero) zero = b.constant(0);
            by_var[v] = zero;
        }
        out.outputs.emplace(v, *by_var[v]);
        outputs.push_back(*by_var[v]);
    }
    b.set_outputs(std::move(outputs));
    out.circuit = std::move(b).build();
    out.provenance = {target, metric.size, metric.non_scalar};
    out.weights = w;
    return out;
}

}  // namespace ncl
