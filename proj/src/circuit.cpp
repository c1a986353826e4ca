#include "ncl/circuit.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

namespace ncl {

std::string_view to_string(GateKind k) {
    switch (k) {
        case GateKind::input: return "input";
        case GateKind::constant: return "const";
        case GateKind::add: return "add";
        case GateKind::mul: return "mul";
    }
    return "?";
}

Circuit::Circuit(Field field, std::size_t nvars, std::vector<Gate> gates, std::vector<GateId> outputs)
    : field_(std::move(field)), nvars_(nvars), gates_(std::move(gates)), outputs_(std::move(outputs)) {
    index_.reserve(gates_.size());
    for (std::size_t i = 0; i < gates_.size(); ++i) index_.try_emplace(gates_[i].id, i);
}

std::optional<std::size_t> Circuit::index_of(GateId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Circuit::require_index(GateId id) const {
    auto i = index_of(id);
    if (!i) throw InvalidArgument("no gate with id " + std::to_string(id));
    return *i;
}

CircuitBuilder::CircuitBuilder(Field field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

CircuitBuilder::CircuitBuilder(const Circuit& base)
    : field_(base.field()), nvars_(base.nvars()), gates_(base.gates().begin(), base.gates().end()),
      outputs_(base.outputs()) {
    for (const Gate& g : gates_) {
        next_id_ = std::max(next_id_, g.id + 1);
        if (g.kind == GateKind::input) inputs_.try_emplace(g.var, g.id);
    }
}

GateId CircuitBuilder::push(Gate g) {
    g.id = next_id_++;
    gates_.push_back(std::move(g));
    return gates_.back().id;
}

GateId CircuitBuilder::input(Var x) {
    if (x > nvars_) throw InvalidArgument("variable x" + std::to_string(x) + " outside universe");
    if (auto it = inputs_.find(x); it != inputs_.end()) return it->second;
    Gate g;
    g.kind = GateKind::input;
    g.var = x;
    GateId id = push(std::move(g));
    inputs_.emplace(x, id);
    return id;
}

GateId CircuitBuilder::constant(const FieldElement& c) {
    if (!(c.field() == field_)) throw ConfigError("constant from field " + c.field().name());
    Gate g;
    g.kind = GateKind::constant;
    g.value = c;
    return push(std::move(g));
}

GateId CircuitBuilder::add(GateId left, GateId right) {
    Gate g;
    g.kind = GateKind::add;
    g.left = left;
    g.right = right;
    return push(std::move(g));
}

GateId CircuitBuilder::mul(GateId left, GateId right) {
    Gate g;
    g.kind = GateKind::mul;
    g.left = left;
    g.right = right;
    return push(std::move(g));
}

Circuit CircuitBuilder::build() && {
    return Circuit(std::move(field_), nvars_, std::move(gates_), std::move(outputs_));
}

std::vector<Violation> validate(const Circuit& c) {
    std::vector<Violation> out;
    std::unordered_map<GateId, std::size_t> seen;
    auto gates = c.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        const std::string where = "gate " + std::to_string(g.id);
        if (!seen.emplace(g.id, i).second) {
            out.push_back({Violation::Kind::duplicate_id, g.id, where + ": duplicate id"});
        }
        switch (g.kind) {
            case GateKind::input:
                if (g.var < 1 || g.var > c.nvars()) {
                    out.push_back({Violation::Kind::variable_range, g.id,
                                   where + ": variable x" + std::to_string(g.var) + " outside [1," +
                                       std::to_string(c.nvars()) + "]"});
                }
                [[fallthrough]];
            case GateKind::constant:
                if (g.left || g.right) out.push_back({Violation::Kind::arity, g.id, where + ": leaf with children"});
                if (g.kind == GateKind::constant && !(g.value.field() == c.field())) {
                    out.push_back({Violation::Kind::constant_value, g.id, where + ": constant from another field"});
                }
                break;
            case GateKind::add:
            case GateKind::mul: {
                if (!g.left || !g.right) {
                    out.push_back({Violation::Kind::arity, g.id, where + ": needs two children"});
                }
                for (const auto& child : {g.left, g.right}) {
                    if (!child) continue;
                    auto it = seen.find(*child);
                    if (it != seen.end()) continue;
                    if (c.index_of(*child)) {
                        out.push_back({Violation::Kind::forward_reference, g.id,
                                       where + ": child " + std::to_string(*child) + " appears later"});
                    } else {
                        out.push_back({Violation::Kind::missing_child, g.id,
                                       where + ": child " + std::to_string(*child) + " does not exist"});
                    }
                }
                break;
            }
        }
    }
    for (GateId o : c.outputs()) {
        if (!c.index_of(o)) out.push_back({Violation::Kind::unknown_output, o, "output " + std::to_string(o) + " does not exist"});
    }
    return out;
}

void require_valid(const Circuit& c) {
    auto v = validate(c);
    if (!v.empty()) throw InvalidArgument("invalid circuit: " + v.front().message);
}

namespace {

NCPolynomial leaf_value(const Circuit& c, const Gate& g) {
    if (g.kind == GateKind::input) return NCPolynomial::variable(c.field(), c.nvars(), g.var);
    return NCPolynomial::constant(g.value, c.nvars());
}

}  // namespace

void expand_each(const Circuit& c, std::span<const GateId> targets,
                 const std::function<void(std::size_t, const NCPolynomial&)>& visit, const Limits& limits) {
    require_valid(c);
    const std::size_t n = c.gate_count();
    std::vector<std::vector<std::size_t>> target_slots(n);
    std::vector<bool> needed(n, false);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const std::size_t i = c.require_index(targets[k]);
        target_slots[i].push_back(k);
        needed[i] = true;
    }
    std::vector<std::size_t> uses(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        if (!needed[i] || c.gates()[i].is_leaf()) continue;
        for (std::size_t ch : {c.left_index(i), c.right_index(i)}) {
            needed[ch] = true;
            ++uses[ch];
        }
    }
    std::vector<std::optional<NCPolynomial>> value(n);
    auto release = [&](std::size_t i) {
        if (--uses[i] == 0 && target_slots[i].empty()) value[i].reset();
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (!needed[i]) continue;
        const Gate& g = c.gates()[i];
        if (g.is_leaf()) {
            value[i] = leaf_value(c, g);
        } else {
            const std::size_t l = c.left_index(i), r = c.right_index(i);
            value[i] = g.kind == GateKind::add ? add(*value[l], *value[r], limits) : mul(*value[l], *value[r], limits);
            release(l);
            release(r);
        }
        if (!target_slots[i].empty()) {
            for (std::size_t k : target_slots[i]) visit(k, *value[i]);
            target_slots[i].clear();
            if (uses[i] == 0) value[i].reset();
        }
    }
}

NCPolynomial expand(const Circuit& c, GateId gate, const Limits& limits) {
    NCPolynomial out;
    const GateId targets[] = {gate};
    expand_each(c, targets, [&](std::size_t, const NCPolynomial& p) { out = p; }, limits);
    return out;
}

std::vector<NCPolynomial> expand_all(const Circuit& c, const Limits& limits) {
    require_valid(c);
    std::vector<NCPolynomial> value;
    value.reserve(c.gate_count());
    for (std::size_t i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gates()[i];
        if (g.is_leaf()) {
            value.push_back(leaf_value(c, g));
        } else {
            const auto& l = value[c.left_index(i)];
            const auto& r = value[c.right_index(i)];
            value.push_back(g.kind == GateKind::add ? add(l, r, limits) : mul(l, r, limits));
        }
    }
    return value;
}

HomogeneityReport check_homogeneous(const Circuit& c, const WeightVector& w) {
    require_valid(c);
    HomogeneityReport report;
    report.weights = w;
    auto& gw = report.gate_weights;
    gw.reserve(c.gate_count());
    for (std::size_t i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gates()[i];
        Weight out;
        switch (g.kind) {
            case GateKind::input:
                out = {Weight::Kind::homogeneous, w[g.var]};
                break;
            case GateKind::constant:
                out = g.value.is_zero() ? Weight{} : Weight{Weight::Kind::homogeneous, 0};
                break;
            case GateKind::add: {
                const Weight& l = gw[c.left_index(i)];
                const Weight& r = gw[c.right_index(i)];
                if (l.kind == Weight::Kind::zero) {
                    out = r;
                } else if (r.kind == Weight::Kind::zero || l.value == r.value) {
                    out = l;
                } else {
                    out = {Weight::Kind::inhomogeneous, 0};
                }
                break;
            }
            case GateKind::mul: {
                const Weight& l = gw[c.left_index(i)];
                const Weight& r = gw[c.right_index(i)];
                if (l.kind == Weight::Kind::zero || r.kind == Weight::Kind::zero) {
                    out = {};
                } else {
                    out = {Weight::Kind::homogeneous, l.value + r.value};
                }
                break;
            }
        }
        gw.push_back(out);
        if (out.kind == Weight::Kind::inhomogeneous) {
            report.homogeneous = false;
            report.failing_gate = g.id;
            break;
        }
    }
    return report;
}

std::vector<bool> structurally_constant(const Circuit& c) {
    std::vector<bool> k(c.gate_count());
    for (std::size_t i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gates()[i];
        if (g.is_leaf()) {
            k[i] = g.kind == GateKind::constant;
        } else {
            k[i] = k[c.left_index(i)] && k[c.right_index(i)];
        }
    }
    return k;
}

std::vector<std::size_t> degree_bounds(const Circuit& c) {
    std::vector<std::size_t> d(c.gate_count());
    for (std::size_t i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
            case GateKind::input: d[i] = 1; break;
            case GateKind::constant: d[i] = 0; break;
            case GateKind::add: d[i] = std::max(d[c.left_index(i)], d[c.right_index(i)]); break;
            case GateKind::mul: d[i] = d[c.left_index(i)] + d[c.right_index(i)]; break;
        }
    }
    return d;
}

Metrics metrics(const Circuit& c, Constancy mode, const Limits& limits) {
    require_valid(c);
    std::vector<bool> constant;
    if (mode == Constancy::structural) {
        constant = structurally_constant(c);
    } else {
        for (const auto& p : expand_all(c, limits)) constant.push_back(p.is_constant());
    }
    Metrics m;
    std::vector<std::size_t> depth(c.gate_count(), 0);
    for (std::size_t i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gates()[i];
        if (g.is_leaf()) continue;
        const std::size_t l = c.left_index(i), r = c.right_index(i);
        ++m.size;
        if (g.kind == GateKind::mul && !constant[l] && !constant[r]) ++m.non_scalar;
        depth[i] = 1 + std::max(depth[l], depth[r]);
        m.depth = std::max(m.depth, depth[i]);
    }
    return m;
}

Circuit random_homogeneous_circuit(const RandomCircuitOptions& opts) {
    if (opts.nvars < 1) throw InvalidArgument("random circuit needs at least one variable");
    if (opts.gate_budget < 1) throw InvalidArgument("gate budget must be at least 1");
    if (opts.max_degree < 1) throw InvalidArgument("degree bound must be at least 1");
    std::mt19937_64 rng(opts.seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    CircuitBuilder b(opts.field, opts.nvars);
    std::vector<GateId> pool;  // non-constant gates
    std::vector<std::size_t> degree;
    for (Var v = 1; v <= opts.nvars; ++v) {
        pool.push_back(b.input(v));
        degree.push_back(1);
    }
    std::vector<bool> consumed(pool.size(), false);
    std::size_t non_scalar = 0;

    auto random_scalar = [&] {
        if (opts.field.is_rational()) {
            long long v = 0;
            while (v == 0) v = static_cast<long long>(pick(7)) - 3;
            return FieldElement::from_int(opts.field, v);
        }
        return FieldElement::from_residue(opts.field, 1 + rng() % (opts.field.modulus() - 1));
    };
    auto emit = [&](GateId id, std::size_t deg, std::initializer_list<std::size_t> children) {
        for (std::size_t ch : children) consumed[ch] = true;
        pool.push_back(id);
        degree.push_back(deg);
        consumed.push_back(false);
    };

    for (std::size_t step = 0; step < opts.gate_budget; ++step) {
        const std::size_t roll = pick(100);
        bool done = false;
        if (roll < 45 && non_scalar < opts.max_non_scalar) {
            for (int attempt = 0; attempt < 16 && !done; ++attempt) {
                const std::size_t a = pick(pool.size()), c = pick(pool.size());
                if (degree[a] + degree[c] > opts.max_degree) continue;
                emit(b.mul(pool[a], pool[c]), degree[a] + degree[c], {a, c});
                ++non_scalar;
                done = true;
            }
        }
        if (!done && roll >= 85) {
            const std::size_t a = pick(pool.size());
            const GateId k = b.constant(random_scalar());
            const GateId id = pick(2) ? b.mul(k, pool[a]) : b.mul(pool[a], k);
            emit(id, degree[a], {a});
            done = true;
        }
        if (!done) {
            const std::size_t a = pick(pool.size());
            std::vector<std::size_t> same;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (degree[i] == degree[a]) same.push_back(i);
            }
            const std::size_t c = same[pick(same.size())];
            emit(b.add(pool[a], pool[c]), degree[a], {a, c});
        }
    }
    for (std::size_t i = opts.nvars; i < pool.size(); ++i) {
        if (!consumed[i]) b.mark_output(pool[i]);
    }
    return std::move(b).build();
}

}  // namespace ncl
