#pragma once

// Non-commutative arithmetic circuits: a DAG of input, constant, sum and
// ordered product gates stored in topological order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncl/algebra.hpp"
#include "ncl/ncpoly.hpp"

namespace ncl {

using GateId = std::int64_t;

enum class GateKind { input, constant, add, mul };

std::string_view to_string(GateKind k);

/// One gate. `left`/`right` are child ids for add and mul; for mul they fix
/// the order of multiplication.
struct Gate {
    GateId id = 0;
    GateKind kind = GateKind::input;
    Var var = 0;
    FieldElement value;
    std::optional<GateId> left;
    std::optional<GateId> right;

    bool is_leaf() const { return kind == GateKind::input || kind == GateKind::constant; }
};

class Circuit {
public:
    Circuit() = default;
    /// Stores the gates as given; call validate() before analysing
    /// circuits from untrusted sources.
    Circuit(Field field, std::size_t nvars, std::vector<Gate> gates, std::vector<GateId> outputs = {});

    const Field& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    std::span<const Gate> gates() const { return gates_; }
    const std::vector<GateId>& outputs() const { return outputs_; }
    std::size_t gate_count() const { return gates_.size(); }

    std::optional<std::size_t> index_of(GateId id) const;
    /// Throws InvalidArgument for unknown ids.
    std::size_t require_index(GateId id) const;
    const Gate& gate(GateId id) const { return gates_[require_index(id)]; }

    /// Child positions of an add/mul gate at position i (valid circuits only).
    std::size_t left_index(std::size_t i) const { return require_index(*gates_[i].left); }
    std::size_t right_index(std::size_t i) const { return require_index(*gates_[i].right); }

private:
    Field field_;
    std::size_t nvars_ = 0;
    std::vector<Gate> gates_;
    std::vector<GateId> outputs_;
    std::unordered_map<GateId, std::size_t> index_;
};

/// Appends gates with consecutive ids starting at zero.
class CircuitBuilder {
public:
    CircuitBuilder(Field field, std::size_t nvars);
    /// Continues an existing (valid) circuit; new ids follow the largest one.
    explicit CircuitBuilder(const Circuit& base);

    GateId input(Var x);
    GateId constant(const FieldElement& c);
    GateId constant(long long c) { return constant(FieldElement::from_int(field_, c)); }
    GateId add(GateId left, GateId right);
    GateId mul(GateId left, GateId right);
    void mark_output(GateId id) { outputs_.push_back(id); }
    void set_outputs(std::vector<GateId> ids) { outputs_ = std::move(ids); }

    const Field& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t gate_count() const { return gates_.size(); }

    Circuit build() &&;

private:
    GateId push(Gate g);

    Field field_;
    std::size_t nvars_;
    std::vector<Gate> gates_;
    std::vector<GateId> outputs_;
    std::unordered_map<Var, GateId> inputs_;
    GateId next_id_ = 0;
};

struct Violation {
    enum class Kind { duplicate_id, missing_child, forward_reference, arity, variable_range, constant_value, unknown_output };
    Kind kind;
    GateId gate;
    std::string message;
};

/// Empty iff the circuit is acyclic, well referenced and arity correct.
std::vector<Violation> validate(const Circuit& c);
/// Throws InvalidArgument describing the first violation.
void require_valid(const Circuit& c);

/// Polynomial at `gate`, computed bottom-up over its cone.
NCPolynomial expand(const Circuit& c, GateId gate, const Limits& limits = {});
/// Polynomials of every gate, indexed by position.
std::vector<NCPolynomial> expand_all(const Circuit& c, const Limits& limits = {});
/// Calls visit(k, poly) for each targets[k]; intermediate values are
/// released as soon as no remaining gate needs them.
void expand_each(const Circuit& c, std::span<const GateId> targets,
                 const std::function<void(std::size_t, const NCPolynomial&)>& visit, const Limits& limits = {});

/// Per-gate weights from a structural bottom-up pass.
struct HomogeneityReport {
    bool homogeneous = true;
    std::optional<GateId> failing_gate;
    /// Positions up to and including a failing gate. Kind::zero marks a
    /// gate proven to compute zero, which matches any weight.
    std::vector<Weight> gate_weights;
    WeightVector weights;
};

HomogeneityReport check_homogeneous(const Circuit& c, const WeightVector& w);

enum class Constancy { structural, semantic };

struct Metrics {
    std::size_t size = 0;        // non-input gates
    std::size_t non_scalar = 0;  // products of two non-constant gates
    std::size_t depth = 0;
};

/// `semantic` decides constancy by expansion (subject to `limits`).
Metrics metrics(const Circuit& c, Constancy mode = Constancy::structural, const Limits& limits = {});

/// A gate is structurally constant iff its cone contains no input variable.
std::vector<bool> structurally_constant(const Circuit& c);
/// Upper bound on each gate's degree.
std::vector<std::size_t> degree_bounds(const Circuit& c);

struct RandomCircuitOptions {
    std::size_t nvars = 3;
    std::size_t max_degree = 6;
    std::size_t gate_budget = 8;
    std::size_t max_non_scalar = std::numeric_limits<std::size_t>::max();
    std::uint64_t seed = 0;
    Field field;
};

/// Reproducible random circuit, homogeneous under unit weights: sums only
/// combine gates of equal degree.
Circuit random_homogeneous_circuit(const RandomCircuitOptions& opts);

}  // namespace ncl
