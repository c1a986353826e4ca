#pragma once

// All first-position partial derivatives of a w-homogeneous circuit at once.

#include <map>

#include "ncl/circuit.hpp"

namespace ncl {

struct DerivativeBundle {
    /// The source gates verbatim, followed by constants and derivative gates.
    Circuit circuit;
    /// Variable index -> gate computing the partial of the target by it.
    std::map<Var, GateId> outputs;
    struct Provenance {
        GateId target = 0;
        std::size_t size = 0;
        std::size_t non_scalar = 0;
    } provenance;
    WeightVector weights;
};

/// Reverse accumulation over the source: each gate is eliminated in turn
/// (lowest position first) and its adjoint is pushed to at most two
/// children, so every source gate adds at most two gates and at most one
/// non-scalar product. Requires a valid w-homogeneous circuit in which every
/// input under the target has positive weight; otherwise InvalidArgument.
DerivativeBundle baur_strassen(const Circuit& c, GateId target, const WeightVector& w);

}  // namespace ncl
