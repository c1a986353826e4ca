#pragma once

// Randomized identity testing by substituting random matrices over GF(p).

#include <cstdint>
#include <optional>
#include <span>

#include "ncl/circuit.hpp"

namespace ncl {

struct PitOptions {
    std::size_t trials = 3;
    /// 0 picks the smallest admissible dimension.
    std::size_t dim = 0;
    std::uint64_t seed = 0;
};

struct PitVerdict {
    enum class Kind { equal, unequal, probably_equal };
    Kind kind = Kind::equal;
    std::size_t trials = 0;
    std::size_t dim = 0;
    /// Modulus of the last trial; over Q every trial draws a fresh 61-bit prime.
    std::uint64_t modulus = 0;
    /// Upper bound on the chance that unequal inputs were reported equal.
    double failure_bound = 0;
    std::size_t degree_bound = 0;
};

std::string_view to_string(PitVerdict::Kind k);

/// Smallest dimension with no matrix identity of degree `degree`.
inline std::size_t pit_min_dim(std::size_t degree) { return (degree + 1) / 2 + 1; }

/// Compares the polynomial at `gate` with f. Throws InvalidArgument when
/// opts.dim is below pit_min_dim of the joint degree bound.
PitVerdict pit_matrix(const Circuit& c, GateId gate, const NCPolynomial& f, const PitOptions& opts = {});

struct PitSearch {
    /// First candidate, in the given order, that no trial separated from f.
    std::optional<GateId> gate;
    PitVerdict verdict;
};

/// Tests many gates against f at once: every trial evaluates f and the
/// circuit a single time. Candidates whose degree bound is below deg f are
/// dropped up front; the dimension covers the largest remaining bound.
PitSearch pit_search(const Circuit& c, std::span<const GateId> candidates, const NCPolynomial& f,
                     const PitOptions& opts = {});

}  // namespace ncl
