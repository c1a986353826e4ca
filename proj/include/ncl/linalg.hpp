#pragma once

// Exact row reduction over a Field with sparse rows.

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncl/algebra.hpp"

namespace ncl {

/// Sparse row: (column, nonzero value) pairs sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, FieldElement>>;

/// Incrementally maintained echelon basis. A row is accepted iff it is
/// linearly independent of the rows accepted so far; its pivot is the
/// lowest column still nonzero after reduction.
class EchelonBasis {
public:
    explicit EchelonBasis(Field field) : field_(std::move(field)) {}

    /// Reduces `row` against the basis; keeps it and returns true if it
    /// is independent. Zero entries in `row` are ignored.
    bool insert(SparseRow row);

    std::size_t rank() const { return rows_.size(); }
    const Field& field() const { return field_; }

private:
    Field field_;
    std::vector<SparseRow> rows_;
    std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

/// Rank of a dense matrix.
std::size_t rank(const std::vector<std::vector<FieldElement>>& rows, const Field& field);

}  // namespace ncl
