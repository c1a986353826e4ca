#include "ncl/linalg.hpp"

#include <algorithm>

namespace ncl {

namespace {

// row - factor * basis, both sorted by column.
SparseRow axpy(const SparseRow& row, const FieldElement& factor, const SparseRow& basis) {
    SparseRow out;
    out.reserve(row.size() + basis.size());
    auto a = row.begin();
    auto b = basis.begin();
    while (a != row.end() || b != basis.end()) {
        if (b == basis.end() || (a != row.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == row.end() || b->first < a->first) {
            out.emplace_back(b->first, -(factor * b->second));
            ++b;
        } else {
            FieldElement v = a->second - factor * b->second;
            if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    return out;
}

}  // namespace

bool EchelonBasis::insert(SparseRow row) {
    std::erase_if(row, [](const auto& e) { return e.second.is_zero(); });
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    while (!row.empty()) {
        auto it = pivot_row_.find(row.front().first);
        if (it == pivot_row_.end()) break;
        const SparseRow& b = rows_[it->second];
        // Basis rows are normalized to a unit pivot.
        row = axpy(row, row.front().second, b);
    }
    if (row.empty()) return false;
    const FieldElement inv = row.front().second.inverse();
    for (auto& [col, v] : row) v = v * inv;
    pivot_row_.emplace(row.front().first, rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

std::size_t rank(const std::vector<std::vector<FieldElement>>& rows, const Field& field) {
    EchelonBasis basis(field);
    for (const auto& r : rows) {
        SparseRow s;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (!r[c].is_zero()) s.emplace_back(c, r[c]);
        }
        basis.insert(std::move(s));
    }
    return basis.rank();
}

}  // namespace ncl
