#pragma once

// de Bruijn sequences and the hard polynomial families built from them.

#include <cstdint>
#include <string>
#include <vector>

#include "ncl/ncpoly.hpp"

namespace ncl {

/// Symbols are 0-based: alphabet {0, ..., alphabet-1}.
struct DeBruijnSequence {
    std::size_t alphabet = 2;
    std::size_t order = 1;
    /// Length alphabet^order.
    std::vector<std::uint16_t> cyclic;

    /// cyclic followed by its first order-1 symbols.
    std::vector<std::uint16_t> linear() const;
};

/// Digits for alphabets up to 10, comma separated otherwise.
std::string to_digits(const std::vector<std::uint16_t>& symbols, std::size_t alphabet);

/// True iff every length-`order` string occurs exactly once cyclically.
bool is_debruijn(const DeBruijnSequence& s);

/// Prefer-one greedy: start from `k` zeros and append 1 whenever the new
/// k-suffix is unseen, else 0, until neither is possible.
DeBruijnSequence debruijn_binary_greedy(std::size_t k);

/// Concatenation of Lyndon words in lexicographic order (the smallest
/// sequence). Throws BudgetExceeded when A^k exceeds max_length.
DeBruijnSequence debruijn_general(std::size_t alphabet, std::size_t k, std::size_t max_length = 1u << 24);

/// ceil(log2 d) for d >= 1.
std::size_t ceil_log2(std::size_t d);

/// First d symbols of the order ceil(log2 d) greedy sequence, as a word in
/// x1 (symbol 0) and x2 (symbol 1).
NCPolynomial hard_monomial_dB(std::size_t d, const Field& field = {});

struct MainndFamily {
    NCPolynomial f;
    std::vector<NCPolynomial> parts;
    std::size_t k = 0;
    DeBruijnSequence sigma;
};

/// f = sum_i x_i * alpha_i where alpha_1 ... alpha_n are consecutive
/// (d-1)-blocks of a de Bruijn sequence over [n] of the least order k with
/// n^k >= n(d-1). Requires n >= 2 and d >= 3.
MainndFamily hard_poly_mainnd(std::size_t n, std::size_t d, const Field& field = {});

/// Ordered symmetric polynomial: sum of x_{i1}...x_{id} over i1 < ... < id.
NCPolynomial esym(std::size_t n, std::size_t d, const Field& field = {}, const Limits& limits = {});

/// prod_i prod_j (x_i x_j) in row-major order.
NCPolynomial grid_monomial(std::size_t n, const Field& field = {});

}  // namespace ncl
