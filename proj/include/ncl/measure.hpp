#pragma once

// The interval-restriction rank measure mu_l and the lower bounds it implies.

#include <optional>
#include <span>
#include <string>

#include "ncl/circuit.hpp"

namespace ncl {

struct RestrictionMember {
    std::size_t source = 0;
    Interval interval;
    NCPolynomial poly;
};

/// All length-ell restrictions of every source, sources in order and
/// intervals left to right.
struct RestrictionFamily {
    std::size_t ell = 0;
    std::size_t source_count = 0;
    Field field;
    std::size_t nvars = 0;
    std::vector<RestrictionMember> members;
};

/// Throws InvalidArgument for ell == 0 or an inhomogeneous source. Zero
/// sources and sources of degree below ell contribute nothing.
RestrictionFamily build_family(std::span<const NCPolynomial> polys, std::size_t ell);

struct MeasureReport {
    std::size_t ell = 0;
    std::size_t family_size = 0;
    std::size_t rank = 0;
    /// ceil(rank / (ell - 1)); absent for ell < 2.
    std::optional<std::size_t> bound;
    Field field;
    /// Members that entered the basis, in insertion order.
    std::vector<std::size_t> witness;
    std::size_t distinct_words = 0;
};

enum class RankMethod { automatic, elimination };

/// Rank of the family over its field. `automatic` counts distinct words
/// when every member is a single term.
MeasureReport mu(const RestrictionFamily& family, RankMethod method = RankMethod::automatic);

struct Certificate {
    MeasureReport report;
    std::size_t bound = 0;
    std::size_t source_count = 0;
    std::string statement;
};

/// Throws InvalidArgument for ell < 2.
Certificate certify_lower_bound(std::span<const NCPolynomial> polys, std::size_t ell);

struct LemmaCheck {
    std::size_t mu = 0;
    std::size_t non_scalar = 0;
    /// (ell - 1) * non_scalar
    std::size_t limit = 0;
    bool holds = false;
};

/// mu_ell over every gate polynomial of c against (ell-1) s_x. Requires a
/// circuit homogeneous under unit weights and ell >= 2.
LemmaCheck verify_measure_lemma(const Circuit& c, std::size_t ell, const Limits& limits = {});

/// The length-2 restrictions of d_{x_i} E^{k+1}_n for i <= n-k. Requires
/// 1 <= k < n; k = 1 gives the empty family.
RestrictionFamily esym_derivative_family(std::size_t n, std::size_t k, const Field& field = {});
MeasureReport esym_family_rank(std::size_t n, std::size_t k, const Field& field = {});

}  // namespace ncl
