#pragma once

// Sparse polynomials in non-commuting variables x0, x1, ..., xn.
//
// Terms are kept in canonical order (degree, then lexicographic on the
// variable indices) and grouped by degree, so every homogeneous slice is a
// flat array of fixed-length words. Index 0 is reserved for a fresh variable
// introduced by circuit transforms; ordinary variables are 1-based.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncl/algebra.hpp"

namespace ncl {

using Var = std::uint16_t;
using Word = std::vector<Var>;
using WordView = std::span<const Var>;

inline constexpr std::size_t kMaxVars = 65534;

/// Resource limits for operations that can blow up.
struct Limits {
    std::size_t term_budget = 1'000'000;
};

/// Positions [first, last], 1-based and inclusive. Empty iff first == last + 1.
struct Interval {
    std::size_t first = 1;
    std::size_t last = 0;

    std::size_t length() const { return last + 1 - first; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Non-negative per-variable weights w0, w1, ..., wn.
class WeightVector {
public:
    WeightVector() = default;
    /// `w` holds w1..wn; w0 defaults to zero.
    explicit WeightVector(std::vector<std::uint64_t> w, std::uint64_t w0 = 0);

    static WeightVector unit(std::size_t nvars);

    std::size_t nvars() const { return weights_.empty() ? 0 : weights_.size() - 1; }
    std::uint64_t operator[](Var v) const;
    /// w1..wn.
    std::vector<std::uint64_t> values() const {
        if (weights_.empty()) return {};
        return {weights_.begin() + 1, weights_.end()};
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<std::uint64_t> weights_{0};
};

/// Result of a weighted-homogeneity query.
struct Weight {
    enum class Kind { homogeneous, inhomogeneous, zero };
    Kind kind = Kind::zero;
    std::uint64_t value = 0;

    bool homogeneous() const { return kind != Kind::inhomogeneous; }
};

class NCPolynomial {
public:
    /// Zero polynomial over the default field with an empty universe.
    NCPolynomial() = default;
    NCPolynomial(Field field, std::size_t nvars);

    static NCPolynomial constant(const FieldElement& c, std::size_t nvars);
    static NCPolynomial variable(const Field& field, std::size_t nvars, Var x);
    static NCPolynomial monomial(const Field& field, std::size_t nvars, WordView w);
    static NCPolynomial monomial(const FieldElement& c, std::size_t nvars, WordView w);
    /// Sums the given terms; repeated words are combined and zeros dropped.
    static NCPolynomial from_terms(const Field& field, std::size_t nvars,
                                   const std::vector<std::pair<Word, FieldElement>>& terms);

    const Field& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }

    std::size_t term_count() const;
    bool is_zero() const { return parts_.empty(); }
    bool is_constant() const;
    /// -1 for the zero polynomial.
    int degree() const;
    int min_degree() const;
    /// Zero counts as homogeneous.
    bool is_homogeneous() const { return parts_.size() <= 1; }

    FieldElement coefficient_of(WordView w) const;

    /// Visits terms in canonical order.
    void for_each_term(const std::function<void(WordView, const FieldElement&)>& fn) const;
    std::vector<std::pair<Word, FieldElement>> terms() const;

    /// Terms of exactly degree d.
    NCPolynomial homogeneous_part(std::size_t d) const;

    friend bool operator==(const NCPolynomial& a, const NCPolynomial& b);

private:
    struct Part {
        std::size_t degree = 0;
        std::vector<Var> letters;              // size() * degree entries
        std::vector<std::uint64_t> residues;   // GF(p) coefficients
        std::vector<mpq_class> rationals;      // Q coefficients

        std::size_t size(bool rational) const { return rational ? rationals.size() : residues.size(); }
    };

    friend struct PolyOps;

    Field field_;
    std::size_t nvars_ = 0;
    std::vector<Part> parts_;  // nonempty parts, ascending degree
};

NCPolynomial add(const NCPolynomial& f, const NCPolynomial& g, const Limits& limits = {});
NCPolynomial sub(const NCPolynomial& f, const NCPolynomial& g, const Limits& limits = {});
NCPolynomial neg(const NCPolynomial& f);
NCPolynomial scale(const NCPolynomial& f, const FieldElement& c);
/// Concatenation product; throws BudgetExceeded when |f|*|g| exceeds the budget.
NCPolynomial mul(const NCPolynomial& f, const NCPolynomial& g, const Limits& limits = {});

inline NCPolynomial operator+(const NCPolynomial& f, const NCPolynomial& g) { return add(f, g); }
inline NCPolynomial operator-(const NCPolynomial& f, const NCPolynomial& g) { return sub(f, g); }
inline NCPolynomial operator-(const NCPolynomial& f) { return neg(f); }
inline NCPolynomial operator*(const NCPolynomial& f, const NCPolynomial& g) { return mul(f, g); }
inline NCPolynomial operator*(const FieldElement& c, const NCPolynomial& f) { return scale(f, c); }

/// f^J: keep positions inside J, set the rest to one. f must be homogeneous.
NCPolynomial interval_restrict(const NCPolynomial& f, Interval j);

/// The f0 in f = x*f0 + f1 where no monomial of f1 starts with x.
NCPolynomial partial_first(const NCPolynomial& f, Var x);

Weight weight_of(const NCPolynomial& f, const WeightVector& w);

/// Text form: terms joined by " + ", each "coeff*x3.x1.x7"; constants bare.
std::string to_string(const NCPolynomial& f);
std::ostream& operator<<(std::ostream& os, const NCPolynomial& f);

/// Parses the text form. With nvars == 0 the universe is the largest index seen.
NCPolynomial parse_polynomial(std::string_view text, const Field& field, std::size_t nvars = 0);

std::string format_word(WordView w);

}  // namespace ncl
