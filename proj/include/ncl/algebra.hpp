#pragma once

// Exact scalars: residues modulo a prime or arbitrary-precision rationals.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "ncl/errors.hpp"

namespace ncl {

/// 2^61 - 1.
inline constexpr std::uint64_t kDefaultModulus = (std::uint64_t{1} << 61) - 1;

bool is_prime(std::uint64_t n);

/// Describes the coefficient field: GF(p) for a prime p < 2^63, or Q.
class Field {
public:
    /// Default field is GF(2^61 - 1).
    Field() = default;

    static Field prime(std::uint64_t p);
    static Field rational() { return Field(0); }

    /// Parses "prime:P", a bare decimal prime, or "rational".
    static Field parse(std::string_view spec);

    bool is_rational() const { return modulus_ == 0; }
    bool is_prime() const { return modulus_ != 0; }
    std::uint64_t modulus() const { return modulus_; }

    /// "rational" or the decimal modulus.
    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint64_t modulus) : modulus_(modulus) {}

    std::uint64_t modulus_ = kDefaultModulus;
};

namespace modp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

/// Throws DivisionByZero when a == 0.
std::uint64_t inv(std::uint64_t a, std::uint64_t p);

std::uint64_t reduce(const mpz_class& z, std::uint64_t p);

/// Throws DivisionByZero if the denominator vanishes mod p.
std::uint64_t reduce(const mpq_class& q, std::uint64_t p);

}  // namespace modp

/// An immutable field value in canonical form: residue in [0, p) or a
/// reduced fraction with positive denominator.
class FieldElement {
public:
    /// Zero of the default field.
    FieldElement() = default;

    static FieldElement zero(const Field& f) { return FieldElement(f); }
    static FieldElement one(const Field& f) { return from_int(f, 1); }
    static FieldElement from_int(const Field& f, long long v);
    static FieldElement from_residue(const Field& f, std::uint64_t r);
    static FieldElement from_rational(const Field& f, const mpq_class& q);

    /// Decimal integer, or "num/den" (rationals; also accepted over GF(p)).
    static FieldElement parse(const Field& f, std::string_view text);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Residue; only meaningful over GF(p).
    std::uint64_t residue() const { return residue_; }
    /// Exact value; over GF(p) this is the residue as an integer.
    mpq_class rational() const;

    FieldElement inverse() const;

    std::string to_string() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a);
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

private:
    explicit FieldElement(const Field& f) : field_(f) {}

    Field field_;
    std::uint64_t residue_ = 0;
    // Null means zero. Shared because values are immutable.
    std::shared_ptr<const mpq_class> q_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

}  // namespace ncl
