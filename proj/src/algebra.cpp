#include "ncl/algebra.hpp"

#include <charconv>
#include <ostream>

namespace ncl {

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = modp::mul(r, b, m);
        b = modp::mul(b, b, m);
        e >>= 1;
    }
    return r;
}

void require_same(const Field& a, const Field& b) {
    if (!(a == b)) {
        throw ConfigError("field mismatch: " + a.name() + " vs " + b.name());
    }
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic for all 64-bit n with these witnesses.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = modp::mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 63)) throw ConfigError("modulus must be below 2^63");
    if (!ncl::is_prime(p)) throw ConfigError("modulus " + std::to_string(p) + " is not prime");
    return Field(p);
}

Field Field::parse(std::string_view spec) {
    if (spec == "rational") return rational();
    if (spec.starts_with("prime:")) spec.remove_prefix(6);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), p);
    if (ec != std::errc() || ptr != spec.data() + spec.size() || spec.empty()) {
        throw ConfigError("bad field spec '" + std::string(spec) + "' (want prime:P or rational)");
    }
    return prime(p);
}

std::string Field::name() const { return is_rational() ? "rational" : std::to_string(modulus_); }

namespace modp {

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw DivisionByZero("inverse of zero");
    // Extended Euclid on signed 128-bit to stay exact.
    __int128 t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(z.get_mpz_t(), p);
}

std::uint64_t reduce(const mpq_class& q, std::uint64_t p) {
    std::uint64_t den = reduce(q.get_den(), p);
    if (den == 0) throw DivisionByZero("denominator vanishes modulo " + std::to_string(p));
    return mul(reduce(q.get_num(), p), inv(den, p), p);
}

}  // namespace modp

FieldElement FieldElement::from_int(const Field& f, long long v) {
    FieldElement e(f);
    if (f.is_rational()) {
        if (v != 0) e.q_ = std::make_shared<const mpq_class>(mpz_class(static_cast<long>(v)));
    } else {
        const std::uint64_t p = f.modulus();
        if (v >= 0) {
            e.residue_ = static_cast<std::uint64_t>(v) % p;
        } else {
            // -(v+1) avoids overflow at LLONG_MIN.
            std::uint64_t m = (static_cast<std::uint64_t>(-(v + 1)) + 1) % p;
            e.residue_ = modp::neg(m, p);
        }
    }
    return e;
}

FieldElement FieldElement::from_residue(const Field& f, std::uint64_t r) {
    if (f.is_rational()) return from_rational(f, mpq_class(mpz_class(static_cast<unsigned long>(r))));
    FieldElement e(f);
    e.residue_ = r % f.modulus();
    return e;
}

FieldElement FieldElement::from_rational(const Field& f, const mpq_class& q) {
    FieldElement e(f);
    if (f.is_rational()) {
        mpq_class c = q;
        c.canonicalize();
        if (c != 0) e.q_ = std::make_shared<const mpq_class>(std::move(c));
    } else {
        e.residue_ = modp::reduce(q, f.modulus());
    }
    return e;
}

FieldElement FieldElement::parse(const Field& f, std::string_view text) {
    auto valid_int = [](std::string_view s) {
        if (s.starts_with('-')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.starts_with('-')) {
        throw ParseError("bad scalar '" + std::string(text) + "'");
    }
    const mpz_class n{std::string(num)};
    const mpz_class d{std::string(den)};
    if (d == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
    mpq_class q{n, d};
    q.canonicalize();
    return from_rational(f, q);
}

bool FieldElement::is_zero() const { return field_.is_rational() ? q_ == nullptr : residue_ == 0; }

bool FieldElement::is_one() const { return field_.is_rational() ? (q_ && *q_ == 1) : residue_ == 1; }

mpq_class FieldElement::rational() const {
    if (field_.is_rational()) return q_ ? *q_ : mpq_class(0);
    return mpq_class(mpz_class(static_cast<unsigned long>(residue_)));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    FieldElement e(field_);
    if (field_.is_rational()) {
        e.q_ = std::make_shared<const mpq_class>(1 / *q_);
    } else {
        e.residue_ = modp::inv(residue_, field_.modulus());
    }
    return e;
}

std::string FieldElement::to_string() const {
    if (field_.is_prime()) return std::to_string(residue_);
    return q_ ? q_->get_str() : "0";
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same(a.field_, b.field_);
    if (a.field_.is_prime()) {
        FieldElement e(a.field_);
        e.residue_ = modp::add(a.residue_, b.residue_, a.field_.modulus());
        return e;
    }
    if (!a.q_) return b;
    if (!b.q_) return a;
    return FieldElement::from_rational(a.field_, *a.q_ + *b.q_);
}

FieldElement operator-(const FieldElement& a) {
    FieldElement e(a.field_);
    if (a.field_.is_prime()) {
        e.residue_ = modp::neg(a.residue_, a.field_.modulus());
    } else if (a.q_) {
        e.q_ = std::make_shared<const mpq_class>(-*a.q_);
    }
    return e;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same(a.field_, b.field_);
    if (a.field_.is_prime()) {
        FieldElement e(a.field_);
        e.residue_ = modp::sub(a.residue_, b.residue_, a.field_.modulus());
        return e;
    }
    if (!b.q_) return a;
    if (!a.q_) return -b;
    return FieldElement::from_rational(a.field_, *a.q_ - *b.q_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same(a.field_, b.field_);
    if (a.field_.is_prime()) {
        FieldElement e(a.field_);
        e.residue_ = modp::mul(a.residue_, b.residue_, a.field_.modulus());
        return e;
    }
    if (!a.q_ || !b.q_) return FieldElement(a.field_);
    return FieldElement::from_rational(a.field_, *a.q_ * *b.q_);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same(a.field_, b.field_);
    return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_)) return false;
    if (a.field_.is_prime()) return a.residue_ == b.residue_;
    if (!a.q_ || !b.q_) return a.q_ == b.q_;
    return *a.q_ == *b.q_;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.to_string(); }

}  // namespace ncl
