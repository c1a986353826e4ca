#include <doctest.h>

#include "ncl/ncpoly.hpp"
#include "test_util.hpp"

using namespace ncl;
using ncl::testing::random_poly;

namespace {

const Field kF;

NCPolynomial P(std::string_view text, std::size_t nvars = 3, const Field& f = kF) {
    return parse_polynomial(text, f, nvars);
}

NCPolynomial x(Var i, std::size_t nvars = 3) { return NCPolynomial::variable(kF, nvars, i); }

FieldElement c(long long v, const Field& f = kF) { return FieldElement::from_int(f, v); }

}  // namespace

TEST_CASE("add") {
    const auto x12 = x(1) * x(2);
    const auto x21 = x(2) * x(1);
    CHECK((x12 + x21).term_count() == 2);
    CHECK((x12 + c(-1) * x12).is_zero());
    CHECK(x12 + NCPolynomial(kF, 3) == x12);
    CHECK_THROWS_AS(x(1, 2) + x(1, 3), InvalidArgument);
    CHECK_THROWS_AS(x(1) + NCPolynomial::variable(Field::rational(), 3, 1), ConfigError);
}

TEST_CASE("mul is order preserving") {
    CHECK(to_string(x(1) * x(2)) == "1*x1.x2");
    CHECK(to_string(x(2) * x(1)) == "1*x2.x1");
    CHECK(x(1) * x(2) != x(2) * x(1));
    CHECK((x(1) + x(2)) * x(1) == P("1*x1.x1 + 1*x2.x1"));
    const auto f = P("3*x1.x2 + 2*x3 + 5");
    CHECK(f * NCPolynomial::constant(c(1), 3) == f);
    CHECK((x(1) * x(2)).term_count() == 1);
}

TEST_CASE("mul respects the term budget") {
    const auto f = P("x1 + x2 + x3");
    Limits tight{8};
    CHECK_NOTHROW(mul(f, f, Limits{9}));
    CHECK_THROWS_AS(mul(f, f, tight), BudgetExceeded);
    CHECK_THROWS_AS(add(f, f * f, Limits{11}), BudgetExceeded);
}

TEST_CASE("interval restriction") {
    CHECK(interval_restrict(P("x1.x2.x3"), {2, 3}) == P("x2.x3"));
    // Both terms restrict to x2; coefficients add.
    CHECK(interval_restrict(P("x1.x2 + x3.x2"), {2, 2}) == P("2*x2"));
    CHECK(interval_restrict(P("x1.x2 + x2.x1"), {1, 0}) == P("2"));
    CHECK(interval_restrict(P("x1.x2 + x2.x1"), {3, 2}) == P("2"));
    CHECK(interval_restrict(NCPolynomial(kF, 3), {1, 4}).is_zero());
    CHECK_THROWS_AS(interval_restrict(P("x1 + x1.x2"), {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(interval_restrict(P("x1.x2"), {2, 3}), InvalidArgument);
    CHECK_THROWS_AS(interval_restrict(P("x1.x2"), {0, 1}), InvalidArgument);
    CHECK_THROWS_AS(interval_restrict(P("x1.x2"), {3, 1}), InvalidArgument);
}

TEST_CASE("first-position partial derivative") {
    CHECK(partial_first(P("x1.x2"), 1) == P("x2"));
    CHECK(partial_first(P("x1.x2"), 2).is_zero());
    const auto e32 = P("x1.x2 + x1.x3 + x2.x3");
    CHECK(partial_first(e32, 1) == P("x2 + x3"));
    CHECK(partial_first(e32, 2) == P("x3"));
    CHECK(partial_first(P("5"), 1).is_zero());
    CHECK(partial_first(P("2*x1 + 3*x1.x1.x2 + x2.x1"), 1) == P("2 + 3*x1.x2"));
}

TEST_CASE("weighted homogeneity") {
    CHECK(weight_of(P("x1.x2", 2), WeightVector::unit(2)).value == 2);
    const auto w = weight_of(P("x1 + x2.x2", 2), WeightVector({2, 1}));
    CHECK(w.kind == Weight::Kind::homogeneous);
    CHECK(w.value == 2);
    CHECK(weight_of(P("x1 + x1.x1", 2), WeightVector::unit(2)).kind == Weight::Kind::inhomogeneous);
    CHECK(weight_of(NCPolynomial(kF, 2), WeightVector::unit(2)).kind == Weight::Kind::zero);
    CHECK(weight_of(NCPolynomial(kF, 2), WeightVector::unit(2)).homogeneous());
    CHECK_THROWS_AS(weight_of(P("x3", 3), WeightVector::unit(2)), InvalidArgument);
}

TEST_CASE("coefficient lookup") {
    const auto e32 = P("x1.x2 + x1.x3 + x2.x3");
    CHECK(e32.coefficient_of(Word{1, 3}) == c(1));
    CHECK(e32.coefficient_of(Word{3, 1}).is_zero());
    CHECK(NCPolynomial(kF, 3).coefficient_of(Word{1}).is_zero());
    CHECK(P("7 + x1").coefficient_of(Word{}) == c(7));
}

TEST_CASE("text format") {
    const auto f = P("2*x3.x1 + 5 + 1*x1.x2 + 4*x2");
    CHECK(to_string(f) == "5 + 4*x2 + 1*x1.x2 + 2*x3.x1");
    CHECK(to_string(NCPolynomial(kF, 3)) == "0");
    CHECK(to_string(P("x1 + x1")) == "2*x1");
    CHECK(to_string(P("-1/2*x1", 1, Field::rational())) == "-1/2*x1");
    CHECK(P("x0.x1").coefficient_of(Word{0, 1}) == c(1));
    CHECK_THROWS_AS(P("x1.y2"), ParseError);
    CHECK_THROWS_AS(P("2*"), ParseError);
    CHECK_THROWS_AS(P("x1 + "), ParseError);
    CHECK_THROWS_AS(P("x4", 3), InvalidArgument);
    CHECK(parse_polynomial("x7.x2", kF).nvars() == 7);
}

TEST_CASE("text round trip on random canonical polynomials") {
    std::mt19937_64 rng(3);
    for (const Field& f : {kF, Field::rational()}) {
        for (int t = 0; t < 200; ++t) {
            const auto p = random_poly(f, 4, 5, 8, rng);
            const auto s = to_string(p);
            const auto back = parse_polynomial(s, f, 4);
            CHECK(back == p);
            CHECK(to_string(back) == s);
        }
    }
}

TEST_CASE("ring laws on random sparse triples") {
    std::mt19937_64 rng(5);
    for (const Field& f : {kF, Field::rational()}) {
        for (int t = 0; t < 150; ++t) {
            const auto a = random_poly(f, 4, 2, 4, rng);
            const auto b = random_poly(f, 4, 2, 4, rng);
            const auto g = random_poly(f, 4, 2, 4, rng);
            CHECK((a * b) * g == a * (b * g));
            CHECK(a * (b + g) == a * b + a * g);
            CHECK((a + b) * g == a * g + b * g);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("interval restriction is linear") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        const int d = 1 + static_cast<int>(rng() % 5);
        const auto f = random_poly(kF, 3, 0, 6, rng, d);
        const auto g = random_poly(kF, 3, 0, 6, rng, d);
        const auto a = ncl::testing::small_scalar(kF, rng);
        const auto b = ncl::testing::small_scalar(kF, rng);
        const std::size_t first = 1 + rng() % d;
        const std::size_t last = first - 1 + rng() % (d - first + 2);
        const Interval j{first, last};
        CHECK(interval_restrict(a * f + b * g, j) == a * interval_restrict(f, j) + b * interval_restrict(g, j));
    }
}

TEST_CASE("restriction of a product splits at the factor boundary") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        const std::size_t d1 = 1 + rng() % 4;
        const std::size_t d2 = 1 + rng() % 4;
        const auto f1 = random_poly(kF, 3, 0, 5, rng, static_cast<int>(d1));
        const auto f2 = random_poly(kF, 3, 0, 5, rng, static_cast<int>(d2));
        const auto f = f1 * f2;
        const auto f2_empty = interval_restrict(f2, {1, 0});
        for (std::size_t a = 1; a <= d1; ++a) {
            for (std::size_t b = a; b <= d1; ++b) {
                CHECK(interval_restrict(f, {a, b}) == interval_restrict(f1, {a, b}) * f2_empty);
            }
        }
        const auto f1_empty = interval_restrict(f1, {1, 0});
        for (std::size_t a = d1 + 1; a <= d1 + d2; ++a) {
            for (std::size_t b = a; b <= d1 + d2; ++b) {
                CHECK(interval_restrict(f, {a, b}) == f1_empty * interval_restrict(f2, {a - d1, b - d1}));
            }
        }
    }
}

TEST_CASE("partial derivative decomposition") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        const auto f = random_poly(kF, 3, 4, 8, rng);
        for (Var v = 0; v <= 3; ++v) {
            const auto xv = NCPolynomial::variable(kF, 3, v);
            const auto rest = f - xv * partial_first(f, v);
            bool starts_with_v = false;
            rest.for_each_term([&](WordView w, const FieldElement&) { starts_with_v |= !w.empty() && w[0] == v; });
            CHECK_FALSE(starts_with_v);
        }
    }
}

TEST_CASE("homogeneous parts and degrees") {
    const auto f = P("3 + x1 + x1.x2 + 2*x3.x3");
    CHECK(f.degree() == 2);
    CHECK(f.min_degree() == 0);
    CHECK_FALSE(f.is_homogeneous());
    CHECK(f.homogeneous_part(2) == P("x1.x2 + 2*x3.x3"));
    CHECK(f.homogeneous_part(5).is_zero());
    CHECK(P("4").is_constant());
    CHECK(NCPolynomial(kF, 1).degree() == -1);
}
