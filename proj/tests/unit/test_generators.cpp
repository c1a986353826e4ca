#include <doctest.h>

#include <set>

#include "ncl/generators.hpp"

using namespace ncl;

namespace {

std::string digits(const std::vector<std::uint16_t>& s) { return to_digits(s, 2); }

std::set<Word> windows(const NCPolynomial& monomial, std::size_t ell) {
    std::set<Word> out;
    monomial.for_each_term([&](WordView w, const FieldElement&) {
        for (std::size_t i = 0; i + ell <= w.size(); ++i) out.emplace(w.begin() + i, w.begin() + i + ell);
    });
    return out;
}

Word only_word(const NCPolynomial& p) {
    REQUIRE(p.term_count() == 1);
    Word out;
    p.for_each_term([&](WordView w, const FieldElement&) { out.assign(w.begin(), w.end()); });
    return out;
}

}  // namespace

TEST_CASE("prefer-one greedy de Bruijn") {
    auto s = debruijn_binary_greedy(2);
    CHECK(digits(s.linear()) == "00110");
    CHECK(digits(s.cyclic) == "0011");
    s = debruijn_binary_greedy(3);
    CHECK(digits(s.linear()) == "0001110100");
    CHECK(digits(s.cyclic) == "00011101");
    CHECK(digits(debruijn_binary_greedy(1).cyclic) == "01");
    for (std::size_t k = 1; k <= 14; ++k) CHECK(is_debruijn(debruijn_binary_greedy(k)));
}

TEST_CASE("Lyndon de Bruijn over any alphabet") {
    CHECK(to_digits(debruijn_general(3, 1).cyclic, 3) == "012");
    CHECK(to_digits(debruijn_general(2, 2).cyclic, 2) == "0011");
    CHECK(debruijn_general(3, 2).cyclic.size() == 9);
    for (std::size_t a = 2; a <= 6; ++a) {
        for (std::size_t k = 1; k <= 5; ++k) {
            const auto s = debruijn_general(a, k);
            CHECK(is_debruijn(s));
            // Linearized form holds every window as a plain substring.
            const auto lin = s.linear();
            CHECK(lin.size() == s.cyclic.size() + k - 1);
        }
    }
    CHECK(to_digits(debruijn_general(11, 1).cyclic, 11) == "0,1,2,3,4,5,6,7,8,9,10");
    CHECK_THROWS_AS(debruijn_general(10, 9, 1000), BudgetExceeded);
    CHECK_THROWS_AS(debruijn_general(1, 3), InvalidArgument);
    CHECK_FALSE(is_debruijn({2, 2, {0, 0, 1, 0}}));
}

TEST_CASE("de Bruijn monomials") {
    CHECK(only_word(hard_monomial_dB(4)) == Word{1, 1, 2, 2});
    CHECK(only_word(hard_monomial_dB(8)) == Word{1, 1, 1, 2, 2, 2, 1, 2});
    CHECK(only_word(hard_monomial_dB(2)) == Word{1, 2});
    CHECK(windows(hard_monomial_dB(8), 3).size() == 6);
    for (std::size_t d = 4; d <= 512; ++d) {
        const auto l = ceil_log2(d);
        CHECK(windows(hard_monomial_dB(d), l).size() == d - l + 1);
    }
    CHECK_THROWS_AS(hard_monomial_dB(1), InvalidArgument);
}

TEST_CASE("mainnd family") {
    auto fam = hard_poly_mainnd(2, 3);
    CHECK(fam.k == 2);
    CHECK(to_string(fam.f) == "1*x1.x1.x1 + 1*x2.x2.x2");
    CHECK(to_string(fam.parts[0]) == "1*x1.x1");
    CHECK(hard_poly_mainnd(3, 5).k == 3);
    CHECK(hard_poly_mainnd(4, 4).k == 2);
    CHECK(hard_poly_mainnd(5, 9).k == 3);
    CHECK(hard_poly_mainnd(7, 5).k == 2);
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t d = 3; d <= 9; ++d) {
            fam = hard_poly_mainnd(n, d);
            CHECK(fam.f.is_homogeneous());
            CHECK(fam.f.degree() == static_cast<int>(d));
            std::set<Word> parts, wins;
            std::size_t window_count = 0;
            for (const auto& p : fam.parts) {
                const auto w = only_word(p);
                CHECK(w.size() == d - 1);
                parts.insert(w);
                const auto ws = windows(p, fam.k);
                window_count += d - fam.k;
                wins.insert(ws.begin(), ws.end());
            }
            CHECK(parts.size() == n);
            CHECK(wins.size() == window_count);
        }
    }
    CHECK_THROWS_AS(hard_poly_mainnd(1, 4), InvalidArgument);
    CHECK_THROWS_AS(hard_poly_mainnd(3, 2), InvalidArgument);
}

TEST_CASE("ordered symmetric polynomials") {
    CHECK(to_string(esym(3, 2)) == "1*x1.x2 + 1*x1.x3 + 1*x2.x3");
    CHECK(to_string(esym(0, 0)) == "1");
    CHECK(to_string(esym(5, 0)) == "1");
    CHECK(esym(2, 5).is_zero());
    std::size_t binom[13][13] = {};
    for (std::size_t n = 0; n <= 12; ++n) {
        binom[n][0] = 1;
        for (std::size_t d = 1; d <= n; ++d) binom[n][d] = binom[n - 1][d - 1] + (d < n ? binom[n - 1][d] : 0);
    }
    for (std::size_t n = 0; n <= 12; ++n) {
        for (std::size_t d = 0; d <= n; ++d) {
            const auto e = esym(n, d);
            CHECK(e.term_count() == binom[n][d]);
            e.for_each_term([&](WordView w, const FieldElement& c) {
                CHECK(c.is_one());
                CHECK(std::adjacent_find(w.begin(), w.end(), std::greater_equal<>{}) == w.end());
            });
        }
    }
    CHECK_THROWS_AS(esym(30, 15, {}, Limits{1000}), BudgetExceeded);
}

TEST_CASE("grid monomial") {
    CHECK(only_word(grid_monomial(1)) == Word{1, 1});
    CHECK(only_word(grid_monomial(2)) == Word{1, 1, 1, 2, 2, 1, 2, 2});
    CHECK(grid_monomial(4).degree() == 32);
}
