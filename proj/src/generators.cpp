#include "ncl/generators.hpp"

#include <unordered_set>

namespace ncl {

std::vector<std::uint16_t> DeBruijnSequence::linear() const {
    std::vector<std::uint16_t> out = cyclic;
    for (std::size_t i = 0; i + 1 < order && i < cyclic.size(); ++i) out.push_back(cyclic[i]);
    return out;
}

std::string to_digits(const std::vector<std::uint16_t>& symbols, std::size_t alphabet) {
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (alphabet <= 10) {
            out += static_cast<char>('0' + symbols[i]);
        } else {
            if (i) out += ',';
            out += std::to_string(symbols[i]);
        }
    }
    return out;
}

bool is_debruijn(const DeBruijnSequence& s) {
    const std::size_t n = s.cyclic.size();
    std::size_t expected = 1;
    for (std::size_t i = 0; i < s.order; ++i) expected *= s.alphabet;
    if (n != expected) return false;
    std::vector<bool> seen(expected, false);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t code = 0;
        for (std::size_t j = 0; j < s.order; ++j) {
            const auto sym = s.cyclic[(i + j) % n];
            if (sym >= s.alphabet) return false;
            code = code * s.alphabet + sym;
        }
        if (seen[code]) return false;
        seen[code] = true;
    }
    return true;
}

DeBruijnSequence debruijn_binary_greedy(std::size_t k) {
    if (k < 1) throw InvalidArgument("de Bruijn order must be at least 1");
    if (k > 40) throw BudgetExceeded("de Bruijn order " + std::to_string(k) + " is too large");
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    std::vector<bool> seen(std::size_t{1} << k, false);
    std::vector<std::uint16_t> s(k, 0);
    std::uint64_t window = 0;
    seen[0] = true;
    for (;;) {
        const std::uint64_t with_one = ((window << 1) | 1) & mask;
        const std::uint64_t with_zero = (window << 1) & mask;
        if (!seen[with_one]) {
            window = with_one;
            s.push_back(1);
        } else if (!seen[with_zero]) {
            window = with_zero;
            s.push_back(0);
        } else {
            break;
        }
        seen[window] = true;
    }
    DeBruijnSequence out{2, k, {}};
    out.cyclic.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::size_t{1} << k));
    return out;
}

DeBruijnSequence debruijn_general(std::size_t alphabet, std::size_t k, std::size_t max_length) {
    if (alphabet < 2) throw InvalidArgument("de Bruijn alphabet must have at least 2 symbols");
    if (alphabet > 65535) throw InvalidArgument("de Bruijn alphabet too large");
    if (k < 1) throw InvalidArgument("de Bruijn order must be at least 1");
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > max_length / alphabet) {
            throw BudgetExceeded("de Bruijn sequence of order " + std::to_string(k) + " over " +
                                 std::to_string(alphabet) + " symbols exceeds " + std::to_string(max_length));
        }
        total *= alphabet;
    }
    // Iterative Fredricksen-Kessler-Maiorana: visit prenecklaces in lex
    // order and emit a[1..p] whenever p divides k.
    DeBruijnSequence out{alphabet, k, {}};
    out.cyclic.reserve(total);
    std::vector<std::size_t> a(k + 1, 0);
    std::size_t p = 1;
    for (;;) {
        if (k % p == 0) {
            for (std::size_t j = 1; j <= p; ++j) out.cyclic.push_back(static_cast<std::uint16_t>(a[j]));
        }
        std::size_t i = k;
        while (i > 0 && a[i] == alphabet - 1) --i;
        if (i == 0) break;
        ++a[i];
        for (std::size_t j = i + 1; j <= k; ++j) a[j] = a[j - i];
        p = i;
    }
    return out;
}

std::size_t ceil_log2(std::size_t d) {
    std::size_t l = 0;
    while ((std::size_t{1} << l) < d) ++l;
    return l;
}

NCPolynomial hard_monomial_dB(std::size_t d, const Field& field) {
    if (d < 2) throw InvalidArgument("dB_d needs d >= 2");
    const auto lin = debruijn_binary_greedy(ceil_log2(d)).linear();
    Word w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = static_cast<Var>(lin[i] + 1);
    return NCPolynomial::monomial(field, 2, w);
}

MainndFamily hard_poly_mainnd(std::size_t n, std::size_t d, const Field& field) {
    if (n < 2) throw InvalidArgument("mainnd family needs n >= 2");
    if (d < 3) throw InvalidArgument("mainnd family needs d >= 3; use esym for d = 2");
    if (n > kMaxVars) throw InvalidArgument("too many variables");
    std::size_t k = 1, power = n;  // power = n^k
    while (power < n * (d - 1)) {
        ++k;
        power *= n;
    }
    MainndFamily out;
    out.k = k;
    out.sigma = debruijn_general(n, k);
    const auto lin = out.sigma.linear();
    out.f = NCPolynomial(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        Word block(d - 1);
        for (std::size_t j = 0; j + 1 < d; ++j) block[j] = static_cast<Var>(lin[i * (d - 1) + j] + 1);
        out.parts.push_back(NCPolynomial::monomial(field, n, block));
        out.f = out.f + NCPolynomial::variable(field, n, static_cast<Var>(i + 1)) * out.parts.back();
    }
    return out;
}

NCPolynomial esym(std::size_t n, std::size_t d, const Field& field, const Limits& limits) {
    if (n > kMaxVars) throw InvalidArgument("too many variables");
    if (d > n) return NCPolynomial(field, n);
    // C(n, d) with an early exit once it passes the budget.
    std::size_t count = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        count = count * (n - d + i) / i;
        if (count > limits.term_budget) {
            throw BudgetExceeded("E^" + std::to_string(d) + "_" + std::to_string(n) + " has more than " +
                                 std::to_string(limits.term_budget) + " terms");
        }
    }
    std::vector<std::pair<Word, FieldElement>> terms;
    terms.reserve(count);
    const auto one = FieldElement::one(field);
    Word w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = static_cast<Var>(i + 1);
    for (;;) {
        terms.emplace_back(w, one);
        std::size_t i = d;
        while (i > 0 && w[i - 1] == n - d + i) --i;
        if (i == 0) break;
        ++w[i - 1];
        for (std::size_t j = i; j < d; ++j) w[j] = static_cast<Var>(w[j - 1] + 1);
    }
    return NCPolynomial::from_terms(field, n, terms);
}

NCPolynomial grid_monomial(std::size_t n, const Field& field) {
    if (n < 1) throw InvalidArgument("grid monomial needs n >= 1");
    if (n > kMaxVars) throw InvalidArgument("too many variables");
    Word w;
    w.reserve(2 * n * n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            w.push_back(static_cast<Var>(i));
            w.push_back(static_cast<Var>(j));
        }
    }
    return NCPolynomial::monomial(field, n, w);
}

}  // namespace ncl
