#include "ncl/builders.hpp"

#include <cmath>

namespace ncl {

std::string_view to_string(ConvolutionMethod m) { return m == ConvolutionMethod::naive ? "naive" : "karatsuba"; }

ConvolutionMethod parse_convolution_method(std::string_view s) {
    if (s == "naive") return ConvolutionMethod::naive;
    if (s == "karatsuba") return ConvolutionMethod::karatsuba;
    throw InvalidArgument("unknown convolution method '" + std::string(s) + "'");
}

namespace {

struct PolyRing {
    using Value = NCPolynomial;
    Field field;
    std::size_t nvars;
    Limits limits;

    Value zero() const { return NCPolynomial(field, nvars); }
    Value add(const Value& a, const Value& b) const { return ncl::add(a, b, limits); }
    Value sub(const Value& a, const Value& b) const { return ncl::sub(a, b, limits); }
    Value mul(const Value& a, const Value& b) const { return ncl::mul(a, b, limits); }
};

// Gates with light folding: an empty value is zero and `one` is the unit.
struct CircuitRing {
    using Value = std::optional<GateId>;
    CircuitBuilder& b;
    GateId one;
    std::optional<GateId> minus_one;

    Value zero() const { return std::nullopt; }
    Value add(const Value& x, const Value& y) {
        if (!x) return y;
        if (!y) return x;
        return b.add(*x, *y);
    }
    Value mul(const Value& x, const Value& y) {
        if (!x || !y) return std::nullopt;
        if (*x == one) return y;
        if (*y == one) return x;
        return b.mul(*x, *y);
    }
    Value sub(const Value& x, const Value& y) {
        if (!y) return x;
        if (!minus_one) minus_one = b.constant(-1);
        return add(x, b.mul(*minus_one, *y));
    }
};

std::vector<std::optional<GateId>> dnc_product(CircuitRing& ring, std::size_t lo, std::size_t hi,
                                                ConvolutionMethod method) {
    if (hi - lo == 1) return {ring.b.input(static_cast<Var>(lo + 1)), ring.one};
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    const auto left = dnc_product(ring, lo, mid, method);
    const auto right = dnc_product(ring, mid, hi, method);
    return convolve(ring, left, right, method);
}

}  // namespace

std::vector<NCPolynomial> convolve(const std::vector<NCPolynomial>& y, const std::vector<NCPolynomial>& z,
                                   ConvolutionMethod method, const Limits& limits) {
    if (y.empty() || z.empty()) return {};
    PolyRing ring{y.front().field(), y.front().nvars(), limits};
    return convolve(ring, y, z, method);
}

EsymCircuit build_esym_homogeneous(std::size_t n, const Field& field) {
    if (n < 1) throw InvalidArgument("esym builder needs n >= 1");
    if (n > kMaxVars) throw InvalidArgument("too many variables");
    CircuitBuilder b(field, n);
    const GateId one = b.constant(1);
    // row[d] = E^d over x_1..x_m
    std::vector<GateId> row{one, b.input(1)};
    for (std::size_t m = 2; m <= n; ++m) {
        const GateId xm = b.input(static_cast<Var>(m));
        std::vector<GateId> next(m + 1);
        next[0] = one;
        next[1] = b.add(row[1], xm);
        for (std::size_t d = 2; d < m; ++d) next[d] = b.add(b.mul(row[d - 1], xm), row[d]);
        next[m] = b.mul(row[m - 1], xm);
        row = std::move(next);
    }
    for (GateId g : row) b.mark_output(g);
    return {std::move(b).build(), row, "homogeneous", 1};
}

EsymCircuit build_esym_dnc(std::size_t n, ConvolutionMethod method, const Field& field) {
    if (n < 1) throw InvalidArgument("esym builder needs n >= 1");
    if (n > kMaxVars) throw InvalidArgument("too many variables");
    CircuitBuilder b(field, n);
    CircuitRing ring{b, b.constant(1), std::nullopt};
    const auto h = dnc_product(ring, 0, n, method);
    std::vector<GateId> by_degree(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        const auto& g = h[n - d];
        // A coefficient that folded to zero never happens for prod (x_i + t).
        by_degree[d] = g ? *g : b.constant(0);
        b.mark_output(by_degree[d]);
    }
    return {std::move(b).build(), by_degree, "dnc-" + std::string(to_string(method)), 0};
}

std::size_t tight_kappa(std::size_t d, std::size_t n) {
    if (n < 2 || d < 2) return 1;
    const double k = std::floor(0.5 * std::log2(static_cast<double>(d)) / std::log2(static_cast<double>(n)));
    return k < 1 ? 1 : static_cast<std::size_t>(k);
}

Circuit build_monomial_tight(const Word& word, std::size_t n, const Field& field) {
    if (word.size() < 2) throw InvalidArgument("tight monomial builder needs a word of length >= 2");
    for (Var v : word) {
        if (v < 1 || v > n) throw InvalidArgument("letter x" + std::to_string(v) + " outside [1," + std::to_string(n) + "]");
    }
    const std::size_t kappa = tight_kappa(word.size(), n);
    CircuitBuilder b(field, n);
    // table[L-1] holds the gates of all length-L words, indexed base n.
    std::vector<std::vector<GateId>> table(kappa);
    for (std::size_t v = 1; v <= n; ++v) table[0].push_back(b.input(static_cast<Var>(v)));
    for (std::size_t len = 2; len <= kappa; ++len) {
        const auto& prev = table[len - 2];
        for (std::size_t code = 0; code < prev.size() * n; ++code) {
            table[len - 1].push_back(b.mul(prev[code / n], table[0][code % n]));
        }
    }
    std::optional<GateId> acc;
    for (std::size_t start = 0; start < word.size(); start += kappa) {
        const std::size_t len = std::min(kappa, word.size() - start);
        std::size_t code = 0;
        for (std::size_t i = 0; i < len; ++i) code = code * n + (word[start + i] - 1);
        const GateId chunk = table[len - 1][code];
        acc = acc ? b.mul(*acc, chunk) : chunk;
    }
    b.mark_output(*acc);
    return std::move(b).build();
}

Telemetry telemetry(const Circuit& c, std::size_t n, std::string method) {
    const auto m = metrics(c);
    return {n, std::move(method), m.size, m.non_scalar, m.depth};
}

}  // namespace ncl
