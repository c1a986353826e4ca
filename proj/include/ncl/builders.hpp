#pragma once

// Explicit circuits for the ordered symmetric polynomials and for single
// words, plus the convolution they are assembled from.

#include <optional>
#include <string>

#include "ncl/circuit.hpp"

namespace ncl {

enum class ConvolutionMethod { naive, karatsuba };

std::string_view to_string(ConvolutionMethod m);
ConvolutionMethod parse_convolution_method(std::string_view s);

/// c_i = sum_j y_j z_{i-j}, every product taken y before z. `Ring` supplies
/// Value, zero(), add(a, b), sub(a, b) and mul(a, b); only mul needs to
/// respect order.
template <class Ring>
std::vector<typename Ring::Value> convolve(Ring& ring, const std::vector<typename Ring::Value>& y,
                                           const std::vector<typename Ring::Value>& z, ConvolutionMethod method);

/// Coefficient vectors in a central variable t with polynomial entries.
std::vector<NCPolynomial> convolve(const std::vector<NCPolynomial>& y, const std::vector<NCPolynomial>& z,
                                   ConvolutionMethod method, const Limits& limits = {});

struct EsymCircuit {
    Circuit circuit;
    /// by_degree[d] computes E^d_n.
    std::vector<GateId> by_degree;
    std::string method;
    /// size <= size_constant * n^2 for the homogeneous builder.
    std::size_t size_constant = 0;
};

/// E^d_m = E^{d-1}_{m-1} x_m + E^d_{m-1}; n(n-1) gates, homogeneous.
EsymCircuit build_esym_homogeneous(std::size_t n, const Field& field = {});

/// Coefficients of prod_i (x_i + t) by halving; E^d_n is the coefficient of
/// t^(n-d).
EsymCircuit build_esym_dnc(std::size_t n, ConvolutionMethod method, const Field& field = {});

/// Table of every word of length <= kappa, then a chain of table lookups.
/// Products only. Requires |word| >= 2 and letters in [1, n].
Circuit build_monomial_tight(const Word& word, std::size_t n, const Field& field = {});

/// max(1, floor(log2(d) / (2 log2(n)))), and 1 when n = 1.
std::size_t tight_kappa(std::size_t d, std::size_t n);

struct Telemetry {
    std::size_t n = 0;
    std::string method;
    std::size_t size = 0;
    std::size_t non_scalar = 0;
    std::size_t depth = 0;
};

Telemetry telemetry(const Circuit& c, std::size_t n, std::string method);

// ---------------------------------------------------------------------------

namespace detail {

template <class Ring, class V = typename Ring::Value>
std::vector<V> convolve_naive(Ring& ring, const std::vector<V>& y, const std::vector<V>& z) {
    if (y.empty() || z.empty()) return {};
    std::vector<V> c(y.size() + z.size() - 1, ring.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::size_t lo = i + 1 > z.size() ? i + 1 - z.size() : 0;
        const std::size_t hi = std::min(i, y.size() - 1);
        for (std::size_t j = lo; j <= hi; ++j) c[i] = ring.add(c[i], ring.mul(y[j], z[i - j]));
    }
    return c;
}

// Equal lengths m >= 1; result has 2m - 1 entries.
template <class Ring, class V = typename Ring::Value>
std::vector<V> karatsuba(Ring& ring, const std::vector<V>& y, const std::vector<V>& z) {
    const std::size_t m = y.size();
    if (m == 1) return {ring.mul(y[0], z[0])};
    const std::size_t h = (m + 1) / 2;
    std::vector<V> y0(y.begin(), y.begin() + h), y1(y.begin() + h, y.end());
    std::vector<V> z0(z.begin(), z.begin() + h), z1(z.begin() + h, z.end());
    y1.resize(h, ring.zero());
    z1.resize(h, ring.zero());
    std::vector<V> ys(h), zs(h);
    for (std::size_t i = 0; i < h; ++i) {
        ys[i] = ring.add(y0[i], y1[i]);
        zs[i] = ring.add(z0[i], z1[i]);
    }
    const auto p0 = karatsuba(ring, y0, z0);
    const auto p2 = karatsuba(ring, y1, z1);
    auto p1 = karatsuba(ring, ys, zs);
    std::vector<V> c(2 * m - 1, ring.zero());
    for (std::size_t i = 0; i < p0.size(); ++i) c[i] = ring.add(c[i], p0[i]);
    for (std::size_t i = 0; i < p1.size() && i + h < c.size(); ++i) {
        c[i + h] = ring.add(c[i + h], ring.sub(p1[i], ring.add(p0[i], p2[i])));
    }
    for (std::size_t i = 0; i < p2.size() && i + 2 * h < c.size(); ++i) c[i + 2 * h] = ring.add(c[i + 2 * h], p2[i]);
    return c;
}

}  // namespace detail

template <class Ring>
std::vector<typename Ring::Value> convolve(Ring& ring, const std::vector<typename Ring::Value>& y,
                                           const std::vector<typename Ring::Value>& z, ConvolutionMethod method) {
    if (y.empty() || z.empty()) return {};
    if (method == ConvolutionMethod::naive) return detail::convolve_naive(ring, y, z);
    const std::size_t m = std::max(y.size(), z.size());
    auto yp = y, zp = z;
    yp.resize(m, ring.zero());
    zp.resize(m, ring.zero());
    auto c = detail::karatsuba(ring, yp, zp);
    c.resize(y.size() + z.size() - 1);
    return c;
}

}  // namespace ncl
