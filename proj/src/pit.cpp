#include "ncl/pit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ncl {

std::string_view to_string(PitVerdict::Kind k) {
    switch (k) {
        case PitVerdict::Kind::equal: return "equal";
        case PitVerdict::Kind::unequal: return "unequal";
        case PitVerdict::Kind::probably_equal: return "probably_equal";
    }
    return "?";
}

namespace {

// Row-major square matrix over GF(p).
struct Mat {
    std::size_t n = 0;
    std::vector<std::uint64_t> a;

    static Mat identity(std::size_t n) {
        Mat m{n, std::vector<std::uint64_t>(n * n, 0)};
        for (std::size_t i = 0; i < n; ++i) m.a[i * n + i] = 1;
        return m;
    }
    static Mat scalar(std::size_t n, std::uint64_t c) {
        Mat m{n, std::vector<std::uint64_t>(n * n, 0)};
        for (std::size_t i = 0; i < n; ++i) m.a[i * n + i] = c;
        return m;
    }
    bool operator==(const Mat&) const = default;
};

Mat add(const Mat& x, const Mat& y, std::uint64_t p) {
    Mat r{x.n, std::vector<std::uint64_t>(x.a.size())};
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = modp::add(x.a[i], y.a[i], p);
    return r;
}

void add_scaled(Mat& acc, const Mat& x, std::uint64_t c, std::uint64_t p) {
    for (std::size_t i = 0; i < x.a.size(); ++i) acc.a[i] = modp::add(acc.a[i], modp::mul(c, x.a[i], p), p);
}

Mat mul(const Mat& x, const Mat& y, std::uint64_t p) {
    const std::size_t n = x.n;
    Mat r{n, std::vector<std::uint64_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t xik = x.a[i * n + k];
            if (xik == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                r.a[i * n + j] = modp::add(r.a[i * n + j], modp::mul(xik, y.a[k * n + j], p), p);
            }
        }
    }
    return r;
}

std::uint64_t residue_of(const FieldElement& e, std::uint64_t p) {
    return e.field().is_rational() ? modp::reduce(e.rational(), p) : e.residue();
}

// Evaluates the cones of the targets, calling seen(i, value) at each
// target; other values are dropped once their last parent is done.
template <class Seen>
void eval_gates(const Circuit& c, const std::vector<bool>& target, const std::vector<Mat>& vars, std::uint64_t p,
                Seen&& seen) {
    const std::size_t dim = vars.front().n;
    const std::size_t n = c.gate_count();
    std::vector<std::size_t> uses(n, 0);
    std::vector<bool> needed = target;
    for (std::size_t i = n; i-- > 0;) {
        if (!needed[i] || c.gates()[i].is_leaf()) continue;
        for (std::size_t ch : {c.left_index(i), c.right_index(i)}) {
            needed[ch] = true;
            ++uses[ch];
        }
    }
    std::vector<Mat> value(n);
    auto release = [&](std::size_t i) {
        if (uses[i] == 0) value[i] = Mat{};
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (!needed[i]) continue;
        const Gate& g = c.gates()[i];
        switch (g.kind) {
            case GateKind::input: value[i] = vars[g.var]; break;
            case GateKind::constant: value[i] = Mat::scalar(dim, residue_of(g.value, p)); break;
            case GateKind::add:
            case GateKind::mul: {
                const std::size_t l = c.left_index(i), r = c.right_index(i);
                value[i] = g.kind == GateKind::add ? add(value[l], value[r], p) : mul(value[l], value[r], p);
                --uses[l];
                --uses[r];
                release(l);
                if (r != l) release(r);
                break;
            }
        }
        if (target[i]) {
            seen(i, value[i]);
            release(i);
        }
    }
}

// Words arrive in canonical order, so neighbours share prefixes; prefix
// products are kept on a stack.
Mat eval_poly(const NCPolynomial& f, const std::vector<Mat>& vars, std::uint64_t p) {
    const std::size_t dim = vars.front().n;
    Mat acc = Mat::scalar(dim, 0);
    std::vector<Mat> prefix{Mat::identity(dim)};
    Word prev;
    f.for_each_term([&](WordView w, const FieldElement& coeff) {
        std::size_t common = 0;
        while (common < w.size() && common < prev.size() && w[common] == prev[common]) ++common;
        prefix.resize(common + 1);
        for (std::size_t i = common; i < w.size(); ++i) prefix.push_back(mul(prefix.back(), vars[w[i]], p));
        add_scaled(acc, prefix.back(), residue_of(coeff, p), p);
        prev.assign(w.begin(), w.end());
    });
    return acc;
}

std::uint64_t random_prime(std::mt19937_64& rng) {
    for (;;) {
        const std::uint64_t cand = (std::uint64_t{1} << 60) | (rng() & ((std::uint64_t{1} << 60) - 1)) | 1;
        if (is_prime(cand)) return cand;
    }
}

}  // namespace

namespace {

std::size_t poly_degree(const NCPolynomial& f) { return f.is_zero() ? 0 : static_cast<std::size_t>(f.degree()); }

// Shared trial loop. `alive` enters with the targets set and leaves with
// the survivors.
PitVerdict run_trials(const Circuit& c, std::vector<bool>& alive, const NCPolynomial& f, std::size_t degree,
                      const PitOptions& opts) {
    if (!(f.field() == c.field())) throw ConfigError("polynomial and circuit use different fields");
    if (opts.trials < 1) throw InvalidArgument("pit needs at least one trial");
    const std::size_t dim = opts.dim == 0 ? pit_min_dim(degree) : opts.dim;
    if (dim < pit_min_dim(degree)) {
        throw InvalidArgument("matrix dimension " + std::to_string(dim) + " is below " +
                              std::to_string(pit_min_dim(degree)) + " for degree " + std::to_string(degree) +
                              "; small matrices satisfy polynomial identities");
    }

    PitVerdict v;
    v.dim = dim;
    v.degree_bound = degree;
    std::mt19937_64 rng(opts.seed);
    double per_trial = 0;
    for (std::size_t t = 0; t < opts.trials; ++t) {
        std::uint64_t p = c.field().modulus();
        std::vector<bool> next;
        for (;;) {
            if (c.field().is_rational()) p = random_prime(rng);
            std::vector<Mat> vars(std::max(c.nvars(), f.nvars()) + 1);
            for (auto& m : vars) {
                m = Mat{dim, std::vector<std::uint64_t>(dim * dim)};
                for (auto& e : m.a) e = rng() % p;
            }
            try {
                const Mat rhs = eval_poly(f, vars, p);
                next = alive;
                eval_gates(c, alive, vars, p, [&](std::size_t i, const Mat& lhs) {
                    if (!(lhs == rhs)) next[i] = false;
                });
                break;
            } catch (const DivisionByZero&) {
                // A denominator vanished modulo this prime; GF(p) never gets here.
                if (c.field().is_prime()) throw;
            }
        }
        alive = std::move(next);
        v.modulus = p;
        v.trials = t + 1;
        if (std::find(alive.begin(), alive.end(), true) == alive.end()) {
            v.kind = PitVerdict::Kind::unequal;
            v.failure_bound = 0;
            return v;
        }
        per_trial = std::max(per_trial, std::min(1.0, static_cast<double>(degree) / static_cast<double>(p)));
    }
    if (degree == 0 && c.field().is_prime()) {
        v.kind = PitVerdict::Kind::equal;
        v.failure_bound = 0;
    } else {
        v.kind = PitVerdict::Kind::probably_equal;
        v.failure_bound = std::pow(per_trial, static_cast<double>(opts.trials));
    }
    return v;
}

}  // namespace

PitVerdict pit_matrix(const Circuit& c, GateId gate, const NCPolynomial& f, const PitOptions& opts) {
    require_valid(c);
    const std::size_t target = c.require_index(gate);
    std::vector<bool> alive(c.gate_count(), false);
    alive[target] = true;
    return run_trials(c, alive, f, std::max(degree_bounds(c)[target], poly_degree(f)), opts);
}

PitSearch pit_search(const Circuit& c, std::span<const GateId> candidates, const NCPolynomial& f,
                     const PitOptions& opts) {
    require_valid(c);
    const auto bounds = degree_bounds(c);
    const std::size_t fdeg = poly_degree(f);
    std::vector<bool> alive(c.gate_count(), false);
    std::size_t degree = fdeg;
    bool any = false;
    for (GateId g : candidates) {
        const std::size_t i = c.require_index(g);
        if (bounds[i] < fdeg) continue;
        alive[i] = any = true;
        degree = std::max(degree, bounds[i]);
    }
    PitSearch out;
    if (!any) {
        out.verdict.kind = PitVerdict::Kind::unequal;
        out.verdict.dim = opts.dim == 0 ? pit_min_dim(degree) : opts.dim;
        out.verdict.degree_bound = degree;
        return out;
    }
    out.verdict = run_trials(c, alive, f, degree, opts);
    if (out.verdict.kind != PitVerdict::Kind::unequal) {
        for (GateId g : candidates) {
            if (alive[c.require_index(g)]) {
                out.gate = g;
                break;
            }
        }
    }
    return out;
}

}  // namespace ncl
