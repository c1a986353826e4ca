#include "ncl/measure.hpp"

#include <algorithm>
#include <map>

#include "ncl/generators.hpp"
#include "ncl/linalg.hpp"

namespace ncl {

RestrictionFamily build_family(std::span<const NCPolynomial> polys, std::size_t ell) {
    if (ell < 1) throw InvalidArgument("interval length must be at least 1");
    RestrictionFamily fam;
    fam.ell = ell;
    fam.source_count = polys.size();
    if (!polys.empty()) {
        fam.field = polys.front().field();
        fam.nvars = polys.front().nvars();
    }
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const auto& f = polys[i];
        if (!(f.field() == fam.field)) throw ConfigError("family sources use different fields");
        if (f.nvars() != fam.nvars) throw InvalidArgument("family sources use different variable universes");
        if (!f.is_homogeneous()) throw InvalidArgument("source " + std::to_string(i) + " is not homogeneous");
        if (f.is_zero()) continue;
        const auto d = static_cast<std::size_t>(f.degree());
        for (std::size_t a = 1; a + ell - 1 <= d; ++a) {
            Interval j{a, a + ell - 1};
            fam.members.push_back({i, j, interval_restrict(f, j)});
        }
    }
    return fam;
}

MeasureReport mu(const RestrictionFamily& family, RankMethod method) {
    MeasureReport r;
    r.ell = family.ell;
    r.family_size = family.members.size();
    r.field = family.field;

    // Columns in canonical word order so pivots are reproducible.
    std::map<Word, std::size_t> column;
    bool monomials = true;
    for (const auto& m : family.members) {
        monomials &= m.poly.term_count() <= 1;
        m.poly.for_each_term([&](WordView w, const FieldElement&) { column.emplace(Word(w.begin(), w.end()), 0); });
    }
    std::size_t next = 0;
    for (auto& [w, idx] : column) idx = next++;
    r.distinct_words = column.size();

    if (monomials && method == RankMethod::automatic) {
        std::vector<bool> used(column.size(), false);
        for (std::size_t i = 0; i < family.members.size(); ++i) {
            std::optional<std::size_t> col;
            family.members[i].poly.for_each_term(
                [&](WordView w, const FieldElement&) { col = column.at(Word(w.begin(), w.end())); });
            if (col && !used[*col]) {
                used[*col] = true;
                r.witness.push_back(i);
            }
        }
    } else {
        EchelonBasis basis(family.field);
        for (std::size_t i = 0; i < family.members.size(); ++i) {
            SparseRow row;
            family.members[i].poly.for_each_term([&](WordView w, const FieldElement& c) {
                row.emplace_back(column.at(Word(w.begin(), w.end())), c);
            });
            if (basis.insert(std::move(row))) r.witness.push_back(i);
        }
    }
    r.rank = r.witness.size();
    if (r.ell >= 2) r.bound = (r.rank + r.ell - 2) / (r.ell - 1);
    return r;
}

Certificate certify_lower_bound(std::span<const NCPolynomial> polys, std::size_t ell) {
    if (ell < 2) throw InvalidArgument("a lower bound needs interval length at least 2");
    Certificate cert;
    cert.report = mu(build_family(polys, ell), RankMethod::automatic);
    cert.bound = *cert.report.bound;
    cert.source_count = polys.size();
    cert.statement = "every homogeneous circuit computing all " + std::to_string(polys.size()) +
                     " source polynomials has at least " + std::to_string(cert.bound) +
                     " non-scalar product gates, since mu_" + std::to_string(ell) + " = " +
                     std::to_string(cert.report.rank) + " over field " + cert.report.field.name() +
                     " and mu_l <= (l-1) s_x";
    return cert;
}

LemmaCheck verify_measure_lemma(const Circuit& c, std::size_t ell, const Limits& limits) {
    if (ell < 2) throw InvalidArgument("the measure lemma needs interval length at least 2");
    const auto hom = check_homogeneous(c, WeightVector::unit(c.nvars()));
    if (!hom.homogeneous) {
        throw InvalidArgument("circuit is not homogeneous (gate " + std::to_string(*hom.failing_gate) + ")");
    }
    LemmaCheck out;
    out.non_scalar = metrics(c).non_scalar;
    out.limit = (ell - 1) * out.non_scalar;
    out.mu = mu(build_family(expand_all(c, limits), ell)).rank;
    out.holds = out.mu <= out.limit;
    return out;
}

RestrictionFamily esym_derivative_family(std::size_t n, std::size_t k, const Field& field) {
    if (k < 1 || k >= n) throw InvalidArgument("esym family needs 1 <= k < n");
    const auto e = esym(n, k + 1, field);
    std::vector<NCPolynomial> partials;
    for (std::size_t i = 1; i <= n - k; ++i) partials.push_back(partial_first(e, static_cast<Var>(i)));
    return build_family(partials, 2);
}

MeasureReport esym_family_rank(std::size_t n, std::size_t k, const Field& field) {
    return mu(esym_derivative_family(n, k, field), RankMethod::elimination);
}

}  // namespace ncl
