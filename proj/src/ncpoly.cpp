#include "ncl/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>

namespace ncl {

WeightVector::WeightVector(std::vector<std::uint64_t> w, std::uint64_t w0) {
    weights_.reserve(w.size() + 1);
    weights_.assign(1, w0);
    weights_.insert(weights_.end(), w.begin(), w.end());
}

WeightVector WeightVector::unit(std::size_t nvars) { return WeightVector(std::vector<std::uint64_t>(nvars, 1)); }

std::uint64_t WeightVector::operator[](Var v) const {
    if (v >= weights_.size()) {
        throw InvalidArgument("no weight for x" + std::to_string(v) + " (weight vector covers " +
                              std::to_string(nvars()) + " variables)");
    }
    return weights_[v];
}

// Coefficient kernels. Algorithms below are written once against this
// interface and instantiated for GF(p) and Q.
struct PolyOps {
    using Part = NCPolynomial::Part;

    struct Prime {
        std::uint64_t p;
        using value_type = std::uint64_t;

        static std::vector<value_type>& coeffs(Part& x) { return x.residues; }
        static const std::vector<value_type>& coeffs(const Part& x) { return x.residues; }
        value_type add(value_type a, value_type b) const { return modp::add(a, b, p); }
        value_type mul(value_type a, value_type b) const { return modp::mul(a, b, p); }
        value_type neg(value_type a) const { return modp::neg(a, p); }
        static bool zero(value_type a) { return a == 0; }
        static FieldElement element(const Field& f, value_type a) { return FieldElement::from_residue(f, a); }
        static value_type from(const FieldElement& e) { return e.residue(); }
    };

    struct Rational {
        using value_type = mpq_class;

        static std::vector<value_type>& coeffs(Part& x) { return x.rationals; }
        static const std::vector<value_type>& coeffs(const Part& x) { return x.rationals; }
        static value_type add(const value_type& a, const value_type& b) { return a + b; }
        static value_type mul(const value_type& a, const value_type& b) { return a * b; }
        static value_type neg(const value_type& a) { return -a; }
        static bool zero(const value_type& a) { return sgn(a) == 0; }
        static FieldElement element(const Field& f, const value_type& a) { return FieldElement::from_rational(f, a); }
        static value_type from(const FieldElement& e) { return e.rational(); }
    };

    template <class Fn>
    static decltype(auto) dispatch(const Field& f, Fn&& fn) {
        if (f.is_rational()) return fn(Rational{});
        return fn(Prime{f.modulus()});
    }

    static bool rational(const NCPolynomial& f) { return f.field_.is_rational(); }

    static WordView word(const Part& part, std::size_t i) {
        return WordView(part.letters.data() + i * part.degree, part.degree);
    }

    static bool word_less(WordView a, WordView b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

    static void check_compatible(const NCPolynomial& f, const NCPolynomial& g) {
        if (!(f.field_ == g.field_)) {
            throw ConfigError("field mismatch: " + f.field_.name() + " vs " + g.field_.name());
        }
        if (f.nvars_ != g.nvars_) {
            throw InvalidArgument("variable universe mismatch: " + std::to_string(f.nvars_) + " vs " +
                                  std::to_string(g.nvars_));
        }
    }

    static void check_budget(std::size_t terms, const Limits& limits) {
        if (terms > limits.term_budget) {
            throw BudgetExceeded("expansion would produce " + std::to_string(terms) + " terms (budget " +
                                 std::to_string(limits.term_budget) + ")");
        }
    }

    // Sorts an unsorted same-degree part, combining equal words and
    // dropping zeros.
    template <class K>
    static Part canonicalize(const K& k, Part raw) {
        auto& c = K::coeffs(raw);
        const std::size_t n = c.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return word_less(word(raw, a), word(raw, b));
        });
        Part out;
        out.degree = raw.degree;
        auto& oc = K::coeffs(out);
        for (std::size_t i = 0; i < n;) {
            WordView w = word(raw, order[i]);
            auto acc = c[order[i]];
            std::size_t j = i + 1;
            for (; j < n && std::ranges::equal(word(raw, order[j]), w); ++j) acc = k.add(acc, c[order[j]]);
            if (!K::zero(acc)) {
                out.letters.insert(out.letters.end(), w.begin(), w.end());
                oc.push_back(std::move(acc));
            }
            i = j;
        }
        return out;
    }

    // Sum of two canonical parts of the same degree.
    template <class K>
    static Part merge(const K& k, const Part& a, const Part& b) {
        const auto& ac = K::coeffs(a);
        const auto& bc = K::coeffs(b);
        Part out;
        out.degree = a.degree;
        auto& oc = K::coeffs(out);
        oc.reserve(ac.size() + bc.size());
        out.letters.reserve(a.letters.size() + b.letters.size());
        std::size_t i = 0, j = 0;
        auto emit = [&](WordView w, auto v) {
            out.letters.insert(out.letters.end(), w.begin(), w.end());
            oc.push_back(std::move(v));
        };
        while (i < ac.size() || j < bc.size()) {
            if (j == bc.size()) {
                emit(word(a, i), ac[i]);
                ++i;
                continue;
            }
            if (i == ac.size()) {
                emit(word(b, j), bc[j]);
                ++j;
                continue;
            }
            WordView wa = word(a, i);
            WordView wb = word(b, j);
            auto cmp = std::lexicographical_compare_three_way(wa.begin(), wa.end(), wb.begin(), wb.end());
            if (cmp < 0) {
                emit(wa, ac[i++]);
            } else if (cmp > 0) {
                emit(wb, bc[j++]);
            } else {
                auto v = k.add(ac[i++], bc[j++]);
                if (!K::zero(v)) emit(wa, std::move(v));
            }
        }
        oc.shrink_to_fit();
        out.letters.shrink_to_fit();
        return out;
    }

    template <class K>
    static std::vector<Part> merge_all(const K& k, const std::vector<Part>& a, const std::vector<Part>& b) {
        std::vector<Part> out;
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() || j != b.end()) {
            if (j == b.end() || (i != a.end() && i->degree < j->degree)) {
                out.push_back(*i++);
            } else if (i == a.end() || j->degree < i->degree) {
                out.push_back(*j++);
            } else {
                Part m = merge(k, *i++, *j++);
                if (!K::coeffs(m).empty()) out.push_back(std::move(m));
            }
        }
        return out;
    }

    // Product of two canonical homogeneous parts. Concatenating words of
    // fixed lengths preserves lexicographic order, so the result is
    // already canonical.
    template <class K>
    static Part product(const K& k, const Part& a, const Part& b) {
        const auto& ac = K::coeffs(a);
        const auto& bc = K::coeffs(b);
        Part out;
        out.degree = a.degree + b.degree;
        auto& oc = K::coeffs(out);
        oc.reserve(ac.size() * bc.size());
        out.letters.reserve(ac.size() * bc.size() * out.degree);
        for (std::size_t i = 0; i < ac.size(); ++i) {
            WordView wa = word(a, i);
            for (std::size_t j = 0; j < bc.size(); ++j) {
                WordView wb = word(b, j);
                out.letters.insert(out.letters.end(), wa.begin(), wa.end());
                out.letters.insert(out.letters.end(), wb.begin(), wb.end());
                oc.push_back(k.mul(ac[i], bc[j]));
            }
        }
        return out;
    }

    template <class K>
    static NCPolynomial mul(const K& k, const NCPolynomial& f, const NCPolynomial& g) {
        NCPolynomial out(f.field_, f.nvars_);
        if (f.parts_.empty() || g.parts_.empty()) return out;
        const std::size_t top = f.parts_.back().degree + g.parts_.back().degree;
        for (std::size_t d = f.parts_.front().degree + g.parts_.front().degree; d <= top; ++d) {
            std::vector<Part> runs;
            for (const Part& a : f.parts_) {
                if (a.degree > d) break;
                for (const Part& b : g.parts_) {
                    if (a.degree + b.degree == d) runs.push_back(product(k, a, b));
                }
            }
            // Balanced pairwise merging.
            while (runs.size() > 1) {
                std::vector<Part> next;
                for (std::size_t i = 0; i + 1 < runs.size(); i += 2) next.push_back(merge(k, runs[i], runs[i + 1]));
                if (runs.size() % 2) next.push_back(std::move(runs.back()));
                runs = std::move(next);
            }
            if (!runs.empty() && !K::coeffs(runs.front()).empty()) out.parts_.push_back(std::move(runs.front()));
        }
        return out;
    }

    template <class K>
    static void scale_part(const K& k, Part& p, const typename K::value_type& c) {
        for (auto& v : K::coeffs(p)) v = k.mul(v, c);
    }

    static std::size_t size(const NCPolynomial& f) {
        std::size_t n = 0;
        for (const Part& p : f.parts_) n += p.size(rational(f));
        return n;
    }

    static const Part* find_part(const NCPolynomial& f, std::size_t degree) {
        auto it = std::lower_bound(f.parts_.begin(), f.parts_.end(), degree,
                                   [](const Part& p, std::size_t d) { return p.degree < d; });
        return it != f.parts_.end() && it->degree == degree ? &*it : nullptr;
    }

    static NCPolynomial from_terms(const Field& field, std::size_t nvars,
                                   const std::vector<std::pair<Word, FieldElement>>& terms) {
        if (nvars > kMaxVars) throw InvalidArgument("too many variables");
        NCPolynomial out(field, nvars);
        return dispatch(field, [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            std::vector<Part> raw;
            for (const auto& [w, c] : terms) {
                if (!(c.field() == field)) throw ConfigError("coefficient from field " + c.field().name());
                for (Var v : w) {
                    if (v > nvars) {
                        throw InvalidArgument("variable x" + std::to_string(v) + " outside universe of " +
                                              std::to_string(nvars));
                    }
                }
                if (c.is_zero()) continue;
                auto it = std::find_if(raw.begin(), raw.end(), [&](const Part& p) { return p.degree == w.size(); });
                if (it == raw.end()) {
                    raw.emplace_back();
                    raw.back().degree = w.size();
                    it = std::prev(raw.end());
                }
                it->letters.insert(it->letters.end(), w.begin(), w.end());
                K::coeffs(*it).push_back(K::from(c));
            }
            std::sort(raw.begin(), raw.end(), [](const Part& a, const Part& b) { return a.degree < b.degree; });
            for (Part& p : raw) {
                Part c = canonicalize(k, std::move(p));
                if (!K::coeffs(c).empty()) out.parts_.push_back(std::move(c));
            }
            return out;
        });
    }

    static void for_each_term(const NCPolynomial& f, const std::function<void(WordView, const FieldElement&)>& fn) {
        dispatch(f.field_, [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            for (const Part& p : f.parts_) {
                const auto& c = K::coeffs(p);
                for (std::size_t i = 0; i < c.size(); ++i) fn(word(p, i), K::element(f.field_, c[i]));
            }
            return 0;
        });
    }

    static FieldElement coefficient_of(const NCPolynomial& f, WordView w) {
        const Part* p = find_part(f, w.size());
        if (!p) return FieldElement::zero(f.field_);
        return dispatch(f.field_, [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            const auto& c = K::coeffs(*p);
            std::size_t lo = 0, hi = c.size();
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (word_less(word(*p, mid), w)) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            if (lo < c.size() && std::ranges::equal(word(*p, lo), w)) return K::element(f.field_, c[lo]);
            return FieldElement::zero(f.field_);
        });
    }

    static NCPolynomial add(const NCPolynomial& f, const NCPolynomial& g, bool negate_g, const Limits& limits) {
        check_compatible(f, g);
        NCPolynomial out(f.field_, f.nvars_);
        return dispatch(f.field_, [&](const auto& k) {
            if (negate_g) {
                NCPolynomial ng = neg(k, g);
                out.parts_ = merge_all(k, f.parts_, ng.parts_);
            } else {
                out.parts_ = merge_all(k, f.parts_, g.parts_);
            }
            check_budget(size(out), limits);
            return out;
        });
    }

    template <class K>
    static NCPolynomial neg(const K& k, const NCPolynomial& f) {
        NCPolynomial out = f;
        for (Part& p : out.parts_) {
            for (auto& v : K::coeffs(p)) v = k.neg(v);
        }
        return out;
    }

    static NCPolynomial scale(const NCPolynomial& f, const FieldElement& c) {
        if (!(c.field() == f.field_)) throw ConfigError("field mismatch: " + f.field_.name() + " vs " + c.field().name());
        if (c.is_zero()) return NCPolynomial(f.field_, f.nvars_);
        NCPolynomial out = f;
        dispatch(f.field_, [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            const auto v = K::from(c);
            for (Part& p : out.parts_) scale_part(k, p, v);
            return 0;
        });
        return out;
    }

    static NCPolynomial mul(const NCPolynomial& f, const NCPolynomial& g, const Limits& limits) {
        check_compatible(f, g);
        std::size_t raw = 0;
        const bool q = rational(f);
        for (const Part& a : f.parts_) {
            for (const Part& b : g.parts_) raw += a.size(q) * b.size(q);
        }
        check_budget(raw, limits);
        return dispatch(f.field_, [&](const auto& k) { return mul(k, f, g); });
    }

    static NCPolynomial restrict(const NCPolynomial& f, Interval j) {
        if (!f.is_homogeneous()) throw InvalidArgument("interval restriction needs a homogeneous polynomial");
        NCPolynomial out(f.field_, f.nvars_);
        if (f.parts_.empty()) return out;
        const Part& p = f.parts_.front();
        if (j.first < 1 || j.first > j.last + 1 || j.last > p.degree) {
            throw InvalidArgument("interval [" + std::to_string(j.first) + "," + std::to_string(j.last) +
                                  "] outside [1," + std::to_string(p.degree) + "]");
        }
        return dispatch(f.field_, [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            const auto& c = K::coeffs(p);
            Part raw;
            raw.degree = j.length();
            raw.letters.reserve(c.size() * raw.degree);
            for (std::size_t i = 0; i < c.size(); ++i) {
                WordView w = word(p, i).subspan(j.first - 1, raw.degree);
                raw.letters.insert(raw.letters.end(), w.begin(), w.end());
            }
            K::coeffs(raw) = c;
            Part canon = canonicalize(k, std::move(raw));
            if (!K::coeffs(canon).empty()) out.parts_.push_back(std::move(canon));
            return out;
        });
    }

    static NCPolynomial partial_first(const NCPolynomial& f, Var x) {
        NCPolynomial out(f.field_, f.nvars_);
        return dispatch(f.field_, [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            for (const Part& p : f.parts_) {
                if (p.degree == 0) continue;
                const auto& c = K::coeffs(p);
                // Words starting with x are contiguous.
                std::size_t lo = 0, hi = c.size();
                while (lo < hi) {
                    std::size_t mid = (lo + hi) / 2;
                    if (p.letters[mid * p.degree] < x) {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                std::size_t end = lo;
                while (end < c.size() && p.letters[end * p.degree] == x) ++end;
                if (end == lo) continue;
                Part d;
                d.degree = p.degree - 1;
                for (std::size_t i = lo; i < end; ++i) {
                    WordView w = word(p, i).subspan(1);
                    d.letters.insert(d.letters.end(), w.begin(), w.end());
                    K::coeffs(d).push_back(c[i]);
                }
                out.parts_.push_back(std::move(d));
            }
            return out;
        });
    }

    static Weight weight_of(const NCPolynomial& f, const WeightVector& w) {
        Weight result;
        bool first = true;
        for (const Part& p : f.parts_) {
            const std::size_t n = p.size(rational(f));
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t wt = 0;
                for (Var v : word(p, i)) wt += w[v];
                if (first) {
                    result = {Weight::Kind::homogeneous, wt};
                    first = false;
                } else if (wt != result.value) {
                    return {Weight::Kind::inhomogeneous, 0};
                }
            }
        }
        return result;
    }

    static NCPolynomial homogeneous_part(const NCPolynomial& f, std::size_t d) {
        NCPolynomial out(f.field_, f.nvars_);
        if (const Part* p = find_part(f, d)) out.parts_.push_back(*p);
        return out;
    }

    static bool equal(const NCPolynomial& a, const NCPolynomial& b) {
        if (!(a.field_ == b.field_) || a.nvars_ != b.nvars_ || a.parts_.size() != b.parts_.size()) return false;
        for (std::size_t i = 0; i < a.parts_.size(); ++i) {
            const Part& x = a.parts_[i];
            const Part& y = b.parts_[i];
            if (x.degree != y.degree || x.letters != y.letters || x.residues != y.residues ||
                x.rationals != y.rationals) {
                return false;
            }
        }
        return true;
    }
};

NCPolynomial::NCPolynomial(Field field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {
    if (nvars > kMaxVars) throw InvalidArgument("too many variables");
}

NCPolynomial NCPolynomial::constant(const FieldElement& c, std::size_t nvars) {
    return from_terms(c.field(), nvars, {{Word{}, c}});
}

NCPolynomial NCPolynomial::variable(const Field& field, std::size_t nvars, Var x) {
    return monomial(field, nvars, Word{x});
}

NCPolynomial NCPolynomial::monomial(const Field& field, std::size_t nvars, WordView w) {
    return monomial(FieldElement::one(field), nvars, w);
}

NCPolynomial NCPolynomial::monomial(const FieldElement& c, std::size_t nvars, WordView w) {
    return from_terms(c.field(), nvars, {{Word(w.begin(), w.end()), c}});
}

NCPolynomial NCPolynomial::from_terms(const Field& field, std::size_t nvars,
                                      const std::vector<std::pair<Word, FieldElement>>& terms) {
    return PolyOps::from_terms(field, nvars, terms);
}

std::size_t NCPolynomial::term_count() const { return PolyOps::size(*this); }

bool NCPolynomial::is_constant() const { return parts_.empty() || (parts_.size() == 1 && parts_[0].degree == 0); }

int NCPolynomial::degree() const { return parts_.empty() ? -1 : static_cast<int>(parts_.back().degree); }

int NCPolynomial::min_degree() const { return parts_.empty() ? -1 : static_cast<int>(parts_.front().degree); }

FieldElement NCPolynomial::coefficient_of(WordView w) const { return PolyOps::coefficient_of(*this, w); }

void NCPolynomial::for_each_term(const std::function<void(WordView, const FieldElement&)>& fn) const {
    PolyOps::for_each_term(*this, fn);
}

std::vector<std::pair<Word, FieldElement>> NCPolynomial::terms() const {
    std::vector<std::pair<Word, FieldElement>> out;
    for_each_term([&](WordView w, const FieldElement& c) { out.emplace_back(Word(w.begin(), w.end()), c); });
    return out;
}

NCPolynomial NCPolynomial::homogeneous_part(std::size_t d) const { return PolyOps::homogeneous_part(*this, d); }

bool operator==(const NCPolynomial& a, const NCPolynomial& b) { return PolyOps::equal(a, b); }

NCPolynomial add(const NCPolynomial& f, const NCPolynomial& g, const Limits& limits) {
    return PolyOps::add(f, g, false, limits);
}

NCPolynomial sub(const NCPolynomial& f, const NCPolynomial& g, const Limits& limits) {
    return PolyOps::add(f, g, true, limits);
}

NCPolynomial neg(const NCPolynomial& f) {
    return PolyOps::dispatch(f.field(), [&](const auto& k) { return PolyOps::neg(k, f); });
}

NCPolynomial scale(const NCPolynomial& f, const FieldElement& c) { return PolyOps::scale(f, c); }

NCPolynomial mul(const NCPolynomial& f, const NCPolynomial& g, const Limits& limits) {
    return PolyOps::mul(f, g, limits);
}

NCPolynomial interval_restrict(const NCPolynomial& f, Interval j) { return PolyOps::restrict(f, j); }

NCPolynomial partial_first(const NCPolynomial& f, Var x) { return PolyOps::partial_first(f, x); }

Weight weight_of(const NCPolynomial& f, const WeightVector& w) { return PolyOps::weight_of(f, w); }

std::string format_word(WordView w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += '.';
        s += 'x';
        s += std::to_string(w[i]);
    }
    return s;
}

std::string to_string(const NCPolynomial& f) {
    if (f.is_zero()) return "0";
    std::string s;
    f.for_each_term([&](WordView w, const FieldElement& c) {
        if (!s.empty()) s += " + ";
        s += c.to_string();
        if (!w.empty()) {
            s += '*';
            s += format_word(w);
        }
    });
    return s;
}

std::ostream& operator<<(std::ostream& os, const NCPolynomial& f) { return os << to_string(f); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Word parse_word(std::string_view text) {
    Word w;
    while (!text.empty()) {
        const auto dot = text.find('.');
        std::string_view tok = text.substr(0, dot);
        if (tok.size() < 2 || tok[0] != 'x') throw ParseError("bad variable '" + std::string(tok) + "'");
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v > kMaxVars) {
            throw ParseError("bad variable '" + std::string(tok) + "'");
        }
        w.push_back(static_cast<Var>(v));
        if (dot == std::string_view::npos) break;
        text.remove_prefix(dot + 1);
        if (text.empty()) throw ParseError("trailing '.' in word");
    }
    return w;
}

}  // namespace

NCPolynomial parse_polynomial(std::string_view text, const Field& field, std::size_t nvars) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty polynomial");
    std::vector<std::pair<Word, FieldElement>> terms;
    std::size_t max_var = 0;
    while (true) {
        const auto plus = text.find(" + ");
        std::string_view term = trim(text.substr(0, plus));
        if (term.empty()) throw ParseError("empty term");
        const auto star = term.find('*');
        if (star != std::string_view::npos) {
            if (star + 1 == term.size()) throw ParseError("missing word after '*'");
            terms.emplace_back(parse_word(term.substr(star + 1)), FieldElement::parse(field, term.substr(0, star)));
        } else if (term.front() == 'x') {
            terms.emplace_back(parse_word(term), FieldElement::one(field));
        } else {
            terms.emplace_back(Word{}, FieldElement::parse(field, term));
        }
        for (Var v : terms.back().first) max_var = std::max<std::size_t>(max_var, v);
        if (plus == std::string_view::npos) break;
        text.remove_prefix(plus + 3);
    }
    if (nvars == 0) nvars = max_var;
    return NCPolynomial::from_terms(field, nvars, terms);
}

}  // namespace ncl
