#include "ncl/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ncl/generators.hpp"
#include "ncl/io.hpp"

namespace ncl::cli {

namespace {

struct RunConfig {
    std::string field_spec = "prime:" + std::to_string(kDefaultModulus);
    std::size_t budget = Limits{}.term_budget;
    std::uint64_t seed = 0;
    std::string format;
    std::string out_path;

    Field field() const { return Field::parse(field_spec); }
    Limits limits() const { return Limits{budget}; }
};

// Simple aligned two-column table.
class Table {
public:
    void row(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
    template <class T>
    void row(std::string key, const T& value) {
        std::ostringstream s;
        s << value;
        row(std::move(key), s.str());
    }
    std::string str() const {
        std::size_t width = 0;
        for (const auto& r : rows_) width = std::max(width, r.first.size());
        std::ostringstream s;
        for (const auto& [k, v] : rows_) s << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
        return s.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Circuit load_circuit(const std::string& path) { return parse_circuit(read_file(path)); }

std::vector<std::size_t> parse_numbers(std::string_view text, std::string_view what) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item(text.substr(pos, comma - pos));
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 18) {
            throw ParseError("bad number '" + item + "' in " + std::string(what));
        }
        out.push_back(std::stoull(item));
        pos = comma + 1;
    }
    return out;
}

NCPolynomial widen(const NCPolynomial& p, std::size_t nvars) {
    if (p.nvars() == nvars) return p;
    return NCPolynomial::from_terms(p.field(), nvars, p.terms());
}

/// Inline generator spec "name:a,b".
std::vector<NCPolynomial> generate(std::string_view spec, const Field& field, const Limits& limits) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos) throw ParseError("generator spec '" + std::string(spec) + "' needs name:args");
    const std::string name(spec.substr(0, colon));
    const auto a = parse_numbers(spec.substr(colon + 1), spec);
    auto need = [&](std::size_t k) {
        if (a.size() != k) {
            throw InvalidArgument("generator '" + name + "' takes " + std::to_string(k) + " argument(s)");
        }
    };
    if (name == "esym") {
        need(2);
        return {esym(a[0], a[1], field, limits)};
    }
    if (name == "dbmon") {
        need(1);
        return {hard_monomial_dB(a[0], field)};
    }
    if (name == "grid") {
        need(1);
        return {grid_monomial(a[0], field)};
    }
    if (name == "mainnd") {
        need(2);
        return {hard_poly_mainnd(a[0], a[1], field).f};
    }
    if (name == "mainnd-parts") {
        need(2);
        return hard_poly_mainnd(a[0], a[1], field).parts;
    }
    if (name == "esymd") {
        need(2);
        const std::size_t n = a[0], k = a[1];
        if (k < 1 || k >= n) throw InvalidArgument("esymd needs 1 <= k < n");
        const auto e = esym(n, k + 1, field, limits);
        std::vector<NCPolynomial> out;
        for (std::size_t i = 1; i <= n - k; ++i) out.push_back(partial_first(e, static_cast<Var>(i)));
        return out;
    }
    throw InvalidArgument("unknown generator '" + name + "'");
}

/// One polynomial per non-empty line, sharing the widest universe.
std::vector<NCPolynomial> load_polys(const std::string& path, const Field& field, std::size_t nvars) {
    std::istringstream in(read_file(path));
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    }
    if (nvars == 0) {
        for (const auto& l : lines) nvars = std::max(nvars, parse_polynomial(l, field).nvars());
    }
    std::vector<NCPolynomial> out;
    for (const auto& l : lines) out.push_back(parse_polynomial(l, field, nvars));
    return out;
}

std::vector<NCPolynomial> gather_sources(const std::vector<std::string>& files, const std::vector<std::string>& gens,
                                         const RunConfig& cfg, std::size_t nvars = 0) {
    const Field field = cfg.field();
    std::vector<NCPolynomial> polys;
    for (const auto& f : files) {
        for (auto& p : load_polys(f, field, nvars)) polys.push_back(std::move(p));
    }
    for (const auto& g : gens) {
        for (auto& p : generate(g, field, cfg.limits())) polys.push_back(std::move(p));
    }
    if (polys.empty()) throw InvalidArgument("no polynomials given; use --poly or --gen");
    std::size_t width = nvars;
    for (const auto& p : polys) width = std::max(width, p.nvars());
    for (auto& p : polys) p = widen(p, width);
    return polys;
}

WeightVector parse_weights(const std::string& text, std::size_t nvars) {
    if (text.empty()) return WeightVector::unit(nvars);
    auto w = parse_numbers(text, "--weights");
    if (w.size() != nvars) throw InvalidArgument("--weights needs " + std::to_string(nvars) + " entries");
    return WeightVector(std::vector<std::uint64_t>(w.begin(), w.end()));
}

GateId default_target(const Circuit& c) {
    if (!c.outputs().empty()) return c.outputs().back();
    if (c.gate_count() == 0) throw InvalidArgument("circuit has no gates");
    return c.gates().back().id;
}

std::string describe_first_difference(const NCPolynomial& got, const NCPolynomial& want) {
    const auto a = got.terms();
    const auto b = want.terms();
    auto less = [](const Word& x, const Word& y) { return x.size() != y.size() ? x.size() < y.size() : x < y; };
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const Word* w;
        FieldElement ca = FieldElement::zero(got.field()), cb = FieldElement::zero(want.field());
        if (j == b.size() || (i < a.size() && less(a[i].first, b[j].first))) {
            w = &a[i].first;
            ca = a[i++].second;
        } else if (i == a.size() || less(b[j].first, a[i].first)) {
            w = &b[j].first;
            cb = b[j++].second;
        } else {
            w = &a[i].first;
            ca = a[i++].second;
            cb = b[j++].second;
        }
        if (!(ca == cb)) {
            return "first difference at " + (w->empty() ? std::string("1") : format_word(*w)) + ": circuit has " +
                   ca.to_string() + ", expected " + cb.to_string();
        }
    }
    return "no difference";
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int main(const std::vector<std::string>& args);

private:
    void emit(const std::string& text) {
        if (cfg_.out_path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(cfg_.out_path, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + cfg_.out_path);
        f << text;
    }
    std::string format_or(const char* fallback) const { return cfg_.format.empty() ? fallback : cfg_.format; }
    void require_format(const std::string& fmt, std::initializer_list<const char*> allowed) const {
        for (const char* a : allowed) {
            if (fmt == a) return;
        }
        throw InvalidArgument("format '" + fmt + "' is not available for this command");
    }

    int gen_debruijn();
    int gen_poly(const std::string& kind, const std::vector<NCPolynomial>& polys, Json params);
    int gen_mainnd();
    int build(const std::string& kind);
    int derive();
    int bound();
    int verify();
    int lemma_check();
    int do_export();

    std::ostream& out_;
    std::ostream& err_;
    RunConfig cfg_;

    // Subcommand parameters.
    std::size_t alphabet_ = 2, order_ = 1, degree_ = 0, n_ = 0, d_ = 0;
    std::string method_ = "auto", conv_ = "karatsuba", word_, weights_, circuit_path_, mode_ = "expand";
    std::vector<std::string> poly_paths_, gen_specs_;
    std::optional<GateId> target_;
    std::size_t ell_ = 0, trials_ = 3, dim_ = 0, lemma_n_ = 4, lemma_gates_ = 12, lemma_non_scalar_ = 10;
};

int Runner::gen_debruijn() {
    DeBruijnSequence s;
    std::string method = method_;
    if (method == "auto") method = alphabet_ == 2 ? "greedy" : "lyndon";
    if (method == "greedy") {
        if (alphabet_ != 2) throw InvalidArgument("the greedy construction is binary; use --method lyndon");
        s = debruijn_binary_greedy(order_);
    } else if (method == "lyndon") {
        s = debruijn_general(alphabet_, order_, cfg_.budget);
    } else {
        throw InvalidArgument("unknown de Bruijn method '" + method + "'");
    }
    if (!is_debruijn(s)) throw Error("internal error: generated sequence failed validation");
    const auto fmt = format_or("table");
    require_format(fmt, {"table", "json"});
    if (fmt == "json") {
        Json j;
        j["alphabet"] = s.alphabet;
        j["order"] = s.order;
        j["method"] = method;
        j["cyclic"] = to_digits(s.cyclic, s.alphabet);
        j["linear"] = to_digits(s.linear(), s.alphabet);
        emit(dump(j));
    } else {
        emit(to_digits(s.cyclic, s.alphabet) + "\n");
    }
    return ok;
}

int Runner::gen_poly(const std::string& kind, const std::vector<NCPolynomial>& polys, Json params) {
    const auto fmt = format_or("table");
    require_format(fmt, {"table", "json"});
    if (fmt == "json") {
        Json j;
        j["kind"] = kind;
        j["params"] = std::move(params);
        j["field"] = cfg_.field().name();
        j["nvars"] = polys.front().nvars();
        j["poly"] = to_string(polys.front());
        emit(dump(j));
    } else {
        emit(to_string(polys.front()) + "\n");
    }
    return ok;
}

int Runner::gen_mainnd() {
    const auto fam = hard_poly_mainnd(n_, d_, cfg_.field());
    const auto fmt = format_or("table");
    require_format(fmt, {"table", "json"});
    if (fmt == "json") {
        Json j;
        j["kind"] = "mainnd";
        j["n"] = n_;
        j["d"] = d_;
        j["k"] = fam.k;
        j["field"] = cfg_.field().name();
        j["sigma"] = to_digits(fam.sigma.cyclic, fam.sigma.alphabet);
        j["poly"] = to_string(fam.f);
        Json parts = Json::array();
        for (const auto& p : fam.parts) parts.push_back(to_string(p));
        j["parts"] = std::move(parts);
        emit(dump(j));
    } else {
        std::string text = to_string(fam.f) + "\n";
        emit(text);
    }
    return ok;
}

int Runner::build(const std::string& kind) {
    const Field field = cfg_.field();
    Circuit c;
    Telemetry t;
    if (kind == "esym-hom") {
        auto e = build_esym_homogeneous(n_, field);
        t = telemetry(e.circuit, n_, e.method);
        c = std::move(e.circuit);
    } else if (kind == "esym-dnc") {
        auto e = build_esym_dnc(n_, parse_convolution_method(conv_), field);
        t = telemetry(e.circuit, n_, e.method);
        c = std::move(e.circuit);
    } else {
        Word w;
        std::size_t nvars = n_;
        if (!word_.empty() == !gen_specs_.empty()) throw InvalidArgument("give exactly one of --word and --gen");
        NCPolynomial p = word_.empty() ? generate(gen_specs_.front(), field, cfg_.limits()).front()
                                       : parse_polynomial(word_, field, n_);
        if (p.term_count() != 1) throw InvalidArgument("the tight builder needs a single word");
        p.for_each_term([&](WordView v, const FieldElement&) { w.assign(v.begin(), v.end()); });
        if (nvars == 0) nvars = p.nvars();
        c = build_monomial_tight(w, nvars, field);
        t = telemetry(c, nvars, "tight");
    }
    const auto fmt = format_or("json");
    require_format(fmt, {"table", "json", "dot"});
    if (fmt == "dot") {
        emit(to_dot(c));
    } else if (fmt == "json") {
        Json j = to_json(c);
        j["telemetry"] = to_json(t);
        emit(dump(j));
    } else {
        Table tab;
        tab.row("n", t.n);
        tab.row("method", t.method);
        tab.row("size", t.size);
        tab.row("non_scalar", t.non_scalar);
        tab.row("depth", t.depth);
        emit(tab.str());
    }
    return ok;
}

int Runner::derive() {
    const Circuit c = load_circuit(circuit_path_);
    const GateId target = target_ ? *target_ : default_target(c);
    const auto w = parse_weights(weights_, c.nvars());
    const auto bundle = baur_strassen(c, target, w);
    const auto m = metrics(bundle.circuit);
    const bool size_ok = m.size <= 5 * bundle.provenance.size;
    const bool ns_ok = m.non_scalar <= 2 * bundle.provenance.non_scalar;
    const bool hom_ok = check_homogeneous(bundle.circuit, w).homogeneous;
    Json report;
    report["s"] = bundle.provenance.size;
    report["s_x"] = bundle.provenance.non_scalar;
    report["bundle_size"] = m.size;
    report["bundle_non_scalar"] = m.non_scalar;
    report["limit_size"] = 5 * bundle.provenance.size;
    report["limit_non_scalar"] = 2 * bundle.provenance.non_scalar;
    report["size_ok"] = size_ok;
    report["non_scalar_ok"] = ns_ok;
    report["homogeneous"] = hom_ok;

    const auto fmt = format_or("json");
    require_format(fmt, {"table", "json", "dot"});
    if (fmt == "dot") {
        emit(to_dot(bundle.circuit));
    } else if (fmt == "json") {
        Json j = to_json(bundle);
        j["report"] = report;
        emit(dump(j));
    } else {
        Table tab;
        for (const auto& [k, v] : report.items()) tab.row(k, v.dump());
        for (const auto& [v, g] : bundle.outputs) tab.row("d/dx" + std::to_string(v), "gate " + std::to_string(g));
        emit(tab.str());
    }
    return size_ok && ns_ok && hom_ok ? ok : mismatch;
}

int Runner::bound() {
    const auto polys = gather_sources(poly_paths_, gen_specs_, cfg_);
    const auto cert = certify_lower_bound(polys, ell_);
    const auto fmt = format_or("table");
    require_format(fmt, {"table", "json"});
    if (fmt == "json") {
        emit(dump(to_json(cert)));
    } else {
        Table tab;
        tab.row("ell", cert.report.ell);
        tab.row("sources", cert.source_count);
        tab.row("family_size", cert.report.family_size);
        tab.row("mu", cert.report.rank);
        tab.row("bound", cert.bound);
        tab.row("field", cert.report.field.name());
        tab.row("witness", join(cert.report.witness));
        tab.row("statement", cert.statement);
        emit(tab.str());
    }
    return ok;
}

int Runner::verify() {
    const Circuit c = load_circuit(circuit_path_);
    const Field field = c.field();
    std::vector<NCPolynomial> polys;
    if (!poly_paths_.empty()) {
        for (const auto& path : poly_paths_) {
            for (auto& p : load_polys(path, field, c.nvars())) polys.push_back(std::move(p));
        }
    }
    // --budget guards circuit expansion here; the reference polynomial is
    // explicit anyway, so generate it under the larger of the two limits.
    Limits gen_limits = cfg_.limits();
    gen_limits.term_budget = std::max(gen_limits.term_budget, Limits{}.term_budget);
    for (const auto& g : gen_specs_) {
        for (auto& p : generate(g, field, gen_limits)) polys.push_back(std::move(p));
    }
    if (polys.size() != 1) throw InvalidArgument("verify needs exactly one polynomial");
    if (polys.front().nvars() > c.nvars()) throw InvalidArgument("polynomial uses more variables than the circuit");
    const NCPolynomial f = widen(polys.front(), c.nvars());
    require_valid(c);

    std::vector<GateId> candidates;
    if (target_) {
        c.require_index(*target_);
        candidates.push_back(*target_);
    } else {
        for (const Gate& g : c.gates()) candidates.push_back(g.id);
    }
    const GateId reference = target_ ? *target_ : default_target(c);

    Json j;
    j["mode"] = mode_;
    std::optional<GateId> matched;
    std::string diff;
    if (mode_ == "expand") {
        try {
            expand_each(
                c, candidates,
                [&](std::size_t k, const NCPolynomial& p) {
                    if (!matched && p == f) matched = candidates[k];
                    if (candidates[k] == reference && !(p == f)) diff = describe_first_difference(p, f);
                },
                cfg_.limits());
        } catch (const BudgetExceeded& e) {
            throw BudgetExceeded(std::string(e.what()) + "; try --mode pit");
        }
    } else if (mode_ == "pit") {
        const auto found = pit_search(c, candidates, f, PitOptions{trials_, dim_, cfg_.seed});
        matched = found.gate;
        j["pit"] = to_json(found.verdict);
    } else {
        throw InvalidArgument("unknown verify mode '" + mode_ + "'");
    }
    j["match"] = matched.has_value();
    j["gate"] = matched ? Json(*matched) : Json(nullptr);
    if (!matched && !diff.empty()) j["diff"] = diff;

    const auto fmt = format_or("table");
    require_format(fmt, {"table", "json"});
    if (fmt == "json") {
        emit(dump(j));
    } else {
        Table tab;
        tab.row("mode", mode_);
        tab.row("match", matched ? "yes" : "no");
        if (matched) tab.row("gate", *matched);
        if (j.contains("pit")) {
            tab.row("verdict", j["pit"]["verdict"].get<std::string>());
            tab.row("trials", j["pit"]["trials"].dump());
            tab.row("dim", j["pit"]["dim"].dump());
            tab.row("failure_bound", j["pit"]["failure_bound"].dump());
        }
        if (!matched && !diff.empty()) tab.row("diff", diff);
        emit(tab.str());
    }
    return matched ? ok : mismatch;
}

int Runner::lemma_check() {
    if (trials_ < 1) throw InvalidArgument("--trials must be at least 1");
    if (ell_ < 2) throw InvalidArgument("--ell must be at least 2");
    RandomCircuitOptions opts;
    opts.nvars = lemma_n_;
    opts.gate_budget = lemma_gates_;
    opts.max_non_scalar = lemma_non_scalar_;
    opts.field = cfg_.field();
    double max_ratio = 0;
    Json violations = Json::array();
    for (std::size_t t = 0; t < trials_; ++t) {
        opts.seed = cfg_.seed + t;
        const auto check = verify_measure_lemma(random_homogeneous_circuit(opts), ell_, cfg_.limits());
        if (check.limit > 0) max_ratio = std::max(max_ratio, static_cast<double>(check.mu) / static_cast<double>(check.limit));
        if (!check.holds) {
            Json v = to_json(check);
            v["seed"] = opts.seed;
            violations.push_back(std::move(v));
        }
    }
    Json j;
    j["trials"] = trials_;
    j["ell"] = ell_;
    j["seed"] = cfg_.seed;
    j["nvars"] = lemma_n_;
    j["gate_budget"] = lemma_gates_;
    j["max_non_scalar"] = lemma_non_scalar_;
    j["violations"] = violations;
    j["max_ratio"] = max_ratio;
    j["holds"] = violations.empty();
    const auto fmt = format_or("table");
    require_format(fmt, {"table", "json"});
    if (fmt == "json") {
        emit(dump(j));
    } else {
        Table tab;
        tab.row("trials", trials_);
        tab.row("ell", ell_);
        tab.row("seed", cfg_.seed);
        tab.row("violations", violations.size());
        tab.row("max_ratio", Json(max_ratio).dump());
        tab.row("holds", violations.empty() ? "yes" : "no");
        for (const auto& v : violations) tab.row("reproduce", "--seed " + v["seed"].dump() + " --trials 1");
        emit(tab.str());
    }
    return violations.empty() ? ok : mismatch;
}

int Runner::do_export() {
    const Circuit c = load_circuit(circuit_path_);
    require_valid(c);
    const auto fmt = format_or("json");
    if (fmt == "dot") {
        emit(to_dot(c));
    } else if (fmt == "json") {
        emit(dump(to_json(c)));
    } else {
        const auto m = metrics(c);
        const auto hom = check_homogeneous(c, parse_weights(weights_, c.nvars()));
        Table tab;
        tab.row("gates", c.gate_count());
        tab.row("size", m.size);
        tab.row("non_scalar", m.non_scalar);
        tab.row("depth", m.depth);
        tab.row("homogeneous", hom.homogeneous ? "yes" : "no (gate " + std::to_string(*hom.failing_gate) + ")");
        emit(tab.str());
    }
    return ok;
}

int Runner::main(const std::vector<std::string>& args) {
    CLI::App app{"Non-commutative circuit toolkit: generators, builders, derivatives and rank lower bounds.", "ncl"};
    app.require_subcommand(1);
    app.add_option("--field", cfg_.field_spec, "prime:P or rational")->capture_default_str();
    app.add_option("--budget", cfg_.budget, "term budget for expansions")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg_.seed, "seed for randomized steps")->capture_default_str();
    app.add_option("--format", cfg_.format, "json, table or dot")->check(CLI::IsMember({"json", "table", "dot"}));
    app.add_option("--out", cfg_.out_path, "write the artifact to this file");

    auto sub = [](CLI::App* parent, const char* name, const char* help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    std::string chosen;
    auto* gen = sub(&app, "gen", "generate sequences and polynomials");
    gen->require_subcommand(1);
    auto* g_db = sub(gen, "debruijn", "de Bruijn sequence as a digit string");
    g_db->add_option("--alphabet", alphabet_)->capture_default_str();
    g_db->add_option("--order", order_)->required();
    g_db->add_option("--method", method_, "auto, greedy or lyndon")->capture_default_str();
    auto* g_dbmon = sub(gen, "dbmon", "de Bruijn monomial dB_d");
    g_dbmon->add_option("--degree", degree_)->required();
    auto* g_mainnd = sub(gen, "mainnd", "f = sum x_i alpha_i from de Bruijn blocks");
    g_mainnd->add_option("--n", n_)->required();
    g_mainnd->add_option("--d", d_)->required();
    auto* g_esym = sub(gen, "esym", "ordered symmetric polynomial E^d_n");
    g_esym->add_option("--n", n_)->required();
    g_esym->add_option("--d", d_)->required();
    auto* g_grid = sub(gen, "grid", "prod_i prod_j x_i x_j");
    g_grid->add_option("--n", n_)->required();

    auto* bld = sub(&app, "build", "emit upper-bound circuits");
    bld->require_subcommand(1);
    auto* b_hom = sub(bld, "esym-hom", "homogeneous circuit for E^0_n..E^n_n");
    b_hom->add_option("--n", n_)->required();
    auto* b_dnc = sub(bld, "esym-dnc", "divide and conquer circuit for E^0_n..E^n_n");
    b_dnc->add_option("--n", n_)->required();
    b_dnc->add_option("--method", conv_, "naive or karatsuba")->capture_default_str();
    auto* b_mon = sub(bld, "monomial", "multiplication-only circuit for one word");
    b_mon->add_option("--word", word_, "word such as x1.x2.x1");
    b_mon->add_option("--gen", gen_specs_, "generator spec such as dbmon:64");
    b_mon->add_option("--n", n_, "variable universe (default: largest index)");

    auto* der = sub(&app, "derive", "all first-position partials of a circuit");
    der->add_option("--circuit", circuit_path_)->required();
    der->add_option("--target", target_, "gate id (default: last output)");
    der->add_option("--weights", weights_, "comma separated w1..wn (default: all 1)");

    auto* bnd = sub(&app, "bound", "rank measure and the implied lower bound");
    bnd->add_option("--poly", poly_paths_, "file with one polynomial per line");
    bnd->add_option("--gen", gen_specs_, "esym:N,D dbmon:D grid:N mainnd:N,D mainnd-parts:N,D esymd:N,K");
    bnd->add_option("--ell", ell_)->required();

    auto* ver = sub(&app, "verify", "does some gate compute the polynomial");
    ver->add_option("--circuit", circuit_path_)->required();
    ver->add_option("--poly", poly_paths_, "file with one polynomial");
    ver->add_option("--gen", gen_specs_, "generator spec");
    ver->add_option("--gate", target_, "only test this gate");
    ver->add_option("--mode", mode_, "expand or pit")->capture_default_str()->check(CLI::IsMember({"expand", "pit"}));
    ver->add_option("--trials", trials_)->capture_default_str();
    ver->add_option("--dim", dim_, "matrix dimension (default: smallest safe)");

    auto* lem = sub(&app, "lemma-check", "measure lemma on random homogeneous circuits");
    lem->add_option("--trials", trials_)->capture_default_str();
    lem->add_option("--ell", ell_)->required();
    lem->add_option("--n", lemma_n_, "variables")->capture_default_str();
    lem->add_option("--gates", lemma_gates_, "gate budget per circuit")->capture_default_str();
    lem->add_option("--max-non-scalar", lemma_non_scalar_)->capture_default_str();

    auto* exp = sub(&app, "export", "normalize a circuit, or print it as DOT or a metrics table");
    exp->add_option("--circuit", circuit_path_)->required();
    exp->add_option("--weights", weights_, "weights for the homogeneity line");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out_ << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out_ << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err_ << "error: " << e.what() << "\n";
        return invalid_input;
    }

    try {
        (void)cfg_.field();
        if (*g_db) return gen_debruijn();
        if (*g_dbmon) return gen_poly("dbmon", {hard_monomial_dB(degree_, cfg_.field())}, Json{{"degree", degree_}});
        if (*g_mainnd) return gen_mainnd();
        if (*g_esym) return gen_poly("esym", {esym(n_, d_, cfg_.field(), cfg_.limits())}, Json{{"n", n_}, {"d", d_}});
        if (*g_grid) return gen_poly("grid", {grid_monomial(n_, cfg_.field())}, Json{{"n", n_}});
        if (*b_hom) return build("esym-hom");
        if (*b_dnc) return build("esym-dnc");
        if (*b_mon) return build("monomial");
        if (*der) return derive();
        if (*bnd) return bound();
        if (*ver) return verify();
        if (*lem) return lemma_check();
        if (*exp) return do_export();
        err_ << app.help();
        return invalid_input;
    } catch (const BudgetExceeded& e) {
        err_ << "error: " << e.what() << "\n";
        return over_budget;
    } catch (const Error& e) {
        err_ << "error: " << e.what() << "\n";
        return invalid_input;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Runner r(out, err);
    return r.main(args);
}

}  // namespace ncl::cli
