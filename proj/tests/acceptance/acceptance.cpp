// Acceptance checks, one line per criterion. `acceptance N` runs only
// criterion N; the exit code is nonzero when any selected check fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ncl/builders.hpp"
#include "ncl/cli.hpp"
#include "ncl/generators.hpp"
#include "ncl/measure.hpp"
#include "ncl/transforms.hpp"

using namespace ncl;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

Word word_of(const NCPolynomial& monomial) {
    Word w;
    monomial.for_each_term([&](WordView v, const FieldElement&) { w.assign(v.begin(), v.end()); });
    return w;
}

Outcome grid_measure() {
    Outcome o;
    double worst = 0;
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<NCPolynomial> f{grid_monomial(n)};
        const auto r = mu(build_family(f, 2));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        worst = std::max(worst, secs);
        if (r.rank != n * n) o.fail("n=" + std::to_string(n) + ": mu_2=" + std::to_string(r.rank));
        if (secs >= 1.0) o.fail("n=" + std::to_string(n) + " took " + std::to_string(secs) + " s");
    }
    if (o.pass) o.detail = "mu_2 = n^2 for n=2..6, slowest " + std::to_string(worst) + " s";
    return o;
}

Outcome debruijn_measure() {
    Outcome o;
    std::string seen;
    for (std::size_t d : {8, 16, 32, 64, 128, 256}) {
        const std::size_t ell = ceil_log2(d);
        const std::vector<NCPolynomial> f{hard_monomial_dB(d)};
        const auto r = mu(build_family(f, ell));
        seen += " " + std::to_string(d) + ":" + std::to_string(r.rank);
        if (r.rank != d - ell + 1) o.fail("d=" + std::to_string(d) + ": mu=" + std::to_string(r.rank));
    }
    if (o.pass) o.detail = "mu_l(dB_d) = d-l+1 (d:mu" + seen + ")";
    return o;
}

Outcome measure_lemma() {
    Outcome o;
    RandomCircuitOptions opts;
    opts.gate_budget = 12;
    opts.max_non_scalar = 10;
    std::size_t checks = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        opts.seed = seed;
        opts.nvars = 1 + seed % 4;
        const auto c = random_homogeneous_circuit(opts);
        for (std::size_t ell : {2, 3, 4}) {
            const auto r = verify_measure_lemma(c, ell);
            ++checks;
            if (!r.holds) {
                o.fail("seed " + std::to_string(seed) + " ell " + std::to_string(ell) + ": mu=" + std::to_string(r.mu) +
                       " > " + std::to_string(r.limit));
            }
        }
    }
    if (o.pass) o.detail = std::to_string(checks) + " checks, no violations";
    return o;
}

void check_bundle(const Circuit& c, GateId target, Outcome& o, const std::string& label) {
    const WeightVector w = WeightVector::unit(c.nvars());
    const auto bundle = baur_strassen(c, target, w);
    const auto f = expand(c, target);
    std::vector<GateId> ids;
    for (const auto& [v, g] : bundle.outputs) ids.push_back(g);
    if (ids.size() != c.nvars()) o.fail(label + ": missing outputs");
    expand_each(bundle.circuit, ids, [&](std::size_t k, const NCPolynomial& d) {
        if (!(d == partial_first(f, static_cast<Var>(k + 1)))) o.fail(label + ": wrong partial for x" + std::to_string(k + 1));
    });
    const auto src = metrics(c);
    const auto out = metrics(bundle.circuit);
    if (out.size > 5 * src.size) o.fail(label + ": size " + std::to_string(out.size) + " > 5*" + std::to_string(src.size));
    if (out.non_scalar > 2 * src.non_scalar) o.fail(label + ": non-scalar " + std::to_string(out.non_scalar));
    if (!check_homogeneous(bundle.circuit, w).homogeneous) o.fail(label + ": bundle not homogeneous");
}

Outcome derivative_transform() {
    Outcome o;
    RandomCircuitOptions opts;
    opts.gate_budget = 12;
    std::size_t bundles = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        opts.seed = seed;
        opts.nvars = 1 + seed % 4;
        const auto c = random_homogeneous_circuit(opts);
        for (GateId g : c.outputs()) {
            check_bundle(c, g, o, "seed " + std::to_string(seed));
            ++bundles;
        }
    }
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto e = build_esym_homogeneous(n);
        for (std::size_t d = 1; d <= n; ++d) {
            check_bundle(e.circuit, e.by_degree[d], o, "esym n=" + std::to_string(n));
            ++bundles;
        }
    }
    if (o.pass) o.detail = std::to_string(bundles) + " bundles exact, size <= 5s, non-scalar <= 2s_x, homogeneous";
    return o;
}

Outcome esym_rank() {
    Outcome o;
    std::string seen;
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{5, 2}, {6, 3}, {8, 4}, {10, 5}}) {
        const auto r = esym_family_rank(n, k);
        seen += " (" + std::to_string(n) + "," + std::to_string(k) + "):" + std::to_string(r.rank);
        if (r.rank != (n - k) * (k - 1)) o.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": rank " + std::to_string(r.rank));
    }
    if (o.pass) o.detail = "rank = (n-k)(k-1)" + seen;
    return o;
}

Outcome mainnd_measure() {
    Outcome o;
    std::string seen;
    for (auto [n, d] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {3, 5}, {4, 4}, {5, 9}}) {
        const auto fam = hard_poly_mainnd(n, d);
        const auto r = mu(build_family(fam.parts, fam.k));
        seen += " (" + std::to_string(n) + "," + std::to_string(d) + ") k=" + std::to_string(fam.k) + ":" + std::to_string(r.rank);
        if (r.rank != n * (d - fam.k)) o.fail("n=" + std::to_string(n) + " d=" + std::to_string(d) + ": mu " + std::to_string(r.rank));
    }
    if (o.pass) o.detail = "mu_k = n(d-k)" + seen;
    return o;
}

Outcome builder_equivalence() {
    Outcome o;
    Limits wide;
    wide.term_budget = std::size_t{1} << 26;
    std::map<std::string, std::vector<std::size_t>> unexpected;
    for (std::size_t n = 1; n <= 24; ++n) {
        std::vector<NCPolynomial> want;
        for (std::size_t d = 0; d <= n; ++d) want.push_back(esym(n, d, Field{}, wide));
        const std::vector<EsymCircuit> built{build_esym_homogeneous(n), build_esym_dnc(n, ConvolutionMethod::naive),
                                             build_esym_dnc(n, ConvolutionMethod::karatsuba)};
        for (const auto& e : built) {
            expand_each(
                e.circuit, e.by_degree,
                [&](std::size_t d, const NCPolynomial& p) {
                    if (!(p == want[d])) o.fail(e.method + " n=" + std::to_string(n) + " d=" + std::to_string(d) + " differs");
                },
                wide);
            const bool hom = check_homogeneous(e.circuit, WeightVector::unit(n)).homogeneous;
            if (n >= 2 && hom != (e.method == "homogeneous")) unexpected[e.method].push_back(n);
        }
    }
    if (!o.pass) return o;
    o.detail = "expansions agree for n <= 24";
    for (const auto& [method, ns] : unexpected) {
        o.pass = false;
        o.detail += "; " + method + (method == "homogeneous" ? " fails" : " passes") + " the homogeneity check for " +
                    std::to_string(ns.size()) + " of 23 n in [2,24]";
    }
    return o;
}

Outcome sandwich() {
    Outcome o;
    std::string seen;
    for (std::size_t d : {32, 64, 128}) {
        const auto f = hard_monomial_dB(d);
        const std::vector<NCPolynomial> src{f};
        const auto cert = certify_lower_bound(src, ceil_log2(d));
        const auto c = build_monomial_tight(word_of(f), 2);
        const auto upper = metrics(c).non_scalar;
        seen += " " + std::to_string(d) + ":" + std::to_string(cert.bound) + "<=" + std::to_string(upper);
        if (cert.bound > upper) o.fail("d=" + std::to_string(d) + ": bound " + std::to_string(cert.bound) + " > " + std::to_string(upper));
        if (!(expand(c, c.outputs().back()) == f)) o.fail("d=" + std::to_string(d) + ": tight circuit computes another word");
    }
    if (o.pass) o.detail = "lower <= upper, tight circuit exact (d:lower<=upper" + seen + ")";
    return o;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
        den += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
    }
    return num / den;
}

Outcome karatsuba_scaling() {
    Outcome o;
    const std::vector<double> ns{8, 16, 32, 64};
    std::ostringstream detail;
    for (auto [method, target] : std::vector<std::pair<ConvolutionMethod, double>>{{ConvolutionMethod::karatsuba, 1.585},
                                                                                   {ConvolutionMethod::naive, 2.0}}) {
        std::vector<double> sizes;
        for (double n : ns) sizes.push_back(static_cast<double>(metrics(build_esym_dnc(static_cast<std::size_t>(n), method).circuit).size));
        const double slope = loglog_slope(ns, sizes);
        detail << to_string(method) << " slope " << slope << " (sizes";
        for (double s : sizes) detail << " " << s;
        detail << ") ";
        if (std::abs(slope - target) > 0.15) o.pass = false;
    }
    o.detail = detail.str();
    return o;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / ("ncl_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string circ = (dir / "h5.json").string();
    const std::string poly = (dir / "f.txt").string();
    std::ofstream(poly) << "x1.x2 + x2.x3\n";
    std::ostringstream sink;
    cli::run({"build", "esym-hom", "--n", "5", "--out", circ}, sink, sink);

    const std::vector<std::vector<std::string>> commands{
        {"gen", "debruijn", "--alphabet", "3", "--order", "3", "--format", "json"},
        {"gen", "dbmon", "--degree", "64", "--format", "json"},
        {"gen", "mainnd", "--n", "3", "--d", "5", "--format", "json"},
        {"gen", "esym", "--n", "6", "--d", "3", "--format", "json"},
        {"gen", "grid", "--n", "4", "--format", "json"},
        {"build", "esym-hom", "--n", "7"},
        {"build", "esym-dnc", "--n", "9", "--method", "naive"},
        {"build", "esym-dnc", "--n", "9", "--method", "karatsuba"},
        {"build", "monomial", "--gen", "dbmon:64"},
        {"derive", "--circuit", circ},
        {"bound", "--gen", "dbmon:64", "--ell", "6", "--format", "json"},
        {"bound", "--poly", poly, "--gen", "esymd:8,4", "--ell", "2", "--format", "json"},
        {"verify", "--circuit", circ, "--gen", "esym:5,3", "--format", "json"},
        {"verify", "--circuit", circ, "--gen", "esym:5,3", "--mode", "pit", "--seed", "7", "--format", "json"},
        {"lemma-check", "--trials", "50", "--ell", "3", "--seed", "11", "--format", "json"},
        {"export", "--circuit", circ, "--format", "json"},
        {"export", "--circuit", circ, "--format", "dot"},
    };
    std::size_t compared = 0;
    for (const auto& cmd : commands) {
        std::string joined;
        for (const auto& a : cmd) joined += a + " ";
        std::string runs[2], files[2];
        for (int r = 0; r < 2; ++r) {
            auto args = cmd;
            const auto artifact = dir / ("out" + std::to_string(r));
            args.push_back("--out");
            args.push_back(artifact.string());
            std::ostringstream out, err;
            const int rc = cli::run(args, out, err);
            if (rc != 0) o.fail(joined + "exited " + std::to_string(rc) + ": " + err.str());
            runs[r] = out.str();
            files[r] = read_file(artifact);
        }
        if (runs[0] != runs[1] || files[0] != files[1]) o.fail(joined + "differs between runs");
        if (files[0].empty()) o.fail(joined + "wrote no artifact");
        ++compared;
    }
    std::filesystem::remove_all(dir);
    if (o.pass) o.detail = std::to_string(compared) + " commands byte-identical across runs";
    return o;
}

struct Criterion {
    const char* name;
    double seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {"grid monomial measure", 5, grid_measure},
        {"de Bruijn monomial measure", 5, debruijn_measure},
        {"measure lemma property suite", 60, measure_lemma},
        {"derivative transform", 120, derivative_transform},
        {"esym derivative rank", 10, esym_rank},
        {"mainnd family measure", 10, mainnd_measure},
        {"builder equivalence", 60, builder_equivalence},
        {"lower/upper sandwich", 10, sandwich},
        {"Karatsuba size scaling", 30, karatsuba_scaling},
        {"determinism", 60, determinism},
    };
    std::size_t only = 0;
    if (argc > 1) only = std::stoul(argv[1]);
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (only != 0 && only != i + 1) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= all[i].seconds) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(all[i].seconds));
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << all[i].name << " [" << secs << " s]: " << o.detail
                  << "\n";
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
