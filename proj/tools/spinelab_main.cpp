// spinelab: command-line workbench for thorned-graph enumeration, spine and
// pattern quotient homology, stabilization maps, and the verification suites.
//
// Exit codes: 0 success, 2 verification failure, 3 budget exceeded,
// 4 bad flags.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "spinelab/cache.hpp"
#include "spinelab/chain.hpp"
#include "spinelab/delta.hpp"
#include "spinelab/enumerate.hpp"
#include "spinelab/manifest.hpp"
#include "spinelab/parallel.hpp"
#include "spinelab/pattern.hpp"
#include "spinelab/spine.hpp"
#include "spinelab/words.hpp"

using namespace spinelab;

namespace {

struct CommonFlags {
    int threads = default_threads();
    long long budget = 2000000;
    bool no_cache = false;
    std::string cache_dir;
    std::string out = "-";
    std::string manifest_path;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& c) {
    cmd->add_option("--threads", c.threads, "worker threads (default: hardware)");
    cmd->add_option("--budget", c.budget, "cell/candidate budget");
    cmd->add_flag("--no-cache", c.no_cache, "disable the on-disk cache");
    cmd->add_option("--cache-dir", c.cache_dir, "cache directory (else SPINELAB_CACHE)");
    cmd->add_option("--out", c.out, "result file, '-' for stdout");
    cmd->add_option("--manifest", c.manifest_path, "manifest file (default: stderr)");
    cmd->add_option("--seed", c.seed, "seed for randomized checks");
}

struct ResultWriter {
    std::string buffer;
    void line(const ojson& j) {
        buffer += j.dump();
        buffer.push_back('\n');
    }
};

int finish(const CommonFlags& c, const std::string& command, const ojson& params,
           ResultWriter& w, double ms, long long cache_hits, bool ok) {
    if (c.out == "-") {
        std::cout << w.buffer;
    } else {
        std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
        if (!f) {
            std::cerr << "cannot open output file: " << c.out << "\n";
            return 1;
        }
        f << w.buffer;
    }
    RunManifest m;
    m.command = command;
    m.parameters = params;
    m.seed = c.seed;
    m.elapsed_ms = ms;
    m.cache_hits = cache_hits;
    m.result_digest = fnv1a_hex(w.buffer);
    if (c.manifest_path.empty()) {
        std::cerr << m.to_json().dump() << "\n";
    } else {
        std::ofstream f(c.manifest_path, std::ios::binary | std::ios::trunc);
        f << m.to_json().dump() << "\n";
    }
    return ok ? 0 : 2;
}

EnumerateOptions enum_opts(const CommonFlags& c) {
    EnumerateOptions o;
    o.threads = c.threads;
    o.budget = c.budget;
    o.use_cache = !c.no_cache;
    o.cache_dir = c.cache_dir;
    return o;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

ojson betti_report_lines(const ChainComplex& chain, bool integral, ResultWriter& w) {
    ojson summary;
    if (integral) {
        auto h = homology_z(chain);
        for (std::size_t d = 0; d < h.betti.size(); ++d) {
            ojson j;
            j["dim"] = d;
            j["cells"] = chain.cell_count(static_cast<int>(d));
            j["betti"] = h.betti[d];
            ojson tor = ojson::array();
            for (const auto& t : h.torsion[d]) tor.push_back(t.str());
            j["torsion"] = std::move(tor);
            w.line(j);
        }
        summary["euler_cells"] = h.euler_cells;
        summary["euler_betti"] = h.euler_betti;
        summary["coefficients"] = "z";
        summary["note"] = "integral homology of the quotient complex (space level only)";
    } else {
        auto betti = betti_q(chain);
        long long chi = 0;
        int sign = 1;
        for (std::size_t d = 0; d < betti.size(); ++d) {
            ojson j;
            j["dim"] = d;
            j["cells"] = chain.cell_count(static_cast<int>(d));
            j["betti"] = betti[d];
            w.line(j);
            chi += sign * betti[d];
            sign = -sign;
        }
        summary["euler_cells"] = chain.euler_from_cells();
        summary["euler_betti"] = chi;
        summary["coefficients"] = "q";
    }
    summary["dd_zero"] = true;  // verified during construction
    return summary;
}

// ---- verify suites ------------------------------------------------------

bool run_suite_lemma(int n_max, int s_max, const EnumerateOptions& eo, ResultWriter& w) {
    auto report = verify_basepoint_loop_lemma(n_max, s_max, eo);
    for (const auto& c : report.cases) {
        ojson j;
        j["suite"] = "lemma";
        j["check"] = "basepoint-loop";
        j["n"] = c.n;
        j["s"] = c.s;
        j["low_degree_classes"] = c.low_degree_classes;
        j["violations"] = c.violations;
        if (c.sharp_witness)
            j["sharp_witness"] = *c.sharp_witness;
        else
            j["sharp_witness"] = nullptr;
        j["status"] = c.violations.empty() ? "pass" : "fail";
        w.line(j);
    }
    return report.ok;
}

bool run_suite_diagrams(int samples, std::uint64_t seed, ResultWriter& w) {
    bool ok = true;
    auto emit = [&](const std::string& check, int n, int s, long long fails) {
        ojson j;
        j["suite"] = "diagrams";
        j["check"] = check;
        j["n"] = n;
        j["s"] = s;
        j["samples"] = samples;
        j["failures"] = fails;
        j["status"] = fails == 0 ? "pass" : "fail";
        w.line(j);
        if (fails) ok = false;
    };
    std::uint64_t ctr = seed;
    for (int n = 1; n <= 4; ++n) {
        for (int s = 1; s <= 4; ++s) {
            long long f1 = 0, f2 = 0, f3 = 0, f4 = 0;
            for (int i = 0; i < samples; ++i) {
                auto g = random_element(n, s, 8, ++ctr);
                if (!(beta(mu(mu(g))) == alpha(g))) ++f1;
                if (!(gamma_fill(mu(g)) == g)) ++f2;
                if (s == 1) {
                    auto lhs = gamma_fill(alpha(g));
                    auto rhs = beta(mu(g));
                    if (!gamma_equal(lhs, rhs)) ++f3;
                    // Twisting by an inner automorphism must not change the
                    // outer class; twisting by a transvection must.
                    Word c = random_word(n + 1, 6, ++ctr);
                    std::vector<Word> im, inv;
                    for (int k = 1; k <= n + 1; ++k) {
                        Word xk = Word::generator(k);
                        im.push_back(Word::concat(Word::concat(c, xk), c.inverse()));
                        inv.push_back(Word::concat(
                            Word::concat(c.inverse(), xk), c));
                    }
                    auto conj = FreeAutomorphism::create(n + 1, im, inv);
                    GammaElement twisted{n + 1, 0, conj.compose(lhs.phi), {}};
                    if (!gamma_equal(twisted, rhs)) ++f3;
                    auto trans = nielsen_transvection(n + 1, 1, 2, false);
                    GammaElement wrong{n + 1, 0, trans.compose(lhs.phi), {}};
                    if (gamma_equal(wrong, rhs)) ++f3;
                }
                if (s >= 2) {
                    // Kernel of the forget-last map and its product rule.
                    auto k1 = GammaElement::identity(n, s);
                    auto k2 = GammaElement::identity(n, s);
                    k1.thorns.back() = random_word(n, 8, ++ctr);
                    k2.thorns.back() = random_word(n, 8, ++ctr);
                    auto w1 = kernel_project(k1), w2 = kernel_project(k2);
                    if (!w1 || !w2 || *w1 != k1.thorns.back()) ++f4;
                    auto prod = kernel_project(compose(k1, k2));
                    if (!prod || !(*prod == Word::concat(*w2, *w1))) ++f4;
                    if (!g.phi.is_identity() && kernel_project(g)) ++f4;
                }
            }
            emit("fig1: alpha = beta mu^2", n, s, f1);
            emit("retraction: gamma mu = id", n, s, f2);
            if (s == 1) emit("fig2: gamma alpha = beta mu", n, s, f3);
            if (s >= 2) emit("kernel: forget-last", n, s, f4);
        }
    }
    return ok;
}

bool run_suite_delta(int samples, std::uint64_t seed, ResultWriter& w) {
    bool ok = true;
    auto check = [&](const std::string& name, const SimplicialComplex& z) {
        auto res = delta_homology_check(z, 3);
        ojson j;
        j["suite"] = "delta";
        j["check"] = name;
        ojson dims = ojson::array();
        for (const auto& drow : res.dims) {
            ojson r;
            r["dim"] = drow.dim;
            r["betti_z"] = drow.betti_z;
            r["betti_delta"] = drow.betti_delta;
            ojson tz = ojson::array(), td = ojson::array();
            for (const auto& t : drow.torsion_z) tz.push_back(t.str());
            for (const auto& t : drow.torsion_delta) td.push_back(t.str());
            r["torsion_z"] = std::move(tz);
            r["torsion_delta"] = std::move(td);
            dims.push_back(std::move(r));
        }
        j["dims"] = std::move(dims);
        j["status"] = res.equal ? "pass" : "fail";
        w.line(j);
        if (!res.equal) ok = false;
    };
    check("boundary-of-triangle", boundary_of_simplex(2));
    check("boundary-of-tetrahedron", boundary_of_simplex(3));
    check("projective-plane", projective_plane());
    for (int i = 0; i < samples; ++i)
        check("random-" + std::to_string(i), random_complex(seed + static_cast<std::uint64_t>(i)));
    return ok;
}

bool run_suite_pattern(int n_max, ResultWriter& w) {
    bool ok = true;
    for (int n = 2; n <= n_max; ++n) {
        auto c = pattern_quotient(n, n + 1);
        if (!verify_dd_zero(c)) throw structural_error("pattern boundary broken");
        auto betti = betti_q(c, true);
        bool pass = true;
        for (int d = 0; d <= n - 1; ++d)
            if (betti[static_cast<std::size_t>(d)] != 0) pass = false;
        ojson j;
        j["suite"] = "pattern";
        j["check"] = "reduced-betti-vanish";
        j["n"] = n;
        j["reduced_betti"] = std::vector<long long>(betti.begin(), betti.end());
        j["vanish_through"] = n - 1;
        j["status"] = pass ? "pass" : "fail";
        w.line(j);
        if (!pass) ok = false;
    }
    return ok;
}

// ---- commands -----------------------------------------------------------

int cmd_enumerate(const CommonFlags& c, const EnumerationQuery& q, bool non_reduced) {
    auto t0 = std::chrono::steady_clock::now();
    EnumerationQuery query = q;
    query.reduced = !non_reduced;
    validate(query);
    auto classes = enumerate_graphs(query, enum_opts(c));
    ResultWriter w;
    for (const auto& cls : classes) w.line(graph_to_json(cls.graph));
    ojson params = query_to_json(query);
    return finish(c, "enumerate", params, w, ms_since(t0), 0, true);
}

int cmd_homology(const CommonFlags& c, int n, int s, bool restrict_l,
                 std::optional<int> degree_max, int max_dim, const std::string& coeff,
                 const std::string& dump_complex) {
    auto t0 = std::chrono::steady_clock::now();
    if (coeff != "q" && coeff != "z") throw bad_flags_error("--coeff must be q or z");
    SpineOptions so;
    so.restrict_to_L = restrict_l;
    so.degree_max = degree_max;
    so.max_dim = max_dim;
    so.budget = c.budget;
    so.threads = c.threads;
    so.use_cache = !c.no_cache;
    so.cache_dir = c.cache_dir;
    auto sc = spine_quotient(n, s, so);
    if (!dump_complex.empty()) {
        auto labels = sc.cell_labels();
        std::ofstream f(dump_complex, std::ios::binary | std::ios::trunc);
        if (!f) throw bad_flags_error("cannot open " + dump_complex);
        f << complex_to_json(sc.chain, &labels).dump() << "\n";
    }
    ResultWriter w;
    ResultWriter csv;  // rendered view of the same table
    ojson summary = betti_report_lines(sc.chain, coeff == "z", w);
    summary["n"] = n;
    summary["s"] = s;
    w.line(summary);
    ojson params;
    params["n"] = n;
    params["s"] = s;
    params["restrict_L"] = restrict_l;
    if (degree_max)
        params["degree_max"] = *degree_max;
    else
        params["degree_max"] = nullptr;
    params["max_dim"] = max_dim;
    params["coeff"] = coeff;
    bool euler_ok = true;
    if (so.max_dim < 0)  // full complex: cross-check Euler characteristics
        euler_ok = summary["euler_cells"] == summary["euler_betti"];
    return finish(c, "homology", params, w, ms_since(t0), 0, euler_ok);
}

int cmd_stab_map(const CommonFlags& c, const std::string& map_name, int n, int s, int dim) {
    auto t0 = std::chrono::steady_clock::now();
    StabKind kind = stab_kind_from_string(map_name);
    int tn = kind == StabKind::mu ? n : n + 1;
    int ts = kind == StabKind::alpha ? s : (kind == StabKind::mu ? s + 1 : s - 2);
    if (kind == StabKind::beta && s < 2) throw bad_flags_error("beta needs --marks >= 2");
    if (s < 1) throw bad_flags_error("stabilization maps need --marks >= 1");
    SpineOptions so;
    so.max_dim = dim + 1;
    so.budget = c.budget;
    so.threads = c.threads;
    so.use_cache = !c.no_cache;
    so.cache_dir = c.cache_dir;
    auto src = spine_quotient(n, s, so);
    auto tgt = spine_quotient(tn, ts, so);
    auto f = stabilization_chain_map(kind, src, tgt);
    auto induced = induced_maps(f, src.chain, tgt.chain, dim);
    const auto& im = induced.back();

    // Stability ranges: alpha and mu are isomorphisms for n >= 2i+2 (alpha
    // also surjects at n = 2i+1); beta matches alpha for a pointed target and
    // needs one more handle for the unpointed one.
    std::string verdict;
    bool ok = true;
    bool in_iso_range, in_surj_range;
    if (kind == StabKind::beta && ts == 0) {
        in_iso_range = n >= 2 * dim + 3;
        in_surj_range = n == 2 * dim + 2;
    } else {
        in_iso_range = n >= 2 * dim + 2;
        in_surj_range = n == 2 * dim + 1;
    }
    if (im.source_rank == 0 && im.target_rank == 0) {
        verdict = in_iso_range ? "in-range-vacuous" : "out-of-range-vacuous";
    } else if (in_iso_range) {
        verdict = im.iso ? "in-range-iso" : "in-range-FAIL";
        ok = im.iso;
    } else if (in_surj_range) {
        verdict = im.surjective ? "in-range-surjective" : "in-range-FAIL";
        ok = im.surjective;
    } else {
        verdict = "out-of-range";
    }

    ResultWriter w;
    ojson j;
    j["map"] = map_name;
    j["dim"] = dim;
    j["source"] = ojson::array({n, s});
    j["target"] = ojson::array({tn, ts});
    j["source_betti"] = im.source_rank;
    j["target_betti"] = im.target_rank;
    ojson rows = ojson::array();
    for (int i = 0; i < im.matrix.rows; ++i) {
        ojson row = ojson::array();
        for (int jj = 0; jj < im.matrix.cols; ++jj) {
            Rat v = im.matrix.a[i][jj];
            row.push_back(Rat(v).str());
        }
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    j["rank"] = im.rank;
    j["injective"] = im.injective;
    j["surjective"] = im.surjective;
    j["iso"] = im.iso;
    j["verdict"] = verdict;
    w.line(j);
    ojson params;
    params["map"] = map_name;
    params["n"] = n;
    params["s"] = s;
    params["dim"] = dim;
    return finish(c, "stab-map", params, w, ms_since(t0), 0, ok);
}

int cmd_verify(const CommonFlags& c, const std::string& suite, int samples, int n_max,
               int s_max) {
    auto t0 = std::chrono::steady_clock::now();
    ResultWriter w;
    bool ok = true;
    auto eo = enum_opts(c);
    if (suite == "lemma" || suite == "all") ok = run_suite_lemma(n_max, s_max, eo, w) && ok;
    if (suite == "diagrams" || suite == "all") ok = run_suite_diagrams(samples, c.seed, w) && ok;
    if (suite == "delta" || suite == "all")
        ok = run_suite_delta(std::min(samples, 50), c.seed, w) && ok;
    if (suite == "pattern" || suite == "all") ok = run_suite_pattern(5, w) && ok;
    if (suite != "lemma" && suite != "diagrams" && suite != "delta" && suite != "pattern" &&
        suite != "all")
        throw bad_flags_error("unknown suite: " + suite);
    ojson params;
    params["suite"] = suite;
    params["samples"] = samples;
    params["n_max"] = n_max;
    params["s_max"] = s_max;
    return finish(c, "verify", params, w, ms_since(t0), 0, ok);
}

int cmd_delta_check(const CommonFlags& c, int count, int max_dim) {
    auto t0 = std::chrono::steady_clock::now();
    ResultWriter w;
    bool ok = true;
    auto check = [&](const std::string& name, const SimplicialComplex& z) {
        auto res = delta_homology_check(z, max_dim);
        ojson j;
        j["check"] = name;
        j["status"] = res.equal ? "pass" : "fail";
        w.line(j);
        if (!res.equal) ok = false;
    };
    check("boundary-of-triangle", boundary_of_simplex(2));
    check("boundary-of-tetrahedron", boundary_of_simplex(3));
    check("projective-plane", projective_plane());
    for (int i = 0; i < count; ++i)
        check("random-" + std::to_string(i), random_complex(c.seed + static_cast<std::uint64_t>(i)));
    ojson params;
    params["count"] = count;
    params["max_dim"] = max_dim;
    return finish(c, "delta-check", params, w, ms_since(t0), 0, ok);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinelab: graph-complex and homology-stability workbench"};
    app.require_subcommand(1);

    CommonFlags common;

    // enumerate
    auto* en = app.add_subcommand("enumerate", "enumerate reduced thorned graphs");
    EnumerationQuery q;
    bool non_reduced = false;
    int deg_max_flag = -1;
    en->add_option("--rank", q.n, "rank n")->required();
    en->add_option("--marks", q.s, "distinguished point count s")->required();
    en->add_option("--degree-max", deg_max_flag, "maximum degree filter");
    en->add_flag("--require-basepoint-loop", q.require_basepoint_loop);
    en->add_flag("--forbid-basepoint-loop", q.forbid_basepoint_loop);
    en->add_flag("--non-reduced", non_reduced, "allow separating edges (no downstream support)");
    add_common(en, common);

    // homology
    auto* ho = app.add_subcommand("homology", "homology of the quotient spine");
    int hn = 0, hs = 0, hmax = -1;
    bool restrict_l = false;
    int hdeg = -1;
    std::string coeff = "q";
    std::string dump_complex;
    ho->add_option("--rank", hn)->required();
    ho->add_option("--marks", hs)->required();
    ho->add_flag("--restrict-L", restrict_l, "restrict to graphs with a basepoint loop");
    ho->add_option("--degree-max", hdeg);
    ho->add_option("--max-dim", hmax, "truncate above this dimension (-1: full)");
    ho->add_option("--coeff", coeff, "q (rational) or z (integral, space level)");
    ho->add_option("--dump-complex", dump_complex, "write the cell complex as JSON");
    add_common(ho, common);

    // stab-map
    auto* st = app.add_subcommand("stab-map", "induced stabilization map on homology");
    std::string map_name;
    int sn = 0, ss = 0, sdim = 0;
    st->add_option("--map", map_name, "alpha|mu|beta")->required();
    st->add_option("--rank", sn)->required();
    st->add_option("--marks", ss)->required();
    st->add_option("--dim", sdim, "homology dimension i")->required();
    add_common(st, common);

    // verify
    auto* ve = app.add_subcommand("verify", "verification suites");
    std::string suite = "all";
    int samples = 1000, vn_max = 5, vs_max = 3;
    ve->add_option("--suite", suite, "lemma|diagrams|delta|pattern|all");
    ve->add_option("--samples", samples);
    ve->add_option("--n-max", vn_max);
    ve->add_option("--s-max", vs_max);
    add_common(ve, common);

    // delta-check
    auto* dc = app.add_subcommand("delta-check", "homology equivalence of the tuple complex");
    int dcount = 50, dmax = 3;
    dc->add_option("--count", dcount, "number of random complexes");
    dc->add_option("--max-dim", dmax, "compare homology through this dimension");
    add_common(dc, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 4;
    }

    try {
        if (en->parsed()) {
            if (deg_max_flag >= 0) q.degree_max = deg_max_flag;
            return cmd_enumerate(common, q, non_reduced);
        }
        if (ho->parsed()) {
            std::optional<int> dm;
            if (hdeg >= 0) dm = hdeg;
            return cmd_homology(common, hn, hs, restrict_l, dm, hmax, coeff, dump_complex);
        }
        if (st->parsed()) return cmd_stab_map(common, map_name, sn, ss, sdim);
        if (ve->parsed()) return cmd_verify(common, suite, samples, vn_max, vs_max);
        if (dc->parsed()) return cmd_delta_check(common, dcount, dmax);
    } catch (const bad_flags_error& e) {
        std::cerr << "bad flags: " << e.what() << "\n";
        return 4;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 4;
}
