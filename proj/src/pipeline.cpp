#include "acgi/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <atomic>
#include <thread>

#include "acgi/category.hpp"
#include "acgi/oracle.hpp"
#include "acgi/torus_model.hpp"

namespace acgi {

using nlohmann::json;
using u64 = std::uint64_t;

std::vector<u64> default_primes(int n) {
    std::vector<u64> ps = primes_in_range(n, 2 * n);
    if (std::find(ps.begin(), ps.end(), 2ull) == ps.end()) ps.insert(ps.begin(), 2);
    return ps;
}

namespace {

std::vector<Relation> graph_relations(const ColoredGraph& g) {
    Relation edges{2, {}};
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) edges.tuples.push_back({u, v});
    std::vector<Relation> rels{edges};
    int max_color = g.colors.empty() ? 0 : *std::max_element(g.colors.begin(), g.colors.end());
    if (max_color > 0) {
        for (int c = 0; c <= max_color; ++c) {
            Relation color{1, {}};
            for (int v = 0; v < g.n; ++v)
                if (g.colors[v] == c) color.tuples.push_back({v});
            rels.push_back(std::move(color));
        }
    }
    return rels;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

json cmd_ac(const GraphDocument& g1, const GraphDocument& g2, const AcOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    if (g1.n != g2.n) throw std::invalid_argument("ac: graphs must have the same number of vertices");
    if (g1.n < 1) throw std::invalid_argument("ac: graphs must be nonempty");
    if (opt.d < 2) throw std::invalid_argument("ac: d must be at least 2");
    ColoredGraph c1 = g1.to_colored(), c2 = g2.to_colored();
    std::vector<u64> primes = opt.primes.empty() ? default_primes(g1.n) : opt.primes;

    json report;
    report["algorithm"] = "ac";
    report["params"] = {{"d", opt.d},
                        {"primes", primes},
                        {"seed", opt.seed},
                        {"trials", opt.trials},
                        {"backend", opt.backend == SymBackend::Exact ? "exact" : "sampled"}};
    report["per_prime"] = json::array();

    std::string overall = "inconclusive";
    json certificate;
    if (g1 == g2) {
        overall = "isomorphic-with-witness";
        std::vector<int> id(g1.n);
        std::iota(id.begin(), id.end(), 0);
        certificate = {{"kind", "permutation"}, {"witness", id}, {"verified", true}};
    }

    // per-prime sub-runs execute concurrently; aggregation stays in prime
    // order so reports are deterministic
    struct PrimeResult {
        json entry;
        bool noniso = false;
        json certificate;
    };
    std::vector<PrimeResult> results(primes.size());
    auto run_prime = [&](std::size_t idx) {
        u64 p = primes[idx];
        PrimeResult& out = results[idx];
        out.entry["p"] = p;
        auto tp = std::chrono::steady_clock::now();
        try {
            FieldSpec F = FieldSpec::prime(p);
            SymOptions sopt;
            sopt.backend = opt.backend;
            sopt.seed = opt.seed;
            SymRingModel model(g1.n, opt.d, F, sopt);
            StructureEncoding e1 = encode_structure(model, graph_relations(c1));
            StructureEncoding e2 = encode_structure(model, graph_relations(c2));
            IsoOptions iopt;
            iopt.seed = opt.seed + p;
            iopt.trials = opt.trials;
            IsoVerdict v = is_isomorphic(e1.rep, AffineSubspace::singleton(F, e1.vec),
                                         AffineSubspace::singleton(F, e2.vec), iopt);
            out.entry["verdict"] = v.isomorphic()       ? "isomorphic"
                                   : v.not_isomorphic() ? "nonisomorphic"
                                                        : "inconclusive";
            out.entry["reason"] = v.reason;
            out.entry["hom_dims"] = {{"h12", v.dim_h12}, {"h21", v.dim_h21}, {"h11", v.dim_h11}, {"h22", v.dim_h22}};
            out.entry["backend"] = model.describe();
            out.noniso = v.not_isomorphic();
            if (v.isomorphic()) {
                FieldSpec Fc = v.ext_degree == 1 ? F : FieldSpec::extension(F.p, v.ext_degree);
                if (verify_certificate(model, Fc, v.phi, v.gamma))
                    out.certificate = {{"kind", "hom-certificate"}, {"p", p},
                                       {"ext_degree", v.ext_degree}, {"phi", v.phi},
                                       {"gamma", v.gamma},          {"verified", true}};
            }
        } catch (const std::exception& e) {
            out.entry["verdict"] = "error";
            out.entry["reason"] = e.what();
        }
        out.entry["ms"] = elapsed_ms(tp);
    };
    {
        std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(
                                                           primes.size(),
                                                           std::thread::hardware_concurrency()));
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < primes.size(); i = next++) run_prime(i);
            });
        for (auto& th : pool) th.join();
    }
    for (PrimeResult& r : results) {
        report["per_prime"].push_back(std::move(r.entry));
        if (r.noniso) overall = "nonisomorphic";
    }
    if (overall != "nonisomorphic" && certificate.is_null())
        for (PrimeResult& r : results)
            if (!r.certificate.is_null()) {
                overall = "isomorphic-with-witness";
                certificate = std::move(r.certificate);
                break;
            }
    report["overall"] = overall;
    if (!certificate.is_null()) report["certificate"] = certificate;
    report["ms"] = elapsed_ms(t0);
    return report;
}

json cmd_wl(const GraphDocument& g1, const GraphDocument& g2, int k) {
    auto t0 = std::chrono::steady_clock::now();
    ColoredGraph a = g1.to_colored(), b = g2.to_colored();
    bool dist = wl_distinguishes(a, b, k);
    StableColoring ca = wl_refine(a, k), cb = wl_refine(b, k);
    json report;
    report["algorithm"] = "wl";
    report["params"] = {{"k", k}};
    report["distinguished"] = dist;
    report["overall"] = dist ? "nonisomorphic" : "inconclusive";
    auto hist = [](const StableColoring& c) {
        json h = json::array();
        for (auto& [color, count] : c.histogram) h.push_back({color, count});
        return h;
    };
    report["histogram1"] = hist(ca);
    report["histogram2"] = hist(cb);
    report["ms"] = elapsed_ms(t0);
    return report;
}

json cmd_oracle(const GraphDocument& g1, const GraphDocument& g2) {
    auto t0 = std::chrono::steady_clock::now();
    json report;
    report["algorithm"] = "oracle";
    auto witness = graph_iso_search(g1.to_colored(), g2.to_colored());
    report["overall"] = witness ? "isomorphic-with-witness" : "nonisomorphic";
    if (witness) report["certificate"] = {{"kind", "permutation"}, {"witness", *witness}, {"verified", true}};
    report["ms"] = elapsed_ms(t0);
    return report;
}

std::pair<GraphDocument, GraphDocument> cmd_cfi_gen(const std::string& base,
                                                    std::pair<int, int> special_edge) {
    BaseGraph q;
    if (base == "k4") {
        q = base_k4();
    } else if (base == "k33") {
        q = base_k33();
    } else if (base == "cube") {
        q = base_cube();
    } else if (base.rfind("cycle:", 0) == 0) {
        q = base_cycle(std::stoi(base.substr(6)));
    } else if (base.rfind("random:", 0) == 0) {
        std::size_t colon = base.find(':', 7);
        int n = std::stoi(base.substr(7, colon - 7));
        u64 seed = std::stoull(base.substr(colon + 1));
        q = base_random_connected(n, seed);
    } else {
        throw std::invalid_argument("cfi-gen: unknown base '" + base +
                                    "' (use k4, k33, cube, cycle:N, random:N:SEED)");
    }
    if (special_edge.first < 0) special_edge = q.edges.front();
    CfiPair pair = build_cfi(q, special_edge);
    auto doc = [&](const ColoredGraph& g, bool twisted) {
        GraphDocument d = GraphDocument::from_colored(g);
        d.cfi_meta = {{"base", base},
                      {"twisted", twisted},
                      {"special_edge", {pair.special_edge.first, pair.special_edge.second}},
                      {"n1", pair.n1},
                      {"n2", pair.n2}};
        return d;
    };
    return {doc(pair.plain, false), doc(pair.twisted, true)};
}

json cmd_demo_gm(u64 p, int d) {
    auto t0 = std::chrono::steady_clock::now();
    FieldSpec F = FieldSpec::prime(p);
    TorusRingModel model(d, F);
    Representation rep = weight_rep(model, {3, 5});
    json report;
    report["algorithm"] = "demo-gm";
    report["params"] = {{"p", p}, {"d", d}, {"weights", {3, 5}}};
    report["dim_Rd"] = model.dim();

    auto describe_pair = [&](const AffineSubspace& x1, const AffineSubspace& x2) {
        json j;
        FpSubspace s = generating_space(rep, x1, x2);
        j["dim_S"] = s.dim();
        TruncatedIdeal ideal = closure(model, s);
        j["dim_ideal"] = ideal.span.dim();
        j["closure_iterations"] = ideal.iterations;
        HomSpace h = hom_space(rep, x1, x2);
        j["dim_hom"] = h.dim();
        return j;
    };

    AffineSubspace v1 = AffineSubspace::singleton(F, {1, 1});
    AffineSubspace v2 = AffineSubspace::singleton(F, {2, 1});
    AffineSubspace diag = AffineSubspace::linear(FpSubspace::span_rows(F, {{1, 1}}));

    json singleton = describe_pair(v1, v2);
    IsoVerdict verdict = is_isomorphic(rep, v1, v2, {.seed = 1, .trials = 16});
    singleton["verdict"] = verdict.isomorphic()       ? "isomorphic"
                           : verdict.not_isomorphic() ? "nonisomorphic"
                                                      : "inconclusive";
    singleton["reason"] = verdict.reason;
    report["pair_singletons"] = singleton;
    report["pair_diagonal"] = describe_pair(v1, diag);

    if (d == 5) {
        std::size_t hom0 = report["pair_singletons"]["dim_hom"].get<std::size_t>();
        std::size_t hom_diag = report["pair_diagonal"]["dim_hom"].get<std::size_t>();
        bool ok0 = (p == 31) ? (hom0 == 1 && verdict.isomorphic()) : (hom0 == 0 && verdict.not_isomorphic());
        bool ok_diag = hom_diag == 2;
        report["expected_values_hold"] = ok0 && ok_diag;
        if (!(ok0 && ok_diag)) throw std::logic_error("demo-gm: expected values failed");
    }
    report["ms"] = elapsed_ms(t0);
    return report;
}

bool verify_report_certificate(const json& report, const GraphDocument& g1, const GraphDocument& g2) {
    if (!report.contains("certificate")) return false;
    const json& cert = report["certificate"];
    if (cert["kind"] == "permutation") {
        std::vector<int> w = cert["witness"].get<std::vector<int>>();
        if (static_cast<int>(w.size()) != g1.n) return false;
        ColoredGraph a = g1.to_colored(), b = g2.to_colored();
        for (int v = 0; v < a.n; ++v) {
            if (a.colors[v] != b.colors[w[v]]) return false;
            if (a.adj[v].size() != b.adj[w[v]].size()) return false;
            for (int x : a.adj[v])
                if (!b.has_edge(w[v], w[x])) return false;
        }
        return true;
    }
    if (cert["kind"] == "hom-certificate") {
        u64 p = cert["p"].get<u64>();
        unsigned ext = cert["ext_degree"].get<unsigned>();
        int d = report["params"]["d"].get<int>();
        FieldSpec F = FieldSpec::prime(p);
        FieldSpec Fc = ext == 1 ? F : FieldSpec::extension(p, ext);
        SymRingModel model(g1.n, d, F);
        FpVec phi = cert["phi"].get<FpVec>();
        FpVec gamma = cert["gamma"].get<FpVec>();
        if (phi.size() != model.dim() || gamma.size() != model.dim()) return false;
        return verify_certificate(model, Fc, phi, gamma);
    }
    return false;
}

json cmd_functor(const std::string& expr, const GraphDocument& g1, const GraphDocument* g2,
                 u64 p, int d) {
    auto t0 = std::chrono::steady_clock::now();
    if (g1.n < 1) throw std::invalid_argument("functor: graph must be nonempty");
    FieldSpec F = FieldSpec::prime(p);
    ColoredGraph c1 = g1.to_colored();
    int max_color = *std::max_element(c1.colors.begin(), c1.colors.end());
    bool colored = max_color == 1;
    if (max_color > 1) throw std::invalid_argument("functor: only 2-colored graphs are supported");
    FunctorContext ctx = graph_functor_context(F, d, g1.n, colored);
    FunctorExpr f = parse_functor(expr, ctx);

    auto encode = [&](const ColoredGraph& g) {
        if (colored) return encode_cfi_graph(g);
        Relation edges{2, {}};
        for (int u = 0; u < g.n; ++u)
            for (int v : g.adj[u]) edges.tuples.push_back({u, v});
        return encode_structure_free(g.n, {edges});
    };

    json report;
    report["algorithm"] = "functor";
    report["params"] = {{"expr", expr}, {"p", p}, {"d", d}, {"encoding", ctx.source.name}};
    auto dim_json = [](const AffineSubspace& x) -> json {
        if (x.is_empty) return "empty";
        return *x.dim();
    };
    AffineSubspace y1 = eval(f, AffineSubspace::singleton(F, encode(c1).vec));
    report["dim1"] = dim_json(y1);
    if (g2) {
        if (g2->n != g1.n) throw std::invalid_argument("functor: graphs must have the same size");
        AffineSubspace y2 = eval(f, AffineSubspace::singleton(F, encode(g2->to_colored()).vec));
        report["dim2"] = dim_json(y2);
        bool dist = y1.dim() != y2.dim();
        report["distinguished"] = dist;
        report["overall"] = dist ? "nonisomorphic" : "inconclusive";
    } else {
        report["overall"] = "evaluated";
    }
    report["ms"] = elapsed_ms(t0);
    return report;
}

json cmd_opcount_report(u64 seed) {
    json report;
    report["algorithm"] = "opcount";
    report["entries"] = json::array();
    std::vector<double> xs, ys;
    std::vector<BaseGraph> bases;
    bases.push_back(base_k4());
    for (int n = 5; n <= 8; ++n) bases.push_back(base_random_connected(n, seed + n));
    bases.push_back(base_cube());
    FieldSpec F2 = FieldSpec::prime(2);
    for (const BaseGraph& q : bases) {
        CfiPair pair = build_cfi(q, q.edges.front());
        ops_reset();
        StructureEncoding e1 = encode_cfi_graph(pair.plain);
        StructureEncoding e2 = encode_cfi_graph(pair.twisted);
        FunctorExpr g = cfi_functor(F2, pair.plain.n);
        bool dist = distinguishes(g, AffineSubspace::singleton(F2, e1.vec),
                                  AffineSubspace::singleton(F2, e2.vec));
        u64 ops = ops_total();
        json entry = {{"base_n", q.n},
                      {"base_edges", q.edges.size()},
                      {"gadget_n", pair.plain.n},
                      {"field_ops", ops},
                      {"distinguished", dist}};
        report["entries"].push_back(entry);
        xs.push_back(std::log(static_cast<double>(pair.plain.n)));
        ys.push_back(std::log(static_cast<double>(ops)));
    }
    // least-squares slope of log(ops) against log(size)
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    report["loglog_slope"] = num / den;

    // one full Hom-space computation at n = 6 for scale reference
    {
        FieldSpec F7 = FieldSpec::prime(7);
        ops_reset();
        SymRingModel model(6, 2, F7);
        Relation edges{2, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 3}, {4, 5}, {5, 4}}};
        StructureEncoding enc = encode_structure(model, {edges});
        HomSpace h = hom_space(enc.rep, AffineSubspace::singleton(F7, enc.vec),
                               AffineSubspace::singleton(F7, enc.vec));
        report["full_hom_n6"] = {{"n", 6}, {"d", 2}, {"p", 7}, {"dim_hom", h.dim()}, {"field_ops", ops_total()}};
    }
    return report;
}

}  // namespace acgi
