#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "acgi/pipeline.hpp"

using namespace acgi;

namespace {

int emit(const nlohmann::json& report, const std::string& path) {
    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot write " << path << "\n";
            return 2;
        }
        out << text;
    }
    return 0;
}

std::vector<std::uint64_t> parse_primes(const std::string& spec, int n) {
    if (spec.empty() || spec == "auto") return default_primes(n);
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        out.push_back(std::stoull(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    for (std::uint64_t p : out)
        if (!is_prime_u64(p)) throw std::invalid_argument("--primes: " + std::to_string(p) + " is not prime");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate-category graph isomorphism toolkit"};
    app.require_subcommand(1);

    std::string g1_path, g2_path, emit_path, primes_spec = "auto", backend = "exact", base = "k4";
    int d = 3, k = 1;
    std::uint64_t seed = 0, p = 7;
    unsigned trials = 24;
    int special_u = -1, special_v = -1;

    auto* ac = app.add_subcommand("ac", "isomorphism verdict in the approximate category over a prime sweep");
    ac->add_option("graph1", g1_path, "first graph (json or edge list)")->required();
    ac->add_option("graph2", g2_path, "second graph")->required();
    ac->add_option("-d", d, "truncation degree (default 3)");
    ac->add_option("--primes", primes_spec, "auto or comma-separated primes");
    ac->add_option("--seed", seed, "random seed");
    ac->add_option("--trials", trials, "certificate search trials per prime");
    ac->add_option("--backend", backend, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
    ac->add_option("--emit-json", emit_path, "also write the report to a file");

    auto* wl = app.add_subcommand("wl", "Weisfeiler-Lehman comparison");
    wl->add_option("graph1", g1_path)->required();
    wl->add_option("graph2", g2_path)->required();
    wl->add_option("-k", k, "refinement dimension 1..3");
    wl->add_option("--emit-json", emit_path);

    auto* cfi = app.add_subcommand("cfi-gen", "generate a gadget pair from a base graph");
    cfi->add_option("--base", base, "k4 | k33 | cube | cycle:N | random:N:SEED");
    cfi->add_option("--special-u", special_u, "special edge endpoint");
    cfi->add_option("--special-v", special_v, "special edge endpoint");
    cfi->add_option("--out-prefix", emit_path, "write PREFIX_plain.json and PREFIX_twisted.json");

    auto* oracle = app.add_subcommand("oracle", "exhaustive isomorphism search with refinement pruning");
    oracle->add_option("graph1", g1_path)->required();
    oracle->add_option("graph2", g2_path)->required();
    oracle->add_option("--emit-json", emit_path);

    auto* demo = app.add_subcommand("demo-gm", "the multiplicative-group worked example");
    demo->add_option("-p", p, "prime (default 7)");
    demo->add_option("-d", d, "truncation degree (default 5)");
    demo->add_option("--emit-json", emit_path);

    auto* opcount = app.add_subcommand("opcount", "operation-count scaling report");
    opcount->add_option("--seed", seed);
    opcount->add_option("--emit-json", emit_path);

    std::string functor_expr;
    auto* functor = app.add_subcommand("functor", "evaluate a functor tree on graph encodings");
    functor->add_option("--expr", functor_expr, "e.g. comp(contract, tensor(q, ...))")->required();
    functor->add_option("graph1", g1_path)->required();
    functor->add_option("graph2", g2_path);
    functor->add_option("-p", p, "prime (default 2)");
    functor->add_option("-d", d, "degree budget (default 3)");
    functor->add_option("--emit-json", emit_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (ac->parsed()) {
            GraphDocument a = load_graph_file(g1_path), b = load_graph_file(g2_path);
            AcOptions opt;
            opt.d = d;
            opt.primes = parse_primes(primes_spec, a.n);
            opt.seed = seed;
            opt.trials = trials;
            opt.backend = backend == "exact" ? SymBackend::Exact : SymBackend::Sampled;
            return emit(cmd_ac(a, b, opt), emit_path);
        }
        if (wl->parsed()) {
            GraphDocument a = load_graph_file(g1_path), b = load_graph_file(g2_path);
            return emit(cmd_wl(a, b, k), emit_path);
        }
        if (cfi->parsed()) {
            auto [plain, twisted] = cmd_cfi_gen(base, {special_u, special_v});
            if (emit_path.empty()) {
                std::cout << emit_graph_json(plain) << emit_graph_json(twisted);
            } else {
                std::ofstream(emit_path + "_plain.json") << emit_graph_json(plain);
                std::ofstream(emit_path + "_twisted.json") << emit_graph_json(twisted);
                std::cout << "wrote " << emit_path << "_plain.json and " << emit_path << "_twisted.json\n";
            }
            return 0;
        }
        if (oracle->parsed()) {
            GraphDocument a = load_graph_file(g1_path), b = load_graph_file(g2_path);
            return emit(cmd_oracle(a, b), emit_path);
        }
        if (demo->parsed()) {
            if (!demo->count("-d")) d = 5;
            return emit(cmd_demo_gm(p, d), emit_path);
        }
        if (opcount->parsed()) return emit(cmd_opcount_report(seed ? seed : 1), emit_path);
        if (functor->parsed()) {
            if (!functor->count("-p")) p = 2;
            GraphDocument a = load_graph_file(g1_path);
            std::optional<GraphDocument> b;
            if (!g2_path.empty()) b = load_graph_file(g2_path);
            return emit(cmd_functor(functor_expr, a, b ? &*b : nullptr, p, d), emit_path);
        }
    } catch (const GraphParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
