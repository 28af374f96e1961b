#pragma once

#include <json.hpp>

#include "acgi/cfi.hpp"
#include "acgi/graph_io.hpp"
#include "acgi/sym_model.hpp"

namespace acgi {

struct AcOptions {
    int d = 3;
    std::vector<std::uint64_t> primes;  // empty: all primes in (n, 2n] plus 2
    std::uint64_t seed = 0;
    unsigned trials = 24;
    SymBackend backend = SymBackend::Exact;
};

std::vector<std::uint64_t> default_primes(int n);

// Decide isomorphism of the adjacency encodings in the approximate category
// over each selected prime. The overall verdict is "nonisomorphic" exactly
// when some prime certifies it, "isomorphic-with-witness" only with a
// verified certificate, otherwise "inconclusive".
nlohmann::json cmd_ac(const GraphDocument& g1, const GraphDocument& g2, const AcOptions& opt);

nlohmann::json cmd_wl(const GraphDocument& g1, const GraphDocument& g2, int k);
nlohmann::json cmd_oracle(const GraphDocument& g1, const GraphDocument& g2);

// base: "k4", "k33", "cube", "cycle:N", "random:N:SEED"
std::pair<GraphDocument, GraphDocument> cmd_cfi_gen(const std::string& base,
                                                    std::pair<int, int> special_edge = {-1, -1});

// The worked multiplicative-group example: prints and returns the S -> I_d ->
// Hom_d derivation for the two object pairs, checking the expected values
// when d = 5.
nlohmann::json cmd_demo_gm(std::uint64_t p, int d);

// Evaluate a functor-tree expression on the encodings of one or two graphs
// and report the dimensions; 2-colored graphs get the gadget encoding.
nlohmann::json cmd_functor(const std::string& expr, const GraphDocument& g1,
                           const GraphDocument* g2, std::uint64_t p, int d);

// Operation counts of the degree-3 rank-functor route on gadget pairs from
// bases of 4..8 vertices, with a log-log slope fit, plus one full Hom-space
// computation at n = 6 for reference.
nlohmann::json cmd_opcount_report(std::uint64_t seed = 1);

// Re-check a report's certificate against the input graphs: permutation
// witnesses are applied edge by edge, Hom certificates are verified against
// a freshly built model at the recorded prime and extension degree.
bool verify_report_certificate(const nlohmann::json& report, const GraphDocument& g1,
                               const GraphDocument& g2);

}  // namespace acgi
