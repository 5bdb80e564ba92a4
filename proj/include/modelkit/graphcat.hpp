#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Finite undirected graphs with loops permitted, their homomorphisms, cores,
// and the weak-equivalence machinery built on hom-equivalence. Everything is
// exact and deterministic; searches return lexicographically least witnesses
// or a certified exhaustive absence.

namespace modelkit::graphcat {

// Vertices are 0..n-1. Edges are stored normalized (u <= v), sorted, and
// deduplicated; a loop is the pair (v, v). Adjacency rows are bitmasks, which
// caps graphs at 64 vertices; nothing in this library needs more.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::uint64_t> adj;

    static Graph make(int n, std::vector<std::pair<int, int>> edges);

    bool adjacent(int u, int v) const { return (adj[u] >> v) & 1u; }
    bool has_loop(int v) const { return adjacent(v, v); }
    int degree(int v) const;
    int edge_count() const { return static_cast<int>(edges.size()); }
};

bool operator==(const Graph& a, const Graph& b);
bool operator!=(const Graph& a, const Graph& b);

// A vertex map src -> tgt; valid when every edge lands on an edge (loops
// count). Composition is (g after f).
struct GraphHom {
    std::vector<int> map;
};

bool operator==(const GraphHom& a, const GraphHom& b);

bool is_hom(const Graph& src, const Graph& tgt, const GraphHom& f);
GraphHom identity_hom(const Graph& g);
GraphHom compose(const GraphHom& g, const GraphHom& f);
bool is_injective(const GraphHom& f);
bool is_surjective(const GraphHom& f, int tgt_n);

// Partial assignment for constrained searches: fixed[v] is the required image
// of v, or -1 to leave v free. Out-of-range images are rejected.
struct HomConstraints {
    std::vector<int> fixed;
};

// Lexicographically least homomorphism (by the map vector), or nullopt after
// an exhaustive search. The unconstrained overload scans the same space.
std::optional<GraphHom> find_hom(const Graph& src, const Graph& tgt);
std::optional<GraphHom> find_hom(const Graph& src, const Graph& tgt,
                                 const HomConstraints& constraints);

// Per-vertex candidate bitmasks over tgt vertices; the workhorse behind
// sections, retractions, and the probe oracles.
std::optional<GraphHom> find_hom_restricted(const Graph& src, const Graph& tgt,
                                            const std::vector<std::uint64_t>& allowed);

// Enumerates every homomorphism in lexicographic order until fn returns
// false. all_homs collects, count_homs only counts.
void for_each_hom(const Graph& src, const Graph& tgt,
                  const std::function<bool(const GraphHom&)>& fn);
std::vector<GraphHom> all_homs(const Graph& src, const Graph& tgt);
long long count_homs(const Graph& src, const Graph& tgt);

bool is_isomorphic(const Graph& a, const Graph& b);
bool hom_equivalent(const Graph& a, const Graph& b);

// Section of f: g -> h is s: h -> g with f(s(w)) = w; a retraction witnesses
// that f itself is a section. Both searches are exhaustive and lex-least.
std::optional<GraphHom> find_section(const Graph& src, const Graph& tgt, const GraphHom& f);
std::optional<GraphHom> find_retraction(const Graph& src, const Graph& tgt, const GraphHom& f);

// Core computed by iterated proper retractions. retraction maps the input
// onto core vertex ids, inclusion embeds the core back, and the composite
// retraction . inclusion is the identity. The certificate is replayable:
// no_proper_retraction(result.core) repeats the exhaustive final check.
struct CoreResult {
    Graph core;
    std::vector<int> core_vertices;
    GraphHom retraction;
    GraphHom inclusion;
};

CoreResult core(const Graph& g);
CoreResult core_seeded(const Graph& g, std::uint64_t seed);
bool no_proper_retraction(const Graph& g);

// Canonical code: adjacency bitmask minimized over all vertex relabelings,
// prefixed by n. Supports n <= 7, which covers every enumeration tier here.
std::uint64_t canonical_code(const Graph& g);

// All isomorphism classes with at most max_n vertices, ascending by vertex
// count and then by canonical code. Loop-free mode drops looped classes.
std::vector<Graph> all_graphs(int max_n, bool loops_allowed = true);

// Finite diagrams and their (co)limits. Arrows carry the acting hom; nodes
// are indexed by position. Diagrams are capped at 4 nodes.
struct GraphDiagram {
    struct Arrow {
        int from = 0;
        int to = 0;
        GraphHom via;
    };
    std::vector<Graph> node;
    std::vector<Arrow> arrow;
};

// For limits the legs run apex -> node; for colimits node -> apex. The limit
// is the compatible-tuple subgraph of the product, the colimit the quotient
// of the disjoint union by the arrow identifications.
struct GraphCone {
    Graph apex;
    std::vector<GraphHom> leg;
};

GraphCone graph_limit(const GraphDiagram& d);
GraphCone graph_colimit(const GraphDiagram& d);

struct CoproductResult {
    Graph sum;
    GraphHom into_left;
    GraphHom into_right;
};

struct ProductResult {
    Graph prod;
    GraphHom onto_left;
    GraphHom onto_right;
};

CoproductResult coproduct(const Graph& a, const Graph& b);
ProductResult product(const Graph& a, const Graph& b);

// Refuting square for a bounded fibration test: the probe is the component
// inclusion base -> base + ext (ext admits a map to base, so the probe is an
// acyclic cofibration), top maps base into the source, and bottom is the ext
// part of the square's lower edge that admits no lift.
struct FibRefutation {
    Graph base;
    Graph ext;
    GraphHom top;
    GraphHom bottom;
};

struct FibStatus {
    int bound = 0;
    std::optional<FibRefutation> refutation;
    bool passed() const { return !refutation.has_value(); }
};

// Classification in the structure whose weak equivalences are the
// hom-equivalences and whose cofibrations are the component inclusions.
// Fibrations are only semi-decidable, so the flag reports the probe bound.
struct CoreClassification {
    bool we = false;
    bool cof = false;
    bool acyclic_fib = false;
    bool acyclic_cof = false;
    FibStatus fib_status;
};

CoreClassification classify_core_morphism(const Graph& src, const Graph& tgt,
                                          const GraphHom& f, int bound);

// Dual structure: acyclic cofibrations are the sections, cofibrations the
// sections followed by component inclusions, and the acyclic fibration test
// is bounded in the same way.
struct CocoreRefutation {
    Graph probe_src;
    Graph probe_tgt;
    GraphHom probe;
    GraphHom top;
    GraphHom bottom;
};

struct CocoreFibStatus {
    int bound = 0;
    std::optional<CocoreRefutation> refutation;
    bool passed() const { return !refutation.has_value(); }
};

struct CocoreClassification {
    bool we = false;
    bool cof = false;
    bool acyclic_cof = false;
    CocoreFibStatus acyclic_fib_status;
};

CocoreClassification classify_cocore_morphism(const Graph& src, const Graph& tgt,
                                              const GraphHom& f, int bound = 2);

// f = right . left with mid the stated object. The first factors through
// src + tgt (left a component inclusion, right a retraction onto tgt); the
// second through src + src x tgt (left additionally hom-invertible, right
// projecting the product part).
struct GraphFactorization {
    Graph mid;
    GraphHom left;
    GraphHom right;
};

GraphFactorization factor_cof_afib(const Graph& src, const Graph& tgt, const GraphHom& f);
GraphFactorization factor_acof_fib(const Graph& src, const Graph& tgt, const GraphHom& f);

// Endomorphism-based core tests: every endo surjective, no proper idempotent
// image, every endo an automorphism, every endo injective, and distinct
// non-adjacent pairs kept distinct and non-adjacent.
struct BauslaughProfile {
    bool all_surjective = false;
    bool no_proper_retraction = false;
    bool all_automorphisms = false;
    bool all_injective = false;
    bool nonadjacency_rigid = false;
};

BauslaughProfile bauslaugh_profile(const Graph& g);

// Comparison map into the pullback of tgt over its component reflection:
// true when it induces a bijection on connected components.
bool check_condition_b_pi0(const Graph& src, const Graph& tgt, const GraphHom& f);

int component_count(const Graph& g);
std::vector<int> component_labels(const Graph& g);

// Named corpus: complete graphs K1..K5, cycles C3..C7, paths P2..P5 (vertex
// count), the looped point L1, and the Petersen graph.
std::vector<std::string> graph_names();
Graph graph_by_name(const std::string& name);
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph looped_point();
Graph petersen_graph();
Graph empty_graph(int n);

// Erdos-Renyi draw: one uniform real per vertex pair in lexicographic order
// (loops drawn after the off-diagonal pairs when enabled), edge kept when the
// draw is below p. Same seed, same graph, on every platform.
Graph gnp(int n, double p, std::uint64_t seed, bool loops = false);

}  // namespace modelkit::graphcat
