#include "modelkit/graphcat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

namespace modelkit::graphcat {

namespace {

std::uint64_t full_mask(int n) {
    return n >= 64 ? ~0ull : (1ull << n) - 1;
}

std::string vertex_pair(int u, int v) {
    return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

Graph Graph::make(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0 || n > 64) {
        throw std::invalid_argument("vertex count must be between 0 and 64, got " +
                                    std::to_string(n));
    }
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw std::invalid_argument("edge " + vertex_pair(u, v) +
                                        " references a vertex outside 0.." +
                                        std::to_string(n - 1));
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.adj.assign(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : g.edges) {
        g.adj[u] |= 1ull << v;
        g.adj[v] |= 1ull << u;
    }
    return g;
}

int Graph::degree(int v) const {
    return std::popcount(adj[v]);
}

bool operator==(const Graph& a, const Graph& b) {
    return a.n == b.n && a.edges == b.edges;
}

bool operator!=(const Graph& a, const Graph& b) {
    return !(a == b);
}

bool operator==(const GraphHom& a, const GraphHom& b) {
    return a.map == b.map;
}

bool is_hom(const Graph& src, const Graph& tgt, const GraphHom& f) {
    if (static_cast<int>(f.map.size()) != src.n) return false;
    for (int v : f.map) {
        if (v < 0 || v >= tgt.n) return false;
    }
    for (auto [u, v] : src.edges) {
        if (!tgt.adjacent(f.map[u], f.map[v])) return false;
    }
    return true;
}

GraphHom identity_hom(const Graph& g) {
    GraphHom f;
    f.map.resize(static_cast<std::size_t>(g.n));
    std::iota(f.map.begin(), f.map.end(), 0);
    return f;
}

GraphHom compose(const GraphHom& g, const GraphHom& f) {
    GraphHom r;
    r.map.reserve(f.map.size());
    for (int v : f.map) r.map.push_back(g.map[v]);
    return r;
}

bool is_injective(const GraphHom& f) {
    std::uint64_t seen = 0;
    for (int v : f.map) {
        if ((seen >> v) & 1u) return false;
        seen |= 1ull << v;
    }
    return true;
}

bool is_surjective(const GraphHom& f, int tgt_n) {
    std::uint64_t seen = 0;
    for (int v : f.map) seen |= 1ull << v;
    return seen == full_mask(tgt_n);
}

namespace {

// Initial candidate sets: every target vertex, or the looped ones when the
// source vertex carries a loop.
std::vector<std::uint64_t> base_domains(const Graph& s, const Graph& t) {
    std::uint64_t loops = 0;
    for (int w = 0; w < t.n; ++w) {
        if (t.has_loop(w)) loops |= 1ull << w;
    }
    std::vector<std::uint64_t> dom(static_cast<std::size_t>(s.n), full_mask(t.n));
    for (int v = 0; v < s.n; ++v) {
        if (s.has_loop(v)) dom[v] = loops;
    }
    return dom;
}

std::vector<int> lex_order(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

std::vector<int> degree_order(const Graph& s) {
    std::vector<int> order = lex_order(s.n);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return s.degree(a) > s.degree(b); });
    return order;
}

// Backtracking scan over all maps respecting the domains, assigning vertices
// in the given order and candidates in ascending order. Domains of the still
// unassigned vertices are narrowed to the neighborhood of each placed image,
// so dead branches are cut as soon as a domain empties. The callback sees
// each complete map and returns false to abort the whole scan.
template <class Fn>
bool scan_homs(const Graph& s, const Graph& t, const std::vector<std::uint64_t>& init,
               const std::vector<int>& order, Fn&& fn) {
    const int n = s.n;
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    if (n == 0) return fn(map);

    std::vector<std::uint64_t> doms(static_cast<std::size_t>(n + 1) * n);
    std::copy(init.begin(), init.end(), doms.begin());
    std::vector<std::uint64_t> iter(static_cast<std::size_t>(n));

    int lvl = 0;
    iter[0] = doms[static_cast<std::size_t>(order[0])];
    while (lvl >= 0) {
        if (iter[lvl] == 0) {
            --lvl;
            continue;
        }
        const int v = order[lvl];
        const int w = std::countr_zero(iter[lvl]);
        iter[lvl] &= iter[lvl] - 1;
        map[v] = w;

        const std::uint64_t* cur = &doms[static_cast<std::size_t>(lvl) * n];
        std::uint64_t* nxt = &doms[(static_cast<std::size_t>(lvl) + 1) * n];
        std::copy(cur, cur + n, nxt);
        bool ok = true;
        for (int j = lvl + 1; j < n && ok; ++j) {
            const int u = order[j];
            if (s.adjacent(u, v)) {
                nxt[u] &= t.adj[w];
                ok = nxt[u] != 0;
            }
        }
        if (!ok) continue;
        if (lvl + 1 == n) {
            if (!fn(static_cast<const std::vector<int>&>(map))) return false;
            continue;
        }
        ++lvl;
        iter[lvl] = nxt[static_cast<std::size_t>(order[lvl])];
    }
    return true;
}

bool hom_exists_restricted(const Graph& s, const Graph& t,
                           const std::vector<std::uint64_t>& dom) {
    bool found = false;
    scan_homs(s, t, dom, degree_order(s), [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

bool hom_exists(const Graph& s, const Graph& t) {
    return hom_exists_restricted(s, t, base_domains(s, t));
}

std::optional<GraphHom> first_hom_lex(const Graph& s, const Graph& t,
                                      const std::vector<std::uint64_t>& dom) {
    std::optional<GraphHom> out;
    scan_homs(s, t, dom, lex_order(s.n), [&](const std::vector<int>& map) {
        out = GraphHom{map};
        return false;
    });
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
    std::vector<int> pos(static_cast<std::size_t>(g.n), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges) {
        if (pos[u] >= 0 && pos[v] >= 0) edges.emplace_back(pos[u], pos[v]);
    }
    return Graph::make(static_cast<int>(verts.size()), std::move(edges));
}

}  // namespace

std::optional<GraphHom> find_hom(const Graph& src, const Graph& tgt) {
    if (!hom_exists(src, tgt)) return std::nullopt;
    return first_hom_lex(src, tgt, base_domains(src, tgt));
}

std::optional<GraphHom> find_hom(const Graph& src, const Graph& tgt,
                                 const HomConstraints& constraints) {
    if (static_cast<int>(constraints.fixed.size()) != src.n) {
        throw std::invalid_argument("constraint vector has " +
                                    std::to_string(constraints.fixed.size()) +
                                    " entries for a graph with " + std::to_string(src.n) +
                                    " vertices");
    }
    auto dom = base_domains(src, tgt);
    for (int v = 0; v < src.n; ++v) {
        const int w = constraints.fixed[v];
        if (w == -1) continue;
        if (w < 0 || w >= tgt.n) {
            throw std::invalid_argument("constraint pins vertex " + std::to_string(v) +
                                        " to " + std::to_string(w) +
                                        ", which is not a target vertex");
        }
        dom[v] &= 1ull << w;
    }
    if (!hom_exists_restricted(src, tgt, dom)) return std::nullopt;
    return first_hom_lex(src, tgt, dom);
}

std::optional<GraphHom> find_hom_restricted(const Graph& src, const Graph& tgt,
                                            const std::vector<std::uint64_t>& allowed) {
    if (static_cast<int>(allowed.size()) != src.n) {
        throw std::invalid_argument("candidate mask vector has " +
                                    std::to_string(allowed.size()) +
                                    " entries for a graph with " + std::to_string(src.n) +
                                    " vertices");
    }
    auto dom = base_domains(src, tgt);
    for (int v = 0; v < src.n; ++v) dom[v] &= allowed[v];
    if (!hom_exists_restricted(src, tgt, dom)) return std::nullopt;
    return first_hom_lex(src, tgt, dom);
}

void for_each_hom(const Graph& src, const Graph& tgt,
                  const std::function<bool(const GraphHom&)>& fn) {
    scan_homs(src, tgt, base_domains(src, tgt), lex_order(src.n),
              [&](const std::vector<int>& map) { return fn(GraphHom{map}); });
}

std::vector<GraphHom> all_homs(const Graph& src, const Graph& tgt) {
    std::vector<GraphHom> out;
    for_each_hom(src, tgt, [&](const GraphHom& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

long long count_homs(const Graph& src, const Graph& tgt) {
    long long count = 0;
    scan_homs(src, tgt, base_domains(src, tgt), degree_order(src),
              [&](const std::vector<int>&) {
                  ++count;
                  return true;
              });
    return count;
}

bool is_isomorphic(const Graph& a, const Graph& b) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;

    auto signature = [](const Graph& g, int v) {
        return std::make_pair(g.degree(v), g.has_loop(v));
    };
    std::vector<std::pair<int, bool>> sa, sb;
    for (int v = 0; v < a.n; ++v) sa.push_back(signature(a, v));
    for (int v = 0; v < b.n; ++v) sb.push_back(signature(b, v));
    {
        auto ca = sa, cb = sb;
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (ca != cb) return false;
    }

    std::vector<int> map(static_cast<std::size_t>(a.n), -1);
    std::uint64_t used = 0;
    std::function<bool(int)> place = [&](int v) {
        if (v == a.n) return true;
        for (int w = 0; w < b.n; ++w) {
            if ((used >> w) & 1u) continue;
            if (sa[v] != sb[w]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) {
                ok = a.adjacent(u, v) == b.adjacent(map[u], w);
            }
            if (!ok) continue;
            map[v] = w;
            used |= 1ull << w;
            if (place(v + 1)) return true;
            used &= ~(1ull << w);
            map[v] = -1;
        }
        return false;
    };
    return place(0);
}

bool hom_equivalent(const Graph& a, const Graph& b) {
    return hom_exists(a, b) && hom_exists(b, a);
}

std::optional<GraphHom> find_section(const Graph& src, const Graph& tgt, const GraphHom& f) {
    if (!is_hom(src, tgt, f)) {
        throw std::invalid_argument("section search requires a homomorphism");
    }
    if (!is_surjective(f, tgt.n)) return std::nullopt;
    std::vector<std::uint64_t> preimage(static_cast<std::size_t>(tgt.n), 0);
    for (int v = 0; v < src.n; ++v) preimage[f.map[v]] |= 1ull << v;
    return find_hom_restricted(tgt, src, preimage);
}

std::optional<GraphHom> find_retraction(const Graph& src, const Graph& tgt, const GraphHom& f) {
    if (!is_hom(src, tgt, f)) {
        throw std::invalid_argument("retraction search requires a homomorphism");
    }
    if (!is_injective(f)) return std::nullopt;
    std::vector<std::uint64_t> allowed(static_cast<std::size_t>(tgt.n), full_mask(src.n));
    for (int v = 0; v < src.n; ++v) allowed[f.map[v]] = 1ull << v;
    return find_hom_restricted(tgt, src, allowed);
}

namespace {

std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> r(inner.size());
    for (std::size_t v = 0; v < inner.size(); ++v) r[v] = outer[inner[v]];
    return r;
}

// Smallest idempotent power of an endomap: h^n has the eventual image E, on
// which h acts as a permutation of some order d, so h^m with m the least
// multiple of d at or above n satisfies e . e = e and fixes exactly E.
std::vector<int> idempotent_power(const std::vector<int>& h) {
    const int n = static_cast<int>(h.size());
    if (n == 0) return h;

    std::vector<int> p(h.size());
    std::iota(p.begin(), p.end(), 0);
    for (int k = 0; k < n; ++k) p = compose_maps(h, p);

    std::uint64_t image = 0;
    for (int v : p) image |= 1ull << v;

    long long d = 1;
    std::uint64_t seen = 0;
    for (int v = 0; v < n; ++v) {
        if (!((image >> v) & 1u) || ((seen >> v) & 1u)) continue;
        long long len = 0;
        int u = v;
        do {
            seen |= 1ull << u;
            u = h[u];
            ++len;
        } while (u != v);
        d = std::lcm(d, len);
    }

    long long m = ((n + d - 1) / d) * d;
    std::vector<int> e(h.size());
    std::iota(e.begin(), e.end(), 0);
    std::vector<int> sq = h;
    while (m > 0) {
        if (m & 1) e = compose_maps(sq, e);
        sq = compose_maps(sq, sq);
        m >>= 1;
    }
    return e;
}

// One pass of the core loop: an endomorphism avoiding some vertex, or nullopt
// when the graph is its own core. Scan order is injectable so that seeded
// restarts explore different folds.
std::optional<std::vector<int>> proper_endo(const Graph& g, const std::vector<int>& scan) {
    auto dom = base_domains(g, g);
    for (int v : scan) {
        std::vector<std::uint64_t> cut(dom);
        const std::uint64_t avoid = ~(1ull << v);
        for (auto& m : cut) m &= avoid;
        bool found = false;
        std::vector<int> witness;
        scan_homs(g, g, cut, degree_order(g), [&](const std::vector<int>& map) {
            witness = map;
            found = true;
            return false;
        });
        if (found) return witness;
    }
    return std::nullopt;
}

CoreResult core_with_scan(const Graph& g,
                          const std::function<std::vector<int>(int)>& make_scan) {
    std::vector<int> verts(static_cast<std::size_t>(g.n));
    std::iota(verts.begin(), verts.end(), 0);
    std::vector<int> proj = verts;
    Graph cur = g;

    while (true) {
        auto h = proper_endo(cur, make_scan(cur.n));
        if (!h) break;
        auto e = idempotent_power(*h);

        std::vector<int> fixed;
        for (int v = 0; v < cur.n; ++v) {
            if (e[v] == v) fixed.push_back(v);
        }
        std::vector<int> pos(static_cast<std::size_t>(cur.n), -1);
        for (std::size_t i = 0; i < fixed.size(); ++i) pos[fixed[i]] = static_cast<int>(i);

        for (int& p : proj) p = pos[e[p]];
        std::vector<int> next_verts;
        next_verts.reserve(fixed.size());
        for (int v : fixed) next_verts.push_back(verts[v]);
        verts = std::move(next_verts);
        cur = induced_subgraph(g, verts);
    }

    CoreResult r;
    r.core = cur;
    r.core_vertices = verts;
    r.retraction.map = proj;
    r.inclusion.map = verts;
    return r;
}

}  // namespace

CoreResult core(const Graph& g) {
    return core_with_scan(g, [](int n) { return lex_order(n); });
}

CoreResult core_seeded(const Graph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto scan = [&rng](int n) {
        std::vector<int> order = lex_order(n);
        std::shuffle(order.begin(), order.end(), rng);
        return order;
    };
    return core_with_scan(g, scan);
}

bool no_proper_retraction(const Graph& g) {
    return !proper_endo(g, lex_order(g.n)).has_value();
}

namespace {

constexpr int kCodeBits = 28;

int pair_bit(int u, int v) {
    if (u > v) std::swap(u, v);
    return v * (v + 1) / 2 + u;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
    if (g.n > 7) {
        throw std::invalid_argument("canonical codes support at most 7 vertices, got " +
                                    std::to_string(g.n));
    }
    std::vector<int> perm = lex_order(g.n);
    std::uint64_t best = ~0ull;
    do {
        std::uint64_t mask = 0;
        for (auto [u, v] : g.edges) mask |= 1ull << pair_bit(perm[u], perm[v]);
        best = std::min(best, mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (g.n == 0) best = 0;
    return (static_cast<std::uint64_t>(g.n) << kCodeBits) | best;
}

namespace {

Graph graph_from_code(std::uint64_t code) {
    const int n = static_cast<int>(code >> kCodeBits);
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u <= v; ++u) {
            if ((code >> pair_bit(u, v)) & 1u) edges.emplace_back(u, v);
        }
    }
    return Graph::make(n, std::move(edges));
}

}  // namespace

std::vector<Graph> all_graphs(int max_n, bool loops_allowed) {
    if (max_n < 0 || max_n > 7) {
        throw std::invalid_argument("class enumeration supports 0..7 vertices, got " +
                                    std::to_string(max_n));
    }
    std::vector<Graph> out;
    std::vector<Graph> tier = {Graph::make(0, {})};
    out.push_back(tier[0]);

    for (int n = 1; n <= max_n; ++n) {
        std::map<std::uint64_t, Graph> next;
        const int attach_bits = loops_allowed ? n : n - 1;
        for (const Graph& parent : tier) {
            for (std::uint64_t attach = 0; attach < (1ull << attach_bits); ++attach) {
                auto edges = parent.edges;
                for (int u = 0; u < n - 1; ++u) {
                    if ((attach >> u) & 1u) edges.emplace_back(u, n - 1);
                }
                if (loops_allowed && ((attach >> (n - 1)) & 1u)) {
                    edges.emplace_back(n - 1, n - 1);
                }
                Graph candidate = Graph::make(n, std::move(edges));
                next.emplace(canonical_code(candidate), std::move(candidate));
            }
        }
        tier.clear();
        for (auto& [code, graph] : next) {
            tier.push_back(graph_from_code(code));
            out.push_back(tier.back());
        }
    }
    return out;
}

GraphCone graph_limit(const GraphDiagram& d) {
    const int k = static_cast<int>(d.node.size());
    if (k > 4) {
        throw std::invalid_argument("diagrams with more than 4 nodes are not supported");
    }
    for (std::size_t a = 0; a < d.arrow.size(); ++a) {
        const auto& ar = d.arrow[a];
        if (ar.from < 0 || ar.from >= k || ar.to < 0 || ar.to >= k ||
            !is_hom(d.node[ar.from], d.node[ar.to], ar.via)) {
            throw std::invalid_argument("diagram arrow " + std::to_string(a) +
                                        " is not a homomorphism between its endpoints");
        }
    }

    std::vector<std::vector<int>> tuples;
    std::vector<int> t(static_cast<std::size_t>(k), 0);
    std::function<void(int)> build = [&](int i) {
        if (i == k) {
            for (const auto& ar : d.arrow) {
                if (ar.via.map[t[ar.from]] != t[ar.to]) return;
            }
            tuples.push_back(t);
            return;
        }
        for (t[i] = 0; t[i] < d.node[i].n; ++t[i]) build(i + 1);
    };
    build(0);

    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        for (std::size_t j = i; j < tuples.size(); ++j) {
            bool all = true;
            for (int c = 0; c < k && all; ++c) {
                all = d.node[c].adjacent(tuples[i][c], tuples[j][c]);
            }
            if (all) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }

    GraphCone cone;
    cone.apex = Graph::make(static_cast<int>(tuples.size()), std::move(edges));
    cone.leg.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        cone.leg[c].map.reserve(tuples.size());
        for (const auto& tp : tuples) cone.leg[c].map.push_back(tp[c]);
    }
    return cone;
}

GraphCone graph_colimit(const GraphDiagram& d) {
    const int k = static_cast<int>(d.node.size());
    if (k > 4) {
        throw std::invalid_argument("diagrams with more than 4 nodes are not supported");
    }
    std::vector<int> offset(static_cast<std::size_t>(k), 0);
    int total = 0;
    for (int i = 0; i < k; ++i) {
        offset[i] = total;
        total += d.node[i].n;
    }

    std::vector<int> parent(static_cast<std::size_t>(total));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (std::size_t a = 0; a < d.arrow.size(); ++a) {
        const auto& ar = d.arrow[a];
        if (ar.from < 0 || ar.from >= k || ar.to < 0 || ar.to >= k ||
            !is_hom(d.node[ar.from], d.node[ar.to], ar.via)) {
            throw std::invalid_argument("diagram arrow " + std::to_string(a) +
                                        " is not a homomorphism between its endpoints");
        }
        for (int v = 0; v < d.node[ar.from].n; ++v) {
            const int x = find(offset[ar.from] + v);
            const int y = find(offset[ar.to] + ar.via.map[v]);
            if (x != y) parent[x] = y;
        }
    }

    std::vector<int> cls(static_cast<std::size_t>(total), -1);
    int classes = 0;
    for (int v = 0; v < total; ++v) {
        const int r = find(v);
        if (cls[r] == -1) cls[r] = classes++;
        cls[v] = cls[r];
    }

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) {
        for (auto [u, v] : d.node[i].edges) {
            edges.emplace_back(cls[offset[i] + u], cls[offset[i] + v]);
        }
    }

    GraphCone cone;
    cone.apex = Graph::make(classes, std::move(edges));
    cone.leg.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        cone.leg[i].map.reserve(static_cast<std::size_t>(d.node[i].n));
        for (int v = 0; v < d.node[i].n; ++v) cone.leg[i].map.push_back(cls[offset[i] + v]);
    }
    return cone;
}

CoproductResult coproduct(const Graph& a, const Graph& b) {
    GraphDiagram d;
    d.node = {a, b};
    GraphCone cone = graph_colimit(d);
    return CoproductResult{std::move(cone.apex), std::move(cone.leg[0]),
                           std::move(cone.leg[1])};
}

ProductResult product(const Graph& a, const Graph& b) {
    GraphDiagram d;
    d.node = {a, b};
    GraphCone cone = graph_limit(d);
    return ProductResult{std::move(cone.apex), std::move(cone.leg[0]),
                         std::move(cone.leg[1])};
}

std::vector<int> component_labels(const Graph& g) {
    std::vector<int> label(static_cast<std::size_t>(g.n), -1);
    int next = 0;
    for (int s = 0; s < g.n; ++s) {
        if (label[s] != -1) continue;
        label[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            std::uint64_t nb = g.adj[v];
            while (nb) {
                const int u = std::countr_zero(nb);
                nb &= nb - 1;
                if (label[u] == -1) {
                    label[u] = next;
                    q.push(u);
                }
            }
        }
        ++next;
    }
    return label;
}

int component_count(const Graph& g) {
    const auto label = component_labels(g);
    return label.empty() ? 0 : 1 + *std::max_element(label.begin(), label.end());
}

namespace {

bool image_component_closed(const Graph& tgt, const GraphHom& f) {
    std::vector<bool> image(static_cast<std::size_t>(tgt.n), false);
    for (int v : f.map) image[v] = true;
    for (auto [u, v] : tgt.edges) {
        if (image[u] != image[v]) return false;
    }
    return true;
}

bool is_core_cof(const Graph& src, const Graph& tgt, const GraphHom& f) {
    if (!is_injective(f)) return false;
    for (int u = 0; u < src.n; ++u) {
        for (int v = u; v < src.n; ++v) {
            if (src.adjacent(u, v) != tgt.adjacent(f.map[u], f.map[v])) return false;
        }
    }
    return image_component_closed(tgt, f);
}

// For the probe base -> base + ext, a lift exists for every square exactly
// when each map ext -> tgt pulls back through f. The base only decides
// whether a square exists at all, so the failing ext map is searched once
// per ext and the base is attached afterwards.
std::optional<GraphHom> unliftable_ext_map(const Graph& ext, const Graph& src,
                                           const Graph& tgt, const GraphHom& f) {
    std::vector<std::uint64_t> preimage(static_cast<std::size_t>(tgt.n), 0);
    for (int v = 0; v < src.n; ++v) preimage[f.map[v]] |= 1ull << v;

    std::optional<GraphHom> bad;
    for_each_hom(ext, tgt, [&](const GraphHom& u) {
        std::vector<std::uint64_t> allowed;
        allowed.reserve(static_cast<std::size_t>(ext.n));
        for (int x = 0; x < ext.n; ++x) allowed.push_back(preimage[u.map[x]]);
        if (!find_hom_restricted(ext, src, allowed)) {
            bad = u;
            return false;
        }
        return true;
    });
    return bad;
}

}  // namespace

CoreClassification classify_core_morphism(const Graph& src, const Graph& tgt,
                                          const GraphHom& f, int bound) {
    if (!is_hom(src, tgt, f)) {
        throw std::invalid_argument("classification requires a homomorphism");
    }
    if (bound < 1) {
        throw std::invalid_argument("probe bound must be at least 1, got " +
                                    std::to_string(bound));
    }

    CoreClassification c;
    c.we = hom_equivalent(src, tgt);
    c.acyclic_fib = find_section(src, tgt, f).has_value();
    c.cof = is_core_cof(src, tgt, f);
    c.acyclic_cof = c.cof && c.we;

    c.fib_status.bound = bound;
    const auto probes = all_graphs(bound);
    for (const Graph& ext : probes) {
        if (ext.n == 0) continue;
        auto bad = unliftable_ext_map(ext, src, tgt, f);
        if (!bad) continue;
        for (const Graph& base : probes) {
            if (base.n == 0) continue;
            if (!hom_exists(ext, base)) continue;
            auto top = find_hom(base, src);
            if (!top) continue;
            c.fib_status.refutation = FibRefutation{base, ext, *top, *bad};
            return c;
        }
    }
    return c;
}

namespace {

struct Corestriction {
    Graph closure;
    GraphHom into_closure;
    GraphHom closure_inclusion;
};

// Restrict the target to the components met by the image. The corestricted
// map lands in the closure; its inclusion goes back into the full target.
Corestriction corestrict_to_components(const Graph& src, const Graph& tgt,
                                       const GraphHom& f) {
    const auto label = component_labels(tgt);
    std::vector<bool> keep_component(static_cast<std::size_t>(component_count(tgt)), false);
    for (int v : f.map) keep_component[label[v]] = true;

    std::vector<int> verts;
    std::vector<int> pos(static_cast<std::size_t>(tgt.n), -1);
    for (int v = 0; v < tgt.n; ++v) {
        if (keep_component[label[v]]) {
            pos[v] = static_cast<int>(verts.size());
            verts.push_back(v);
        }
    }

    Corestriction r;
    r.closure = induced_subgraph(tgt, verts);
    r.into_closure.map.reserve(static_cast<std::size_t>(src.n));
    for (int v : f.map) r.into_closure.map.push_back(pos[v]);
    r.closure_inclusion.map = verts;
    return r;
}

bool is_cocore_cof(const Graph& src, const Graph& tgt, const GraphHom& f) {
    auto cr = corestrict_to_components(src, tgt, f);
    return find_retraction(src, cr.closure, cr.into_closure).has_value();
}

}  // namespace

CocoreClassification classify_cocore_morphism(const Graph& src, const Graph& tgt,
                                              const GraphHom& f, int bound) {
    if (!is_hom(src, tgt, f)) {
        throw std::invalid_argument("classification requires a homomorphism");
    }
    if (bound < 1) {
        throw std::invalid_argument("probe bound must be at least 1, got " +
                                    std::to_string(bound));
    }

    CocoreClassification c;
    c.we = hom_equivalent(src, tgt);
    c.acyclic_cof = find_retraction(src, tgt, f).has_value();
    c.cof = c.acyclic_cof || is_cocore_cof(src, tgt, f);

    c.acyclic_fib_status.bound = bound;
    const auto probes = all_graphs(bound);
    for (const Graph& ps : probes) {
        for (const Graph& pt : probes) {
            for_each_hom(ps, pt, [&](const GraphHom& probe) {
                if (!is_cocore_cof(ps, pt, probe)) return true;
                bool abort = false;
                for_each_hom(ps, src, [&](const GraphHom& top) {
                    // bottom must agree with f . top on the probe image
                    std::vector<int> fixed(static_cast<std::size_t>(pt.n), -1);
                    bool consistent = true;
                    for (int x = 0; x < ps.n && consistent; ++x) {
                        const int want = f.map[top.map[x]];
                        int& slot = fixed[probe.map[x]];
                        if (slot == -1) {
                            slot = want;
                        } else {
                            consistent = slot == want;
                        }
                    }
                    if (!consistent) return true;

                    auto base_bottom = base_domains(pt, tgt);
                    for (int m = 0; m < pt.n; ++m) {
                        if (fixed[m] != -1) base_bottom[m] &= 1ull << fixed[m];
                    }
                    std::vector<std::uint64_t> f_preimage(static_cast<std::size_t>(tgt.n), 0);
                    for (int v = 0; v < src.n; ++v) f_preimage[f.map[v]] |= 1ull << v;

                    bool stop = false;
                    scan_homs(pt, tgt, base_bottom, lex_order(pt.n),
                              [&](const std::vector<int>& bottom) {
                                  auto allowed = std::vector<std::uint64_t>(
                                      static_cast<std::size_t>(pt.n), 0);
                                  for (int m = 0; m < pt.n; ++m) {
                                      allowed[m] = f_preimage[bottom[m]];
                                  }
                                  for (int x = 0; x < ps.n; ++x) {
                                      allowed[probe.map[x]] &= 1ull << top.map[x];
                                  }
                                  if (!find_hom_restricted(pt, src, allowed)) {
                                      c.acyclic_fib_status.refutation = CocoreRefutation{
                                          ps, pt, probe, top, GraphHom{bottom}};
                                      stop = true;
                                      return false;
                                  }
                                  return true;
                              });
                    abort = stop;
                    return !stop;
                });
                return !abort;
            });
            if (c.acyclic_fib_status.refutation) return c;
        }
    }
    return c;
}

GraphFactorization factor_cof_afib(const Graph& src, const Graph& tgt, const GraphHom& f) {
    if (!is_hom(src, tgt, f)) {
        throw std::invalid_argument("factorization requires a homomorphism");
    }
    auto cp = coproduct(src, tgt);
    GraphFactorization r;
    r.mid = std::move(cp.sum);
    r.left = std::move(cp.into_left);
    r.right.map.resize(static_cast<std::size_t>(r.mid.n));
    for (int v = 0; v < src.n; ++v) r.right.map[r.left.map[v]] = f.map[v];
    for (int w = 0; w < tgt.n; ++w) r.right.map[cp.into_right.map[w]] = w;
    return r;
}

GraphFactorization factor_acof_fib(const Graph& src, const Graph& tgt, const GraphHom& f) {
    if (!is_hom(src, tgt, f)) {
        throw std::invalid_argument("factorization requires a homomorphism");
    }
    auto pr = product(src, tgt);
    auto cp = coproduct(src, pr.prod);
    GraphFactorization r;
    r.mid = std::move(cp.sum);
    r.left = std::move(cp.into_left);
    r.right.map.resize(static_cast<std::size_t>(r.mid.n));
    for (int v = 0; v < src.n; ++v) r.right.map[r.left.map[v]] = f.map[v];
    for (int j = 0; j < pr.prod.n; ++j) {
        r.right.map[cp.into_right.map[j]] = pr.onto_right.map[j];
    }
    return r;
}

BauslaughProfile bauslaugh_profile(const Graph& g) {
    BauslaughProfile p;
    p.all_surjective = p.no_proper_retraction = p.all_automorphisms = true;
    p.all_injective = p.nonadjacency_rigid = true;

    for_each_hom(g, g, [&](const GraphHom& h) {
        const bool inj = is_injective(h);
        const bool surj = is_surjective(h, g.n);
        if (!surj) p.all_surjective = false;
        if (!inj) p.all_injective = false;
        if (!(inj && surj)) {
            p.all_automorphisms = false;
        } else {
            for (int u = 0; u < g.n && p.all_automorphisms; ++u) {
                for (int v = u; v < g.n && p.all_automorphisms; ++v) {
                    if (g.adjacent(u, v) != g.adjacent(h.map[u], h.map[v])) {
                        p.all_automorphisms = false;
                    }
                }
            }
        }
        if (!surj && compose(h, h) == h) p.no_proper_retraction = false;
        for (int u = 0; u < g.n && p.nonadjacency_rigid; ++u) {
            for (int v = u + 1; v < g.n && p.nonadjacency_rigid; ++v) {
                if (g.adjacent(u, v)) continue;
                if (h.map[u] == h.map[v] || g.adjacent(h.map[u], h.map[v])) {
                    p.nonadjacency_rigid = false;
                }
            }
        }
        return p.all_surjective || p.no_proper_retraction || p.all_automorphisms ||
               p.all_injective || p.nonadjacency_rigid;
    });
    return p;
}

bool check_condition_b_pi0(const Graph& src, const Graph& tgt, const GraphHom& f) {
    if (!is_hom(src, tgt, f)) {
        throw std::invalid_argument("condition check requires a homomorphism");
    }
    const auto src_label = component_labels(src);
    const auto tgt_label = component_labels(tgt);
    const int src_comps = component_count(src);

    // component image of f: where each source component lands in the target
    std::vector<int> comp_image(static_cast<std::size_t>(src_comps), -1);
    for (int v = 0; v < src.n; ++v) comp_image[src_label[v]] = tgt_label[f.map[v]];

    // pullback of tgt over its component reflection: pairs of a target
    // vertex and a source component sitting over the same target component
    std::vector<std::pair<int, int>> verts;
    std::vector<std::vector<int>> at(static_cast<std::size_t>(tgt.n));
    for (int w = 0; w < tgt.n; ++w) {
        at[w].assign(static_cast<std::size_t>(src_comps), -1);
        for (int c = 0; c < src_comps; ++c) {
            if (comp_image[c] == tgt_label[w]) {
                at[w][c] = static_cast<int>(verts.size());
                verts.emplace_back(w, c);
            }
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i; j < verts.size(); ++j) {
            if (verts[i].second == verts[j].second &&
                tgt.adjacent(verts[i].first, verts[j].first)) {
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    Graph pb = Graph::make(static_cast<int>(verts.size()), std::move(edges));

    const auto pb_label = component_labels(pb);
    const int pb_comps = component_count(pb);
    if (pb_comps != src_comps) return false;

    std::vector<int> hit(static_cast<std::size_t>(pb_comps), -1);
    for (int v = 0; v < src.n; ++v) {
        const int idx = at[f.map[v]][src_label[v]];
        const int target_comp = pb_label[idx];
        if (hit[target_comp] != -1 && hit[target_comp] != src_label[v]) return false;
        hit[target_comp] = src_label[v];
    }
    std::vector<bool> seen(static_cast<std::size_t>(src_comps), false);
    for (int h : hit) {
        if (h == -1 || seen[h]) return false;
        seen[h] = true;
    }
    return true;
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::make(n, std::move(edges));
}

Graph cycle_graph(int n) {
    if (n < 3) {
        throw std::invalid_argument("cycles need at least 3 vertices, got " +
                                    std::to_string(n));
    }
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph::make(n, std::move(edges));
}

Graph path_graph(int n) {
    if (n < 1) {
        throw std::invalid_argument("paths need at least 1 vertex, got " + std::to_string(n));
    }
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph::make(n, std::move(edges));
}

Graph looped_point() {
    return Graph::make(1, {{0, 0}});
}

Graph petersen_graph() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph::make(10, std::move(edges));
}

Graph empty_graph(int n) {
    return Graph::make(n, {});
}

std::vector<std::string> graph_names() {
    return {"K1", "K2", "K3", "K4", "K5", "C3", "C4", "C5", "C6", "C7",
            "P2", "P3", "P4", "P5", "L1", "Petersen"};
}

Graph graph_by_name(const std::string& name) {
    if (name.size() == 2 && name[0] == 'K' && name[1] >= '1' && name[1] <= '5') {
        return complete_graph(name[1] - '0');
    }
    if (name.size() == 2 && name[0] == 'C' && name[1] >= '3' && name[1] <= '7') {
        return cycle_graph(name[1] - '0');
    }
    if (name.size() == 2 && name[0] == 'P' && name[1] >= '2' && name[1] <= '5') {
        return path_graph(name[1] - '0');
    }
    if (name == "L1") return looped_point();
    if (name == "Petersen") return petersen_graph();
    throw std::invalid_argument("unknown graph name: " + name);
}

Graph gnp(int n, double p, std::uint64_t seed, bool loops) {
    if (n < 0 || n > 64) {
        throw std::invalid_argument("vertex count must be between 0 and 64, got " +
                                    std::to_string(n));
    }
    std::mt19937_64 rng(seed);
    auto draw = [&rng] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (draw() < p) edges.emplace_back(u, v);
        }
    }
    if (loops) {
        for (int v = 0; v < n; ++v) {
            if (draw() < p) edges.emplace_back(v, v);
        }
    }
    return Graph::make(n, std::move(edges));
}

}  // namespace modelkit::graphcat
