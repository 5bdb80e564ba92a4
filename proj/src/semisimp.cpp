#include "modelkit/semisimp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modelkit::semisimp {

namespace {

std::string at_level(int k) { return "level " + std::to_string(k); }

void collect_violations(const SemiSimplicialSet& x, std::vector<std::string>& out) {
    const int n = x.truncation;
    if (n < 0) {
        out.push_back("truncation must be nonnegative");
        return;
    }
    if (static_cast<int>(x.count.size()) != n + 1) {
        out.push_back("count must list levels 0.." + std::to_string(n));
        return;
    }
    if (static_cast<int>(x.face.size()) != n + 1) {
        out.push_back("face must list levels 0.." + std::to_string(n));
        return;
    }
    for (int k = 0; k <= n; ++k) {
        if (x.count[k] < 0) {
            out.push_back(at_level(k) + ": negative simplex count");
            return;
        }
        if (static_cast<int>(x.face[k].size()) != x.count[k]) {
            out.push_back(at_level(k) + ": face table size disagrees with count");
            return;
        }
        const int arity = k == 0 ? 0 : k + 1;
        for (int s = 0; s < x.count[k]; ++s) {
            if (static_cast<int>(x.face[k][s].size()) != arity) {
                out.push_back(at_level(k) + ", simplex " + std::to_string(s) +
                              ": expected " + std::to_string(arity) + " faces");
                return;
            }
            for (int i = 0; i < arity; ++i) {
                const int f = x.face[k][s][i];
                if (f < 0 || f >= x.count[k - 1]) {
                    out.push_back(at_level(k) + ", simplex " + std::to_string(s) +
                                  ": face " + std::to_string(i) +
                                  " points outside level " + std::to_string(k - 1));
                }
            }
        }
    }
    if (!out.empty()) return;
    for (int k = 2; k <= n; ++k) {
        for (int s = 0; s < x.count[k]; ++s) {
            for (int j = 1; j <= k; ++j) {
                for (int i = 0; i < j; ++i) {
                    const int left = x.face[k - 1][x.face[k][s][j]][i];
                    const int right = x.face[k - 1][x.face[k][s][i]][j - 1];
                    if (left != right) {
                        out.push_back(at_level(k) + ", simplex " + std::to_string(s) +
                                      ": d" + std::to_string(i) + " d" + std::to_string(j) +
                                      " != d" + std::to_string(j - 1) + " d" +
                                      std::to_string(i));
                    }
                }
            }
        }
    }
}

}  // namespace

SemiSimplicialSet SemiSimplicialSet::make(int truncation, std::vector<int> count,
                                          std::vector<std::vector<std::vector<int>>> face) {
    SemiSimplicialSet x;
    x.truncation = truncation;
    x.count = std::move(count);
    x.face = std::move(face);
    std::vector<std::string> bad;
    collect_violations(x, bad);
    if (!bad.empty()) throw std::invalid_argument("semi-simplicial set: " + bad.front());
    return x;
}

bool operator==(const SemiSimplicialSet& a, const SemiSimplicialSet& b) {
    return a.truncation == b.truncation && a.count == b.count && a.face == b.face;
}

bool operator!=(const SemiSimplicialSet& a, const SemiSimplicialSet& b) { return !(a == b); }

SssReport validate_sss(const SemiSimplicialSet& x) {
    SssReport r;
    collect_violations(x, r.violations);
    r.ok = r.violations.empty();
    return r;
}

bool operator==(const Dimension& a, const Dimension& b) {
    return a.value == b.value && a.at_ceiling == b.at_ceiling;
}

Dimension dimension(const SemiSimplicialSet& x) {
    Dimension d;
    for (int k = 0; k <= x.truncation; ++k)
        if (x.count[k] > 0) d.value = k;
    d.at_ceiling = x.count[x.truncation] > 0;
    return d;
}

SemiSimplicialSet standard_D(int n, int truncation) {
    if (n < 0) throw std::invalid_argument("standard_D: dimension must be nonnegative");
    if (n > truncation)
        throw std::invalid_argument("standard_D: dimension exceeds the truncation");
    SemiSimplicialSet x;
    x.truncation = truncation;
    x.count.assign(truncation + 1, 0);
    x.face.resize(truncation + 1);
    for (int k = 0; k <= n; ++k) {
        x.count[k] = 1;
        x.face[k] = {std::vector<int>(k == 0 ? 0 : k + 1, 0)};
    }
    return x;
}

SemiSimplicialSet empty_sss(int truncation) {
    if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
    SemiSimplicialSet x;
    x.truncation = truncation;
    x.count.assign(truncation + 1, 0);
    x.face.resize(truncation + 1);
    return x;
}

SemiSimplicialSet triangle_boundary(int truncation) {
    if (truncation < 1)
        throw std::invalid_argument("triangle boundary needs a truncation of at least 1");
    SemiSimplicialSet x = empty_sss(truncation);
    x.count[0] = 3;
    x.face[0] = {{}, {}, {}};
    x.count[1] = 3;
    x.face[1] = {{1, 0}, {2, 0}, {2, 1}};
    return x;
}

bool operator==(const SssMap& a, const SssMap& b) { return a.level == b.level; }

bool is_sss_map(const SemiSimplicialSet& x, const SemiSimplicialSet& y, const SssMap& f) {
    if (x.truncation != y.truncation) return false;
    if (static_cast<int>(f.level.size()) != x.truncation + 1) return false;
    for (int k = 0; k <= x.truncation; ++k) {
        if (static_cast<int>(f.level[k].size()) != x.count[k]) return false;
        for (int v : f.level[k])
            if (v < 0 || v >= y.count[k]) return false;
    }
    for (int k = 1; k <= x.truncation; ++k)
        for (int s = 0; s < x.count[k]; ++s)
            for (int i = 0; i <= k; ++i)
                if (f.level[k - 1][x.face[k][s][i]] != y.face[k][f.level[k][s]][i])
                    return false;
    return true;
}

SssMap identity_sss_map(const SemiSimplicialSet& x) {
    SssMap f;
    f.level.resize(x.truncation + 1);
    for (int k = 0; k <= x.truncation; ++k) {
        f.level[k].resize(x.count[k]);
        std::iota(f.level[k].begin(), f.level[k].end(), 0);
    }
    return f;
}

SssMap compose(const SssMap& g, const SssMap& f) {
    if (g.level.size() != f.level.size())
        throw std::invalid_argument("composition needs maps over the same truncation");
    SssMap h;
    h.level.resize(f.level.size());
    for (std::size_t k = 0; k < f.level.size(); ++k) {
        h.level[k].reserve(f.level[k].size());
        for (int v : f.level[k]) h.level[k].push_back(g.level[k].at(v));
    }
    return h;
}

bool is_levelwise_injective(const SssMap& f) {
    for (const auto& lv : f.level) {
        std::vector<int> seen = lv;
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
}

bool is_levelwise_bijective(const SemiSimplicialSet& x, const SemiSimplicialSet& y,
                            const SssMap& f) {
    if (x.truncation != y.truncation) return false;
    for (int k = 0; k <= x.truncation; ++k)
        if (x.count[k] != y.count[k]) return false;
    return is_levelwise_injective(f);
}

namespace {

// Bottom-up levelwise backtracking. A candidate image for a k-simplex must
// have faces matching the already-assigned images of the simplex's faces, so
// incompatible branches die at the first level that exposes them.
struct MapSearch {
    const SemiSimplicialSet& x;
    const SemiSimplicialSet& y;
    bool first_only;
    std::vector<SssMap> found;
    SssMap cur;

    MapSearch(const SemiSimplicialSet& a, const SemiSimplicialSet& b, bool stop_early)
        : x(a), y(b), first_only(stop_early) {
        cur.level.resize(x.truncation + 1);
    }

    bool run() { return level(0); }

    bool level(int k) {
        if (k > x.truncation) {
            found.push_back(cur);
            return first_only;
        }
        cur.level[k].assign(x.count[k], 0);
        return element(k, 0);
    }

    bool element(int k, int s) {
        if (s == x.count[k]) return level(k + 1);
        for (int c = 0; c < y.count[k]; ++c) {
            bool ok = true;
            for (int i = 0; ok && k > 0 && i <= k; ++i)
                ok = y.face[k][c][i] == cur.level[k - 1][x.face[k][s][i]];
            if (!ok) continue;
            cur.level[k][s] = c;
            if (element(k, s + 1)) return true;
        }
        return false;
    }
};

}  // namespace

std::vector<SssMap> all_sss_maps(const SemiSimplicialSet& x, const SemiSimplicialSet& y) {
    if (x.truncation != y.truncation)
        throw std::invalid_argument("map enumeration needs a shared truncation");
    MapSearch s(x, y, false);
    s.run();
    return std::move(s.found);
}

bool sss_map_exists(const SemiSimplicialSet& x, const SemiSimplicialSet& y) {
    if (x.truncation != y.truncation)
        throw std::invalid_argument("map search needs a shared truncation");
    MapSearch s(x, y, true);
    return s.run();
}

UnitMap unit_map(const SemiSimplicialSet& x) {
    UnitMap u;
    u.target = standard_D(dimension(x).value, x.truncation);
    u.map.level.resize(x.truncation + 1);
    for (int k = 0; k <= x.truncation; ++k) u.map.level[k].assign(x.count[k], 0);
    return u;
}

AdjointFactorization adjoint_factorize(const SemiSimplicialSet& x,
                                       const SemiSimplicialSet& y, const SssMap& f) {
    if (!is_sss_map(x, y, f))
        throw std::invalid_argument("adjoint factorization needs a valid map");
    const int m = dimension(x).value;
    AdjointFactorization r;
    r.mid = empty_sss(y.truncation);
    for (int k = 0; k <= std::min(m, y.truncation); ++k) {
        r.mid.count[k] = y.count[k];
        r.mid.face[k] = y.face[k];
    }
    r.into_mid.level.resize(y.truncation + 1);
    r.onto_target.level.resize(y.truncation + 1);
    for (int k = 0; k <= y.truncation; ++k) {
        if (k <= m) {
            r.into_mid.level[k] = f.level[k];
            r.onto_target.level[k].resize(y.count[k]);
            std::iota(r.onto_target.level[k].begin(), r.onto_target.level[k].end(), 0);
        }
    }
    r.reflection_identity = dimension(r.mid).value == m;
    return r;
}

DimCutFlags classify_dim_cut(const SemiSimplicialSet& x, const SemiSimplicialSet& y,
                             const SssMap& f, int n, DimCutVariant variant) {
    if (n < 0) throw std::invalid_argument("dimension cut must be nonnegative");
    if (!is_sss_map(x, y, f))
        throw std::invalid_argument("dimension cut classification needs a valid map");
    const Dimension dx = dimension(x);
    const Dimension dy = dimension(y);
    const bool iso = is_levelwise_bijective(x, y, f);
    const bool src_low = dx.value <= n;
    const bool tgt_low = dy.value <= n;
    DimCutFlags flags;
    flags.ceiling_ambiguous = n >= x.truncation && (dx.at_ceiling || dy.at_ceiling);
    switch (variant) {
        case DimCutVariant::Balanced:
            flags.we = iso || tgt_low || !src_low;
            flags.cof = iso || !tgt_low;
            flags.fib = iso || src_low;
            break;
        case DimCutVariant::Right:
            flags.we = iso || (!src_low && !tgt_low);
            flags.cof = true;
            if (iso) flags.fib = true;
            break;
        case DimCutVariant::Left:
            flags.we = iso || (src_low && tgt_low);
            flags.fib = true;
            if (iso) flags.cof = true;
            break;
    }
    return flags;
}

namespace {

int checked_truncation(const SssDiagram& d, const char* what) {
    if (static_cast<int>(d.node.size()) > 4)
        throw std::invalid_argument("diagrams with more than 4 nodes are not supported");
    if (d.node.empty()) {
        if (d.truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
        return d.truncation;
    }
    const int n = d.node.front().truncation;
    for (const auto& v : d.node)
        if (v.truncation != n)
            throw std::invalid_argument(std::string(what) +
                                        " diagram nodes must share a truncation");
    for (std::size_t a = 0; a < d.arrow.size(); ++a) {
        const auto& ar = d.arrow[a];
        if (ar.from < 0 || ar.from >= static_cast<int>(d.node.size()) || ar.to < 0 ||
            ar.to >= static_cast<int>(d.node.size()) ||
            !is_sss_map(d.node[ar.from], d.node[ar.to], ar.via))
            throw std::invalid_argument("diagram arrow " + std::to_string(a) +
                                        " is not a map between its endpoints");
    }
    return n;
}

}  // namespace

SssCone sss_limit(const SssDiagram& d) {
    const int trunc = checked_truncation(d, "limit");
    const int nn = static_cast<int>(d.node.size());
    SssCone cone;
    cone.apex = empty_sss(trunc);
    cone.leg.resize(nn);
    for (auto& leg : cone.leg) leg.level.resize(trunc + 1);

    // tuples[k][t] lists one simplex index per node; index_of[k] inverts it.
    std::vector<std::vector<std::vector<int>>> tuples(trunc + 1);
    std::vector<std::map<std::vector<int>, int>> index_of(trunc + 1);
    for (int k = 0; k <= trunc; ++k) {
        std::vector<int> t(nn, 0);
        bool more = true;
        for (int j = 0; j < nn; ++j)
            if (d.node[j].count[k] == 0) more = false;
        while (more) {
            bool ok = true;
            for (const auto& ar : d.arrow)
                if (ar.via.level[k][t[ar.from]] != t[ar.to]) {
                    ok = false;
                    break;
                }
            if (ok) {
                index_of[k][t] = static_cast<int>(tuples[k].size());
                tuples[k].push_back(t);
            }
            int j = nn - 1;
            while (j >= 0 && ++t[j] == d.node[j].count[k]) t[j--] = 0;
            if (j < 0) more = false;
        }
        cone.apex.count[k] = static_cast<int>(tuples[k].size());
        cone.apex.face[k].resize(tuples[k].size());
        for (std::size_t s = 0; s < tuples[k].size(); ++s) {
            if (k > 0) {
                cone.apex.face[k][s].resize(k + 1);
                for (int i = 0; i <= k; ++i) {
                    std::vector<int> ft(nn);
                    for (int j = 0; j < nn; ++j)
                        ft[j] = d.node[j].face[k][tuples[k][s][j]][i];
                    cone.apex.face[k][s][i] = index_of[k - 1].at(ft);
                }
            }
            for (int j = 0; j < nn; ++j) cone.leg[j].level[k].push_back(tuples[k][s][j]);
        }
    }
    return cone;
}

SssCone sss_colimit(const SssDiagram& d) {
    const int trunc = checked_truncation(d, "colimit");
    const int nn = static_cast<int>(d.node.size());
    SssCone cone;
    cone.apex = empty_sss(trunc);
    cone.leg.resize(nn);
    for (auto& leg : cone.leg) leg.level.resize(trunc + 1);

    std::vector<std::vector<int>> offset(trunc + 1, std::vector<int>(nn + 1, 0));
    std::vector<std::vector<int>> cls(trunc + 1);
    for (int k = 0; k <= trunc; ++k) {
        for (int j = 0; j < nn; ++j) offset[k][j + 1] = offset[k][j] + d.node[j].count[k];
        const int total = offset[k][nn];
        std::vector<int> parent(total);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&parent](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& ar : d.arrow)
            for (int s = 0; s < d.node[ar.from].count[k]; ++s) {
                const int a = find(offset[k][ar.from] + s);
                const int b = find(offset[k][ar.to] + ar.via.level[k][s]);
                if (a != b) parent[a] = b;
            }
        cls[k].assign(total, -1);
        std::vector<int> rep_node, rep_elem;
        for (int j = 0; j < nn; ++j)
            for (int s = 0; s < d.node[j].count[k]; ++s) {
                const int root = find(offset[k][j] + s);
                if (cls[k][root] == -1) {
                    cls[k][root] = static_cast<int>(rep_node.size());
                    rep_node.push_back(j);
                    rep_elem.push_back(s);
                }
                cone.leg[j].level[k].push_back(cls[k][root]);
                cls[k][offset[k][j] + s] = cls[k][root];
            }
        cone.apex.count[k] = static_cast<int>(rep_node.size());
        cone.apex.face[k].resize(rep_node.size());
        if (k > 0)
            for (std::size_t c = 0; c < rep_node.size(); ++c) {
                const int j = rep_node[c];
                const int s = rep_elem[c];
                cone.apex.face[k][c].resize(k + 1);
                for (int i = 0; i <= k; ++i)
                    cone.apex.face[k][c][i] =
                        cls[k - 1][offset[k - 1][j] + d.node[j].face[k][s][i]];
            }
    }
    return cone;
}

fincat::FinCategory sss_hom_category(const std::vector<SemiSimplicialSet>& objects,
                                     std::vector<std::string> names) {
    if (objects.empty()) throw std::invalid_argument("hom category needs objects");
    if (names.size() != objects.size())
        throw std::invalid_argument("hom category needs one name per object");
    for (const auto& x : objects)
        if (x.truncation != objects.front().truncation)
            throw std::invalid_argument("hom category objects must share a truncation");

    fincat::FinCategory c;
    c.n_objects = static_cast<int>(objects.size());
    c.object_names = std::move(names);
    c.identity.assign(c.n_objects, fincat::kNone);
    std::vector<std::map<std::vector<std::vector<int>>, fincat::MorId>> by_levels(
        static_cast<std::size_t>(c.n_objects) * c.n_objects);
    std::vector<SssMap> maps;
    for (int sx = 0; sx < c.n_objects; ++sx)
        for (int tx = 0; tx < c.n_objects; ++tx) {
            int serial = 0;
            for (auto& f : all_sss_maps(objects[sx], objects[tx])) {
                const auto id = static_cast<fincat::MorId>(c.mor.size());
                c.mor.push_back({sx, tx});
                c.morphism_names.push_back(c.object_names[sx] + "->" + c.object_names[tx] +
                                           "#" + std::to_string(serial++));
                by_levels[sx * c.n_objects + tx][f.level] = id;
                if (sx == tx && f == identity_sss_map(objects[sx])) c.identity[sx] = id;
                maps.push_back(std::move(f));
            }
        }
    const auto total = static_cast<int>(c.mor.size());
    c.compose_table.assign(total, std::vector<fincat::MorId>(total, fincat::kNone));
    for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f) {
            if (c.mor[f].tgt != c.mor[g].src) continue;
            const SssMap gf = compose(maps[g], maps[f]);
            c.compose_table[g][f] =
                by_levels[c.mor[f].src * c.n_objects + c.mor[g].tgt].at(gf.level);
        }
    return c;
}

}  // namespace modelkit::semisimp
