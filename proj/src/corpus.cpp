#include "modelkit/corpus.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

namespace modelkit::corpus {

using fincat::FinCategory;
using fincat::MorId;
using fincat::Morphism;
using fincat::ObjId;
using fincat::kNone;

FinCategory poset_category(int n, const std::vector<std::vector<bool>>& leq,
                           std::vector<std::string> names) {
    FinCategory c;
    c.n_objects = n;
    std::vector<std::vector<MorId>> arrow(n, std::vector<MorId>(n, kNone));
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y) {
            if (x == y && !leq[x][y]) throw std::invalid_argument("relation is not reflexive");
            if (x != y && leq[x][y] && leq[y][x])
                throw std::invalid_argument("relation is not antisymmetric");
            if (leq[x][y]) {
                arrow[x][y] = static_cast<MorId>(c.mor.size());
                c.mor.push_back({x, y});
            }
        }
    c.identity.resize(n);
    for (ObjId x = 0; x < n; ++x) c.identity[x] = arrow[x][x];
    const int m = c.n_morphisms();
    c.compose_table.assign(m, std::vector<MorId>(m, kNone));
    for (MorId f = 0; f < m; ++f)
        for (MorId g = 0; g < m; ++g)
            if (c.mor[f].tgt == c.mor[g].src) {
                MorId gf = arrow[c.mor[f].src][c.mor[g].tgt];
                if (gf == kNone) throw std::invalid_argument("relation is not transitive");
                c.compose_table[g][f] = gf;
            }
    c.object_names = std::move(names);
    return c;
}

namespace {

std::vector<std::vector<bool>> leq_from_covers(int n, std::initializer_list<std::pair<int, int>> covers) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (auto [a, b] : covers) leq[a][b] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (leq[i][k] && leq[k][j]) leq[i][j] = true;
    return leq;
}

}  // namespace

FinCategory finset_skeleton(const std::vector<int>& sizes) {
    FinCategory c;
    c.n_objects = static_cast<int>(sizes.size());
    // Each morphism x -> y is a function, stored as its value table.
    std::vector<std::vector<int>> table;
    std::map<std::pair<std::pair<ObjId, ObjId>, std::vector<int>>, MorId> index;
    for (ObjId x = 0; x < c.n_objects; ++x)
        for (ObjId y = 0; y < c.n_objects; ++y) {
            const int sx = sizes[x], sy = sizes[y];
            if (sx > 0 && sy == 0) continue;
            std::vector<int> fn(sx, 0);
            for (;;) {
                MorId id = static_cast<MorId>(c.mor.size());
                c.mor.push_back({x, y});
                table.push_back(fn);
                index[{{x, y}, fn}] = id;
                int i = sx - 1;
                while (i >= 0 && ++fn[i] == sy) fn[i--] = 0;
                if (i < 0) break;
            }
        }
    c.identity.resize(c.n_objects);
    for (ObjId x = 0; x < c.n_objects; ++x) {
        std::vector<int> fn(sizes[x]);
        for (int i = 0; i < sizes[x]; ++i) fn[i] = i;
        c.identity[x] = index.at({{x, x}, fn});
    }
    const int m = c.n_morphisms();
    c.compose_table.assign(m, std::vector<MorId>(m, kNone));
    for (MorId f = 0; f < m; ++f)
        for (MorId g = 0; g < m; ++g) {
            if (c.mor[f].tgt != c.mor[g].src) continue;
            std::vector<int> fn(table[f].size());
            for (std::size_t i = 0; i < fn.size(); ++i) fn[i] = table[g][table[f][i]];
            c.compose_table[g][f] = index.at({{c.mor[f].src, c.mor[g].tgt}, fn});
        }
    for (int s : sizes) c.object_names.push_back(std::to_string(s));
    return c;
}

FinCategory E() {
    return poset_category(2, leq_from_covers(2, {{0, 1}}), {"0", "*"});
}

FinCategory E_prime() {
    return poset_category(3, leq_from_covers(3, {{0, 1}, {1, 2}}), {"0", "E", "*"});
}

FinCategory LAT4() {
    return poset_category(4, leq_from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
                          {"X", "A", "B", "*"});
}

FinCategory LAT5() {
    return poset_category(5, leq_from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}),
                          {"X", "A", "B", "C", "*"});
}

FinCategory SQ() {
    return poset_category(4, leq_from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
                          {"0", "A", "B", "*"});
}

FinCategory HEX() {
    // Free category on the hexagon quiver: the two paths 0 -> * stay distinct.
    FinCategory c;
    c.n_objects = 6;
    c.object_names = {"0", "A", "B", "C", "D", "*"};
    enum {
        i0, iA, iB, iC, iD, iT,      // identities
        e1, e2, e3,                  // 0->A->B->*
        f1, f2, f3,                  // 0->C->D->*
        e21, e32, f21, f32,          // length-2 paths
        e321, f321                   // the two distinct 0->* composites
    };
    c.mor = {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5},
             {0, 1}, {1, 2}, {2, 5},
             {0, 3}, {3, 4}, {4, 5},
             {0, 2}, {1, 5}, {0, 4}, {3, 5},
             {0, 5}, {0, 5}};
    c.identity = {i0, iA, iB, iC, iD, iT};
    c.morphism_names = {"1_0", "1_A", "1_B", "1_C", "1_D", "1_*",
                        "e1",  "e2",  "e3",  "f1",  "f2",  "f3",
                        "e2e1", "e3e2", "f2f1", "f3f2", "e3e2e1", "f3f2f1"};
    const int m = 18;
    c.compose_table.assign(m, std::vector<MorId>(m, kNone));
    auto put = [&](MorId g, MorId f, MorId gf) { c.compose_table[g][f] = gf; };
    for (MorId f = 0; f < m; ++f) {
        put(c.identity[c.mor[f].tgt], f, f);
        put(f, c.identity[c.mor[f].src], f);
    }
    put(e2, e1, e21);
    put(e3, e2, e32);
    put(e3, e21, e321);
    put(e32, e1, e321);
    put(f2, f1, f21);
    put(f3, f2, f32);
    put(f3, f21, f321);
    put(f32, f1, f321);
    return c;
}

FinCategory PAR() {
    FinCategory c;
    c.n_objects = 2;
    c.object_names = {"A", "B"};
    c.mor = {{0, 0}, {1, 1}, {0, 1}, {0, 1}};
    c.identity = {0, 1};
    c.morphism_names = {"1_A", "1_B", "f", "g"};
    c.compose_table.assign(4, std::vector<MorId>(4, kNone));
    c.compose_table[0][0] = 0;
    c.compose_table[1][1] = 1;
    c.compose_table[2][0] = 2;
    c.compose_table[1][2] = 2;
    c.compose_table[3][0] = 3;
    c.compose_table[1][3] = 3;
    return c;
}

FinCategory RET() {
    FinCategory c;
    c.n_objects = 2;
    c.object_names = {"A", "B"};
    enum { ia, ib, r, s, e };  // e = s after r, the idempotent on A
    c.mor = {{0, 0}, {1, 1}, {0, 1}, {1, 0}, {0, 0}};
    c.identity = {ia, ib};
    c.morphism_names = {"1_A", "1_B", "r", "s", "sr"};
    c.compose_table.assign(5, std::vector<MorId>(5, kNone));
    auto put = [&](MorId g, MorId f, MorId gf) { c.compose_table[g][f] = gf; };
    for (MorId f = 0; f < 5; ++f) {
        put(c.identity[c.mor[f].tgt], f, f);
        put(f, c.identity[c.mor[f].src], f);
    }
    put(s, r, e);   // s . r
    put(r, s, ib);  // r . s = 1_B
    put(e, e, e);
    put(r, e, r);
    put(e, s, s);
    put(s, ib, s);  // already set by identity loop; harmless
    return c;
}

FinCategory FINSET3() { return finset_skeleton({0, 1, 2}); }

FinCategory chain(int n) {
    if (n < 0) throw std::invalid_argument("chain length must be nonnegative");
    const int k = n + 1;
    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) leq[i][j] = true;
        names.push_back(std::to_string(i));
    }
    return poset_category(k, leq, std::move(names));
}

FinCategory d_chain(int n) {
    if (n < 0) throw std::invalid_argument("chain length must be nonnegative");
    const int k = n + 2;
    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
    std::vector<std::string> names = {"0"};
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) leq[i][j] = true;
    for (int i = 0; i <= n; ++i) names.push_back("D" + std::to_string(i));
    return poset_category(k, leq, std::move(names));
}

namespace {

// Strict order as a bitmask over ordered pairs (i,j), i != j, i < j meaning
// "i strictly below j" is NOT assumed: both directions are represented.
int pair_bit(int n, int i, int j) { return i * n + j; }

bool strict_ok(int n, unsigned mask) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if ((mask >> pair_bit(n, i, j)) & 1u) {
                if ((mask >> pair_bit(n, j, i)) & 1u) return false;  // antisymmetry
                for (int k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    if (((mask >> pair_bit(n, j, k)) & 1u) && !((mask >> pair_bit(n, i, k)) & 1u))
                        return false;  // transitivity
                }
            }
        }
    return true;
}

unsigned relabel(int n, unsigned mask, const std::vector<int>& perm) {
    unsigned out = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && ((mask >> pair_bit(n, i, j)) & 1u))
                out |= 1u << pair_bit(n, perm[i], perm[j]);
    return out;
}

}  // namespace

std::vector<FinCategory> all_posets(int max_elements) {
    if (max_elements < 0 || max_elements > 5)
        throw std::invalid_argument("poset enumeration supported for 0..5 elements");
    std::vector<FinCategory> out;
    for (int n = 0; n <= max_elements; ++n) {
        if (n == 0) {
            FinCategory empty;
            empty.n_objects = 0;
            out.push_back(std::move(empty));
            continue;
        }
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::vector<int> slot;  // off-diagonal pair bits
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) slot.push_back(pair_bit(n, i, j));
        std::set<unsigned> seen;
        std::vector<unsigned> reps;
        const unsigned top = 1u << slot.size();
        for (unsigned bits = 0; bits < top; ++bits) {
            unsigned mask = 0;
            for (std::size_t b = 0; b < slot.size(); ++b)
                if ((bits >> b) & 1u) mask |= 1u << slot[b];
            if (!strict_ok(n, mask)) continue;
            unsigned canon = mask;
            std::vector<int> p = perm;
            do {
                canon = std::min(canon, relabel(n, mask, p));
            } while (std::next_permutation(p.begin(), p.end()));
            if (seen.insert(canon).second) reps.push_back(canon);
        }
        std::sort(reps.begin(), reps.end());
        for (unsigned mask : reps) {
            std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
            for (int i = 0; i < n; ++i) {
                leq[i][i] = true;
                for (int j = 0; j < n; ++j)
                    if (i != j && ((mask >> pair_bit(n, i, j)) & 1u)) leq[i][j] = true;
            }
            out.push_back(poset_category(n, leq));
        }
    }
    return out;
}

const std::vector<std::string>& category_names() {
    static const std::vector<std::string> names = {"E",   "E'",  "LAT4", "LAT5",   "SQ",
                                                   "HEX", "PAR", "RET",  "FINSET3"};
    return names;
}

std::optional<FinCategory> category_by_name(const std::string& name) {
    if (name == "E") return E();
    if (name == "E'") return E_prime();
    if (name == "LAT4") return LAT4();
    if (name == "LAT5") return LAT5();
    if (name == "SQ") return SQ();
    if (name == "HEX") return HEX();
    if (name == "PAR") return PAR();
    if (name == "RET") return RET();
    if (name == "FINSET3") return FINSET3();
    if (name.rfind("chain", 0) == 0) {
        try {
            int n = std::stoi(name.substr(5));
            if (n >= 0 && n <= 9) return chain(n);
        } catch (...) {
        }
    }
    if (name.rfind("dchain", 0) == 0) {
        try {
            int n = std::stoi(name.substr(6));
            if (n >= 0 && n <= 9) return d_chain(n);
        } catch (...) {
        }
    }
    return std::nullopt;
}

}  // namespace modelkit::corpus
