#include "modelkit/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modelkit::fincat {

bool FinCategory::is_identity(MorId f) const {
    return mor[f].src == mor[f].tgt && identity[mor[f].src] == f;
}

std::vector<MorId> FinCategory::hom(ObjId x, ObjId y) const {
    std::vector<MorId> out;
    for (MorId f = 0; f < n_morphisms(); ++f)
        if (mor[f].src == x && mor[f].tgt == y) out.push_back(f);
    return out;
}

std::string FinCategory::object_name(ObjId x) const {
    if (x >= 0 && x < static_cast<int>(object_names.size()) && !object_names[x].empty())
        return object_names[x];
    return "obj" + std::to_string(x);
}

std::string FinCategory::morphism_name(MorId f) const {
    if (f >= 0 && f < static_cast<int>(morphism_names.size()) && !morphism_names[f].empty())
        return morphism_names[f];
    if (f >= 0 && f < n_morphisms())
        return "m" + std::to_string(f) + "(" + object_name(mor[f].src) + "->" +
               object_name(mor[f].tgt) + ")";
    return "m" + std::to_string(f);
}

void FinCategory::check_morphism(MorId f) const {
    if (f < 0 || f >= n_morphisms())
        throw std::invalid_argument("unknown morphism id " + std::to_string(f));
}

void FinCategory::check_object(ObjId x) const {
    if (x < 0 || x >= n_objects)
        throw std::invalid_argument("unknown object id " + std::to_string(x));
}

ValidationReport validate_category(const FinCategory& c) {
    ValidationReport rep;
    auto add = [&](Violation v) { rep.violations.push_back(std::move(v)); };

    const int m = c.n_morphisms();
    for (MorId f = 0; f < m; ++f) {
        if (c.mor[f].src < 0 || c.mor[f].src >= c.n_objects || c.mor[f].tgt < 0 ||
            c.mor[f].tgt >= c.n_objects)
            add({Violation::BadEndpoints, f, kNone, kNone,
                 "morphism " + c.morphism_name(f) + " has out-of-range endpoints"});
    }

    if (static_cast<int>(c.identity.size()) != c.n_objects) {
        add({Violation::BadIdentity, kNone, kNone, kNone, "identity table has wrong size"});
        return rep;  // nothing else is checkable
    }
    for (ObjId x = 0; x < c.n_objects; ++x) {
        MorId e = c.identity[x];
        if (e < 0 || e >= m || c.mor[e].src != x || c.mor[e].tgt != x)
            add({Violation::BadIdentity, e, kNone, kNone,
                 "identity of " + c.object_name(x) + " is not an endomorphism of it"});
    }

    if (static_cast<int>(c.compose_table.size()) != m) {
        add({Violation::MissingComposite, kNone, kNone, kNone, "compose table has wrong shape"});
        return rep;
    }
    for (MorId g = 0; g < m; ++g) {
        if (static_cast<int>(c.compose_table[g].size()) != m) {
            add({Violation::MissingComposite, kNone, g, kNone,
                 "compose table row " + std::to_string(g) + " has wrong length"});
            return rep;
        }
    }

    for (MorId g = 0; g < m; ++g) {
        for (MorId f = 0; f < m; ++f) {
            MorId gf = c.compose_table[g][f];
            if (!c.composable(g, f)) {
                if (gf != kNone)
                    add({Violation::SpuriousComposite, f, g, kNone,
                         "entry for non-composable pair (" + c.morphism_name(g) + ", " +
                             c.morphism_name(f) + ")"});
                continue;
            }
            if (gf == kNone) {
                add({Violation::MissingComposite, f, g, kNone,
                     "no composite for (" + c.morphism_name(g) + ", " + c.morphism_name(f) + ")"});
            } else if (gf < 0 || gf >= m || c.mor[gf].src != c.mor[f].src ||
                       c.mor[gf].tgt != c.mor[g].tgt) {
                add({Violation::BadEndpoints, f, g, gf,
                     "composite " + c.morphism_name(g) + "∘" + c.morphism_name(f) +
                         " has mismatched endpoints"});
            }
        }
    }
    if (!rep.ok()) return rep;  // laws below assume a well-shaped table

    for (MorId f = 0; f < m; ++f) {
        if (c.compose(f, c.identity[c.mor[f].src]) != f ||
            c.compose(c.identity[c.mor[f].tgt], f) != f)
            add({Violation::IdentityLaw, f, kNone, kNone,
                 "identity law fails at " + c.morphism_name(f)});
    }

    for (MorId h = 0; h < m; ++h)
        for (MorId g = 0; g < m; ++g) {
            if (!c.composable(h, g)) continue;
            MorId hg = c.compose(h, g);
            for (MorId f = 0; f < m; ++f) {
                if (!c.composable(g, f)) continue;
                if (c.compose(hg, f) != c.compose(h, c.compose(g, f)))
                    add({Violation::Associativity, f, g, h,
                         "associativity fails on (" + c.morphism_name(h) + ", " +
                             c.morphism_name(g) + ", " + c.morphism_name(f) + ")"});
            }
        }
    return rep;
}

MorphismFlags classify_morphism(const FinCategory& c, MorId f) {
    c.check_morphism(f);
    const int m = c.n_morphisms();
    MorphismFlags out;

    out.mono = true;
    for (MorId u = 0; u < m && out.mono; ++u) {
        if (!c.composable(f, u)) continue;
        for (MorId v = 0; v < m; ++v) {
            if (c.mor[v].src != c.mor[u].src || c.mor[v].tgt != c.mor[u].tgt) continue;
            if (c.compose(f, u) == c.compose(f, v) && u != v) {
                out.mono = false;
                break;
            }
        }
    }
    out.epi = true;
    for (MorId u = 0; u < m && out.epi; ++u) {
        if (!c.composable(u, f)) continue;
        for (MorId v = 0; v < m; ++v) {
            if (c.mor[v].src != c.mor[u].src || c.mor[v].tgt != c.mor[u].tgt) continue;
            if (c.compose(u, f) == c.compose(v, f) && u != v) {
                out.epi = false;
                break;
            }
        }
    }
    MorId id_src = c.identity[c.mor[f].src];
    MorId id_tgt = c.identity[c.mor[f].tgt];
    for (MorId s = 0; s < m; ++s) {
        if (c.composable(f, s) && c.mor[s].src == c.mor[f].tgt && c.compose(f, s) == id_tgt)
            out.retraction = true;
        if (c.composable(s, f) && c.mor[s].tgt == c.mor[f].src && c.compose(s, f) == id_src)
            out.section = true;
    }
    // A one-sided inverse on each side forces a two-sided one.
    out.iso = out.retraction && out.section;
    return out;
}

bool is_iso(const FinCategory& c, MorId f) { return inverse(c, f) != kNone; }

MorId inverse(const FinCategory& c, MorId f) {
    c.check_morphism(f);
    MorId id_src = c.identity[c.mor[f].src];
    MorId id_tgt = c.identity[c.mor[f].tgt];
    for (MorId g : c.hom(c.mor[f].tgt, c.mor[f].src))
        if (c.compose(f, g) == id_tgt && c.compose(g, f) == id_src) return g;
    return kNone;
}

// ---- functors ----

bool is_functor(const FinCategory& c, const FinCategory& d, const Functor& F, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (static_cast<int>(F.obj.size()) != c.n_objects ||
        static_cast<int>(F.mor.size()) != c.n_morphisms())
        return fail("functor tables have wrong size");
    for (ObjId x : F.obj)
        if (x < 0 || x >= d.n_objects) return fail("object image out of range");
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
        MorId ff = F.mor[f];
        if (ff < 0 || ff >= d.n_morphisms()) return fail("morphism image out of range");
        if (d.mor[ff].src != F.obj[c.mor[f].src] || d.mor[ff].tgt != F.obj[c.mor[f].tgt])
            return fail("image of " + c.morphism_name(f) + " has wrong endpoints");
    }
    for (ObjId x = 0; x < c.n_objects; ++x)
        if (F.mor[c.identity[x]] != d.identity[F.obj[x]])
            return fail("identity of " + c.object_name(x) + " not preserved");
    for (MorId g = 0; g < c.n_morphisms(); ++g)
        for (MorId f = 0; f < c.n_morphisms(); ++f) {
            if (!c.composable(g, f)) continue;
            if (F.mor[c.compose(g, f)] != d.compose(F.mor[g], F.mor[f]))
                return fail("composition not preserved on (" + c.morphism_name(g) + ", " +
                            c.morphism_name(f) + ")");
        }
    return true;
}

Functor identity_functor(const FinCategory& c) {
    Functor F;
    F.obj.resize(c.n_objects);
    F.mor.resize(c.n_morphisms());
    std::iota(F.obj.begin(), F.obj.end(), 0);
    std::iota(F.mor.begin(), F.mor.end(), 0);
    return F;
}

Functor compose_functors(const Functor& g, const Functor& f) {
    Functor out;
    out.obj.reserve(f.obj.size());
    out.mor.reserve(f.mor.size());
    for (ObjId x : f.obj) out.obj.push_back(g.obj[x]);
    for (MorId m : f.mor) out.mor.push_back(g.mor[m]);
    return out;
}

bool is_natural(const FinCategory& c, const FinCategory& d, const Functor& F, const Functor& G,
                const std::vector<MorId>& eta, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (static_cast<int>(eta.size()) != c.n_objects) return fail("component list has wrong size");
    for (ObjId x = 0; x < c.n_objects; ++x) {
        MorId e = eta[x];
        if (e < 0 || e >= d.n_morphisms() || d.mor[e].src != F.obj[x] || d.mor[e].tgt != G.obj[x])
            return fail("component at " + c.object_name(x) + " has wrong endpoints");
    }
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
        ObjId x = c.mor[f].src, y = c.mor[f].tgt;
        if (d.compose(eta[y], F.mor[f]) != d.compose(G.mor[f], eta[x]))
            return fail("naturality square fails at " + c.morphism_name(f));
    }
    return true;
}

// ---- subcategories, skeletons, equivalence ----

Subcategory full_subcategory(const FinCategory& c, const std::vector<ObjId>& objs) {
    for (ObjId x : objs) c.check_object(x);
    Subcategory out;
    std::vector<int> obj_new(c.n_objects, kNone);
    for (ObjId x : objs) {
        if (obj_new[x] != kNone) throw std::invalid_argument("duplicate object in subcategory");
        obj_new[x] = static_cast<int>(out.obj_in_parent.size());
        out.obj_in_parent.push_back(x);
    }
    std::vector<MorId> mor_new(c.n_morphisms(), kNone);
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
        if (obj_new[c.mor[f].src] == kNone || obj_new[c.mor[f].tgt] == kNone) continue;
        mor_new[f] = static_cast<int>(out.mor_in_parent.size());
        out.mor_in_parent.push_back(f);
    }
    FinCategory& s = out.cat;
    s.n_objects = static_cast<int>(out.obj_in_parent.size());
    s.identity.resize(s.n_objects);
    for (int i = 0; i < s.n_objects; ++i) {
        s.identity[i] = mor_new[c.identity[out.obj_in_parent[i]]];
        if (!c.object_names.empty()) s.object_names.push_back(c.object_name(out.obj_in_parent[i]));
    }
    const int sm = static_cast<int>(out.mor_in_parent.size());
    s.mor.resize(sm);
    for (int i = 0; i < sm; ++i) {
        MorId f = out.mor_in_parent[i];
        s.mor[i] = {obj_new[c.mor[f].src], obj_new[c.mor[f].tgt]};
        if (!c.morphism_names.empty()) s.morphism_names.push_back(c.morphism_name(f));
    }
    s.compose_table.assign(sm, std::vector<MorId>(sm, kNone));
    for (int g = 0; g < sm; ++g)
        for (int f = 0; f < sm; ++f) {
            if (!s.composable(g, f)) continue;
            s.compose_table[g][f] = mor_new[c.compose(out.mor_in_parent[g], out.mor_in_parent[f])];
        }
    return out;
}

Subcategory skeleton(const FinCategory& c) {
    std::vector<ObjId> reps;
    std::vector<bool> covered(c.n_objects, false);
    for (ObjId x = 0; x < c.n_objects; ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        covered[x] = true;
        for (ObjId y = x + 1; y < c.n_objects; ++y) {
            if (covered[y]) continue;
            for (MorId f : c.hom(x, y))
                if (is_iso(c, f)) {
                    covered[y] = true;
                    break;
                }
        }
    }
    return full_subcategory(c, reps);
}

namespace {

// Backtracking extension of a fixed object bijection to a morphism bijection.
bool extend_iso(const FinCategory& c, const FinCategory& d, const std::vector<ObjId>& sigma,
                std::vector<MorId>& img, std::vector<bool>& used, MorId f) {
    const int m = c.n_morphisms();
    if (f == m) return true;
    if (img[f] != kNone) return extend_iso(c, d, sigma, img, used, f + 1);
    for (MorId cand : d.hom(sigma[c.mor[f].src], sigma[c.mor[f].tgt])) {
        if (used[cand]) continue;
        bool ok = true;
        // check all compositions where both factors (or factor+composite) are assigned
        for (MorId g = 0; g < m && ok; ++g) {
            if (img[g] == kNone && g != f) continue;
            MorId ig = (g == f) ? cand : img[g];
            if (c.composable(g, f)) {
                MorId gf = c.compose(g, f);
                MorId want = d.compose(ig, cand);
                if (want == kNone) ok = false;
                else if (img[gf] != kNone && img[gf] != want) ok = false;
                else if (gf == f && want != cand) ok = false;
                else if (gf == g && want != ig) ok = false;
            }
            if (ok && c.composable(f, g)) {
                MorId fg = c.compose(f, g);
                MorId want = d.compose(cand, ig);
                if (want == kNone) ok = false;
                else if (img[fg] != kNone && img[fg] != want) ok = false;
                else if (fg == f && want != cand) ok = false;
                else if (fg == g && want != ig) ok = false;
            }
        }
        if (!ok) continue;
        img[f] = cand;
        used[cand] = true;
        if (extend_iso(c, d, sigma, img, used, f + 1)) return true;
        img[f] = kNone;
        used[cand] = false;
    }
    return false;
}

}  // namespace

bool is_isomorphic(const FinCategory& c, const FinCategory& d) {
    if (c.n_objects != d.n_objects || c.n_morphisms() != d.n_morphisms()) return false;
    std::vector<ObjId> sigma(c.n_objects);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        bool sizes_ok = true;
        for (ObjId x = 0; x < c.n_objects && sizes_ok; ++x)
            for (ObjId y = 0; y < c.n_objects && sizes_ok; ++y)
                if (c.hom(x, y).size() != d.hom(sigma[x], sigma[y]).size()) sizes_ok = false;
        if (!sizes_ok) continue;
        std::vector<MorId> img(c.n_morphisms(), kNone);
        std::vector<bool> used(d.n_morphisms(), false);
        for (ObjId x = 0; x < c.n_objects; ++x) {
            img[c.identity[x]] = d.identity[sigma[x]];
            used[d.identity[sigma[x]]] = true;
        }
        if (extend_iso(c, d, sigma, img, used, 0)) return true;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

bool equivalent_categories(const FinCategory& c, const FinCategory& d) {
    return is_isomorphic(skeleton(c).cat, skeleton(d).cat);
}

// ---- preorder reflection ----

bool is_preorder(const FinCategory& c) {
    for (ObjId x = 0; x < c.n_objects; ++x)
        for (ObjId y = 0; y < c.n_objects; ++y)
            if (c.hom(x, y).size() > 1) return false;
    return true;
}

PreorderReflection preorder_reflection(const FinCategory& c) {
    const int n = c.n_objects;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y) reach[x][y] = !c.hom(x, y).empty();

    PreorderReflection out;
    out.cls.assign(n, kNone);
    std::vector<ObjId> rep;  // class -> lowest member
    for (ObjId x = 0; x < n; ++x) {
        if (out.cls[x] != kNone) continue;
        int k = static_cast<int>(rep.size());
        out.cls[x] = k;
        rep.push_back(x);
        for (ObjId y = x + 1; y < n; ++y)
            if (out.cls[y] == kNone && reach[x][y] && reach[y][x]) out.cls[y] = k;
    }

    FinCategory& p = out.preorder;
    const int nc = static_cast<int>(rep.size());
    p.n_objects = nc;
    p.identity.assign(nc, kNone);
    std::vector<std::vector<MorId>> arrow(nc, std::vector<MorId>(nc, kNone));
    for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b) {
            if (!reach[rep[a]][rep[b]]) continue;
            arrow[a][b] = p.n_morphisms();
            p.mor.push_back({a, b});
        }
    for (int a = 0; a < nc; ++a) p.identity[a] = arrow[a][a];
    const int pm = p.n_morphisms();
    p.compose_table.assign(pm, std::vector<MorId>(pm, kNone));
    for (MorId g = 0; g < pm; ++g)
        for (MorId f = 0; f < pm; ++f)
            if (p.composable(g, f)) p.compose_table[g][f] = arrow[p.mor[f].src][p.mor[g].tgt];
    if (!c.object_names.empty())
        for (int a = 0; a < nc; ++a) p.object_names.push_back("[" + c.object_name(rep[a]) + "]");

    out.to_preorder.obj = out.cls;
    out.to_preorder.mor.resize(c.n_morphisms());
    for (MorId f = 0; f < c.n_morphisms(); ++f)
        out.to_preorder.mor[f] = arrow[out.cls[c.mor[f].src]][out.cls[c.mor[f].tgt]];
    return out;
}

// ---- monic length ----

std::optional<int> monic_length(const FinCategory& c) {
    std::vector<ObjId> terminals;
    for (ObjId t = 0; t < c.n_objects; ++t) {
        bool ok = true;
        for (ObjId x = 0; x < c.n_objects && ok; ++x) ok = c.hom(x, t).size() == 1;
        if (ok) terminals.push_back(t);
    }
    if (terminals.empty()) return std::nullopt;

    const int n = c.n_objects;
    std::vector<std::vector<bool>> step(n, std::vector<bool>(n, false));
    for (MorId f = 0; f < c.n_morphisms(); ++f)
        if (!is_iso(c, f) && classify_morphism(c, f).mono) step[c.mor[f].src][c.mor[f].tgt] = true;

    // Longest chain of noninvertible monos from x down to a terminal object.
    // The step relation is acyclic in a finite category (a cyclic composite
    // would be an invertible mono built from noninvertible ones).
    std::vector<int> best(n, -2);  // -2 unvisited, -1 cannot reach a terminal
    std::vector<bool> on_stack(n, false);
    std::vector<bool> is_term(n, false);
    for (ObjId t : terminals) is_term[t] = true;
    auto dfs = [&](auto&& self, ObjId x) -> int {
        if (best[x] != -2) return best[x];
        if (on_stack[x]) throw std::logic_error("cycle of noninvertible monomorphisms");
        on_stack[x] = true;
        int b = is_term[x] ? 0 : -1;
        for (ObjId y = 0; y < n; ++y) {
            if (!step[x][y]) continue;
            int sub = self(self, y);
            if (sub >= 0 && sub + 1 > b) b = sub + 1;
        }
        on_stack[x] = false;
        best[x] = b;
        return b;
    };
    int answer = 0;
    for (ObjId x = 0; x < n; ++x) answer = std::max(answer, dfs(dfs, x));
    return answer;
}

}  // namespace modelkit::fincat
