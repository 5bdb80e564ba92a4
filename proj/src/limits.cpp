#include "modelkit/fincat.hpp"

#include <stdexcept>

namespace modelkit::fincat {

void check_diagram(const FinCategory& c, const Diagram& d) {
    if (static_cast<int>(d.node.size()) > kMaxDiagramNodes)
        throw std::invalid_argument("diagram has more than " + std::to_string(kMaxDiagramNodes) +
                                    " nodes");
    for (ObjId x : d.node) c.check_object(x);
    for (const auto& a : d.arrow) {
        if (a.from < 0 || a.from >= static_cast<int>(d.node.size()) || a.to < 0 ||
            a.to >= static_cast<int>(d.node.size()))
            throw std::invalid_argument("diagram arrow references unknown node");
        c.check_morphism(a.via);
        if (c.src(a.via) != d.node[a.from] || c.tgt(a.via) != d.node[a.to])
            throw std::invalid_argument("diagram arrow endpoints do not match its nodes");
    }
}

bool is_cone(const FinCategory& c, const Diagram& d, const Cone& cone) {
    if (cone.leg.size() != d.node.size()) return false;
    for (std::size_t i = 0; i < d.node.size(); ++i) {
        MorId l = cone.leg[i];
        if (l < 0 || l >= c.n_morphisms() || c.src(l) != cone.apex || c.tgt(l) != d.node[i])
            return false;
    }
    for (const auto& a : d.arrow)
        if (c.compose(a.via, cone.leg[a.from]) != cone.leg[a.to]) return false;
    return true;
}

bool is_cocone(const FinCategory& c, const Diagram& d, const Cone& cone) {
    if (cone.leg.size() != d.node.size()) return false;
    for (std::size_t i = 0; i < d.node.size(); ++i) {
        MorId l = cone.leg[i];
        if (l < 0 || l >= c.n_morphisms() || c.src(l) != d.node[i] || c.tgt(l) != cone.apex)
            return false;
    }
    for (const auto& a : d.arrow)
        if (c.compose(cone.leg[a.to], a.via) != cone.leg[a.from]) return false;
    return true;
}

namespace {

// Enumerates all (co)cones over d in deterministic order: apex ascending,
// then legs in lexicographic order of morphism ids.
template <typename Fn>
void for_each_cone(const FinCategory& c, const Diagram& d, bool limit_side, Fn&& fn) {
    const int k = static_cast<int>(d.node.size());
    for (ObjId apex = 0; apex < c.n_objects; ++apex) {
        std::vector<std::vector<MorId>> cand(k);
        bool dead = false;
        for (int i = 0; i < k; ++i) {
            cand[i] = limit_side ? c.hom(apex, d.node[i]) : c.hom(d.node[i], apex);
            if (cand[i].empty()) {
                dead = true;
                break;
            }
        }
        if (dead) continue;
        std::vector<int> pick(k, 0);
        for (;;) {
            Cone cone;
            cone.apex = apex;
            cone.leg.resize(k);
            for (int i = 0; i < k; ++i) cone.leg[i] = cand[i][pick[i]];
            bool commutes = limit_side ? is_cone(c, d, cone) : is_cocone(c, d, cone);
            if (commutes && !fn(cone)) return;
            int i = k - 1;
            while (i >= 0 && ++pick[i] == static_cast<int>(cand[i].size())) pick[i--] = 0;
            if (i < 0) break;
        }
        if (k == 0) {  // empty diagram: one cone per apex, handled above only if k>0
            Cone cone;
            cone.apex = apex;
            if (!fn(cone)) return;
        }
    }
}

bool universal(const FinCategory& c, const Diagram& d, const Cone& cone, bool limit_side) {
    bool ok = true;
    for_each_cone(c, d, limit_side, [&](const Cone& other) {
        int factors = 0;
        const auto mediators =
            limit_side ? c.hom(other.apex, cone.apex) : c.hom(cone.apex, other.apex);
        for (MorId h : mediators) {
            bool match = true;
            for (std::size_t i = 0; i < d.node.size() && match; ++i) {
                MorId through = limit_side ? c.compose(cone.leg[i], h) : c.compose(h, cone.leg[i]);
                match = through == other.leg[i];
            }
            if (match && ++factors > 1) break;
        }
        if (factors != 1) ok = false;
        return ok;  // stop on first counterexample
    });
    return ok;
}

}  // namespace

bool is_limiting_cone(const FinCategory& c, const Diagram& d, const Cone& cone) {
    return is_cone(c, d, cone) && universal(c, d, cone, true);
}

bool is_colimiting_cone(const FinCategory& c, const Diagram& d, const Cone& cone) {
    return is_cocone(c, d, cone) && universal(c, d, cone, false);
}

std::optional<Cone> limit(const FinCategory& c, const Diagram& d) {
    check_diagram(c, d);
    std::optional<Cone> found;
    for_each_cone(c, d, true, [&](const Cone& cone) {
        if (universal(c, d, cone, true)) {
            found = cone;
            return false;
        }
        return true;
    });
    return found;
}

std::optional<Cone> colimit(const FinCategory& c, const Diagram& d) {
    check_diagram(c, d);
    std::optional<Cone> found;
    for_each_cone(c, d, false, [&](const Cone& cone) {
        if (universal(c, d, cone, false)) {
            found = cone;
            return false;
        }
        return true;
    });
    return found;
}

std::optional<ObjId> initial_object(const FinCategory& c) {
    for (ObjId x = 0; x < c.n_objects; ++x) {
        bool ok = true;
        for (ObjId y = 0; y < c.n_objects && ok; ++y) ok = c.hom(x, y).size() == 1;
        if (ok) return x;
    }
    return std::nullopt;
}

std::optional<ObjId> terminal_object(const FinCategory& c) {
    for (ObjId t = 0; t < c.n_objects; ++t) {
        bool ok = true;
        for (ObjId x = 0; x < c.n_objects && ok; ++x) ok = c.hom(x, t).size() == 1;
        if (ok) return t;
    }
    return std::nullopt;
}

Diagram discrete_pair_diagram(ObjId a, ObjId b) {
    Diagram d;
    d.node = {a, b};
    return d;
}

Diagram cospan_diagram(const FinCategory& c, MorId f, MorId g) {
    c.check_morphism(f);
    c.check_morphism(g);
    if (c.tgt(f) != c.tgt(g)) throw std::invalid_argument("cospan legs must share a target");
    Diagram d;
    d.node = {c.src(f), c.src(g), c.tgt(f)};
    d.arrow = {{0, 2, f}, {1, 2, g}};
    return d;
}

Diagram span_diagram(const FinCategory& c, MorId f, MorId g) {
    c.check_morphism(f);
    c.check_morphism(g);
    if (c.src(f) != c.src(g)) throw std::invalid_argument("span legs must share a source");
    Diagram d;
    d.node = {c.tgt(f), c.tgt(g), c.src(f)};
    d.arrow = {{2, 0, f}, {2, 1, g}};
    return d;
}

// ---- coproduct splitting / disjointness ----

std::optional<SplitDecomposition> split_morphism(const FinCategory& c, const CoproductPair& pair,
                                                 MorId f) {
    c.check_morphism(f);
    if (c.tgt(f) != pair.sum) throw std::invalid_argument("morphism does not land in the coproduct");
    const ObjId x = c.src(f);
    for (ObjId xl = 0; xl < c.n_objects; ++xl)
        for (ObjId xr = 0; xr < c.n_objects; ++xr) {
            auto sum = colimit(c, discrete_pair_diagram(xl, xr));
            if (!sum) continue;
            SplitDecomposition dec;
            dec.left = xl;
            dec.right = xr;
            dec.lr = {xl, xr, sum->apex, sum->leg[0], sum->leg[1]};
            for (MorId psi : c.hom(sum->apex, x)) {
                if (!is_iso(c, psi)) continue;
                MorId fpsi = c.compose(f, psi);
                MorId via_l = c.compose(fpsi, dec.lr.i1);
                MorId via_r = c.compose(fpsi, dec.lr.i2);
                for (MorId fl : c.hom(xl, pair.a)) {
                    if (c.compose(pair.i1, fl) != via_l) continue;
                    for (MorId fr : c.hom(xr, pair.b)) {
                        if (c.compose(pair.i2, fr) != via_r) continue;
                        dec.iso = psi;
                        dec.f_left = fl;
                        dec.f_right = fr;
                        return dec;
                    }
                }
            }
        }
    return std::nullopt;
}

CoproductReport coproduct_properties(const FinCategory& c) {
    CoproductReport rep;
    rep.all_pairs_exist = true;
    for (ObjId a = 0; a < c.n_objects; ++a)
        for (ObjId b = a + 1; b < c.n_objects; ++b) {
            auto sum = colimit(c, discrete_pair_diagram(a, b));
            if (!sum) {
                rep.all_pairs_exist = false;
                rep.missing.emplace_back(a, b);
            } else {
                rep.pairs.push_back({a, b, sum->apex, sum->leg[0], sum->leg[1]});
            }
        }
    if (auto init = initial_object(c)) {
        rep.has_initial = true;
        rep.initial = *init;
    }
    if (!rep.all_pairs_exist) return rep;  // distinct failure kind: nothing else is checked

    rep.splitting = true;
    for (const auto& pair : rep.pairs) {
        for (MorId f = 0; f < c.n_morphisms() && rep.splitting; ++f) {
            if (c.tgt(f) != pair.sum) continue;
            if (!split_morphism(c, pair, f)) {
                rep.splitting = false;
                rep.split_failure = SplitFailure{pair, f};
            }
        }
        if (!rep.splitting) break;
    }

    rep.disjoint = true;
    auto record = [&](const CoproductPair& pair, int which, std::optional<Cone> actual) {
        rep.disjoint = false;
        rep.disjoint_failure = DisjointFailure{pair, which, std::move(actual)};
    };
    for (const auto& pair : rep.pairs) {
        if (!classify_morphism(c, pair.i1).mono) {
            record(pair, 0, std::nullopt);
            break;
        }
        if (!classify_morphism(c, pair.i2).mono) {
            record(pair, 1, std::nullopt);
            break;
        }
        if (!rep.has_initial) {
            record(pair, 5, std::nullopt);
            break;
        }
        struct Square {
            MorId p, q;    // cospan legs into the coproduct
            ObjId apex;    // expected pullback
        };
        const Square squares[3] = {{pair.i1, pair.i1, pair.a},
                                   {pair.i1, pair.i2, rep.initial},
                                   {pair.i2, pair.i2, pair.b}};
        bool failed = false;
        for (int k = 0; k < 3 && !failed; ++k) {
            Diagram cospan = cospan_diagram(c, squares[k].p, squares[k].q);
            Cone cone;
            cone.apex = squares[k].apex;
            if (squares[k].apex == rep.initial) {
                cone.leg = {c.hom(rep.initial, c.src(squares[k].p))[0],
                            c.hom(rep.initial, c.src(squares[k].q))[0],
                            c.hom(rep.initial, pair.sum)[0]};
            } else {
                MorId idm = c.identity[squares[k].apex];
                cone.leg = {idm, idm, squares[k].p};
            }
            if (!is_limiting_cone(c, cospan, cone)) {
                record(pair, 2 + k, limit(c, cospan));
                failed = true;
            }
        }
        if (failed) break;
    }
    return rep;
}

}  // namespace modelkit::fincat
