#include "modelkit/modelstruct.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace modelkit::modelstruct {

namespace {

void check_labels(const FinCategory& c, const std::vector<int>& labels, int max_value,
                  const char* what) {
    if (static_cast<int>(labels.size()) != c.n_objects) {
        std::ostringstream os;
        os << what << " labeling has " << labels.size() << " entries for " << c.n_objects
           << " objects";
        throw std::invalid_argument(os.str());
    }
    for (ObjId x = 0; x < c.n_objects; ++x) {
        if (labels[x] < 0 || labels[x] > max_value) {
            std::ostringstream os;
            os << what << " label of object " << c.object_name(x) << " is out of range";
            throw std::invalid_argument(os.str());
        }
    }
}

MorphismClass iso_class(const FinCategory& c) { return MorphismClass::isos(c); }

}  // namespace

Cut Cut::make(const FinCategory& c, std::vector<int> side) {
    check_labels(c, side, 1, "cut");
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
        if (side[c.src(f)] > side[c.tgt(f)]) {
            std::ostringstream os;
            os << "cut is not functorial: " << c.morphism_name(f) << " runs from the upper side "
               << c.object_name(c.src(f)) << " to the lower side " << c.object_name(c.tgt(f));
            throw std::invalid_argument(os.str());
        }
    }
    return Cut{std::move(side)};
}

bool Cut::trivial() const {
    return std::all_of(side.begin(), side.end(), [&](int s) { return s == side[0]; });
}

std::vector<ObjId> Cut::lower() const {
    std::vector<ObjId> out;
    for (ObjId x = 0; x < static_cast<ObjId>(side.size()); ++x)
        if (side[x] == 0) out.push_back(x);
    return out;
}

std::vector<ObjId> Cut::upper() const {
    std::vector<ObjId> out;
    for (ObjId x = 0; x < static_cast<ObjId>(side.size()); ++x)
        if (side[x] == 1) out.push_back(x);
    return out;
}

DoubleCut DoubleCut::make(const FinCategory& c, std::vector<int> level) {
    check_labels(c, level, 2, "double cut");
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
        if (level[c.src(f)] > level[c.tgt(f)]) {
            std::ostringstream os;
            os << "double cut is not monotone: " << c.morphism_name(f) << " drops the level from "
               << c.object_name(c.src(f)) << " to " << c.object_name(c.tgt(f));
            throw std::invalid_argument(os.str());
        }
    }
    return DoubleCut{std::move(level)};
}

std::vector<Cut> all_cuts(const FinCategory& c) {
    std::vector<Cut> out;
    const int n = c.n_objects;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> side(n);
        for (int x = 0; x < n; ++x) side[x] = (mask >> (n - 1 - x)) & 1u;
        bool ok = true;
        for (MorId f = 0; f < c.n_morphisms() && ok; ++f)
            ok = side[c.src(f)] <= side[c.tgt(f)];
        if (ok) out.push_back(Cut{std::move(side)});
    }
    return out;
}

std::vector<DoubleCut> all_double_cuts(const FinCategory& c) {
    std::vector<DoubleCut> out;
    const int n = c.n_objects;
    std::vector<int> level(n, 0);
    while (true) {
        bool ok = true;
        for (MorId f = 0; f < c.n_morphisms() && ok; ++f)
            ok = level[c.src(f)] <= level[c.tgt(f)];
        if (ok) out.push_back(DoubleCut{level});
        int i = n - 1;
        while (i >= 0 && level[i] == 2) level[i--] = 0;
        if (i < 0) break;
        ++level[i];
    }
    return out;
}

Cut cut_from_upper_names(const FinCategory& c, const std::vector<std::string>& names) {
    std::vector<int> side(c.n_objects, 0);
    for (const auto& name : names) {
        ObjId x = -1;
        for (ObjId y = 0; y < c.n_objects; ++y)
            if (c.object_name(y) == name) x = y;
        if (x < 0) throw std::invalid_argument("unknown object in cut: " + name);
        side[x] = 1;
    }
    return Cut::make(c, std::move(side));
}

fincat::Functor cut_functor(const FinCategory& c, const Cut& f, const FinCategory& e) {
    Cut::make(c, f.side);
    if (e.n_objects != 2 || e.n_morphisms() != 3 || e.hom(0, 1).size() != 1 ||
        !e.hom(1, 0).empty())
        throw std::invalid_argument("cut functor target must be the walking arrow");
    MorId step = e.hom(0, 1)[0];
    fincat::Functor out;
    out.obj.resize(c.n_objects);
    for (ObjId x = 0; x < c.n_objects; ++x) out.obj[x] = f.side[x];
    out.mor.resize(c.n_morphisms());
    for (MorId g = 0; g < c.n_morphisms(); ++g) {
        int ls = f.side[c.src(g)], lt = f.side[c.tgt(g)];
        out.mor[g] = ls == lt ? e.identity[ls] : step;
    }
    return out;
}

AxiomReport verify_model_structure(const FinCategory& c, const ModelStructureSpec& m) {
    AxiomReport report;
    for (ObjId x = 0; x < c.n_objects; ++x) {
        MorId id = c.identity[x];
        if (!m.we.contains(id) || !m.cof.contains(id) || !m.fib.contains(id))
            report.identities_ok = false;
    }
    if (!report.identities_ok) return report;

    report.wfs_cof_afib = lifting::verify_wfs(c, m.cof, class_intersection(m.we, m.fib));
    report.wfs_acof_fib = lifting::verify_wfs(c, class_intersection(m.we, m.cof), m.fib);

    for (MorId f = 0; f < c.n_morphisms() && report.two_of_three_ok; ++f) {
        for (MorId g = 0; g < c.n_morphisms() && report.two_of_three_ok; ++g) {
            if (!c.composable(g, f)) continue;
            MorId h = c.compose(g, f);
            int in_we = int(m.we.contains(f)) + int(m.we.contains(g)) + int(m.we.contains(h));
            if (in_we == 2) {
                report.two_of_three_ok = false;
                report.two_of_three_witness = std::make_pair(f, g);
            }
        }
    }

    auto retract = lifting::is_retract_closed(c, m.we);
    report.we_retract_closed = retract.closed;
    report.we_retract_witness = retract.witness;
    return report;
}

ModelStructureSpec build_double_cut_structure(const FinCategory& c, const DoubleCut& f) {
    DoubleCut::make(c, f.level);
    ModelStructureSpec m;
    m.we = iso_class(c);
    m.cof = iso_class(c);
    m.fib = iso_class(c);
    for (MorId g = 0; g < c.n_morphisms(); ++g) {
        int ls = f.level[c.src(g)], lt = f.level[c.tgt(g)];
        if (lt != 0) m.cof.add(g);
        if (ls != 2) m.fib.add(g);
        if (ls == lt && ls != 1) m.we.add(g);
    }
    m.provenance = Provenance::DoubleCut;
    m.labels = f.level;
    return m;
}

ModelStructureSpec build_cut_structure(const FinCategory& c, const Cut& f, Variant variant) {
    Cut::make(c, f.side);
    ModelStructureSpec m;
    m.labels = f.side;
    switch (variant) {
        case Variant::Balanced: {
            m.we = iso_class(c);
            m.cof = iso_class(c);
            m.fib = iso_class(c);
            for (MorId g = 0; g < c.n_morphisms(); ++g) {
                int ls = f.side[c.src(g)], lt = f.side[c.tgt(g)];
                if (lt == 0 || ls == 1) m.we.add(g);
                if (lt == 1) m.cof.add(g);
                if (ls == 0) m.fib.add(g);
            }
            m.provenance = Provenance::BalancedCut;
            break;
        }
        case Variant::Right: {
            m.we = iso_class(c);
            for (MorId g = 0; g < c.n_morphisms(); ++g)
                if (f.side[c.src(g)] == 1 && f.side[c.tgt(g)] == 1) m.we.add(g);
            m.cof = MorphismClass::all(c);
            m.fib = lifting::complement(c, m.we, lifting::Side::Right);
            m.provenance = Provenance::RightCut;
            break;
        }
        case Variant::Left: {
            m.we = iso_class(c);
            for (MorId g = 0; g < c.n_morphisms(); ++g)
                if (f.side[c.src(g)] == 0 && f.side[c.tgt(g)] == 0) m.we.add(g);
            m.fib = MorphismClass::all(c);
            m.cof = lifting::complement(c, m.we, lifting::Side::Left);
            m.provenance = Provenance::LeftCut;
            break;
        }
    }
    return m;
}

PropernessReport check_properness(const FinCategory& c, const ModelStructureSpec& m,
                                  lifting::Side side) {
    PropernessReport report;
    if (side == lifting::Side::Left) {
        // Base change of a weak equivalence along a cofibration with the same
        // source; the pushed-out morphism sits at cocone leg 0.
        for (MorId i : m.cof.ids()) {
            for (MorId w : m.we.ids()) {
                if (c.src(w) != c.src(i)) continue;
                auto d = fincat::span_diagram(c, i, w);
                auto co = fincat::colimit(c, d);
                if (!co) {
                    report.missing.emplace_back(w, i);
                    continue;
                }
                if (!m.we.contains(co->leg[0]) && !report.witness) {
                    report.proper = false;
                    report.witness = PropernessWitness{w, i, *co, co->leg[0]};
                }
            }
        }
    } else {
        for (MorId p : m.fib.ids()) {
            for (MorId w : m.we.ids()) {
                if (c.tgt(w) != c.tgt(p)) continue;
                auto d = fincat::cospan_diagram(c, p, w);
                auto cone = fincat::limit(c, d);
                if (!cone) {
                    report.missing.emplace_back(w, p);
                    continue;
                }
                if (!m.we.contains(cone->leg[0]) && !report.witness) {
                    report.proper = false;
                    report.witness = PropernessWitness{w, p, *cone, cone->leg[0]};
                }
            }
        }
    }
    return report;
}

void validate_adjoint_section(const FinCategory& c, const FinCategory& d,
                              const AdjunctionData& adj) {
    if (!fincat::is_functor(c, d, adj.F)) throw std::invalid_argument("F is not a functor");
    if (!fincat::is_functor(d, c, adj.G)) throw std::invalid_argument("G is not a functor");
    if (static_cast<int>(adj.unit.size()) != c.n_objects)
        throw std::invalid_argument("unit has the wrong number of components");
    if (static_cast<int>(adj.counit.size()) != d.n_objects)
        throw std::invalid_argument("counit has the wrong number of components");

    for (ObjId x = 0; x < c.n_objects; ++x) {
        MorId u = adj.unit[x];
        c.check_morphism(u);
        if (c.src(u) != x || c.tgt(u) != adj.G.obj[adj.F.obj[x]])
            throw std::invalid_argument("unit component at " + c.object_name(x) +
                                        " has wrong endpoints");
    }
    for (ObjId y = 0; y < d.n_objects; ++y) {
        MorId e = adj.counit[y];
        d.check_morphism(e);
        if (d.src(e) != adj.F.obj[adj.G.obj[y]] || d.tgt(e) != y)
            throw std::invalid_argument("counit component at " + d.object_name(y) +
                                        " has wrong endpoints");
        if (!fincat::is_iso(d, e))
            throw std::invalid_argument("counit component at " + d.object_name(y) +
                                        " is not invertible");
    }

    for (MorId f = 0; f < c.n_morphisms(); ++f) {
        MorId lhs = c.compose(adj.G.mor[adj.F.mor[f]], adj.unit[c.src(f)]);
        MorId rhs = c.compose(adj.unit[c.tgt(f)], f);
        if (lhs != rhs)
            throw std::invalid_argument("unit is not natural at " + c.morphism_name(f));
    }
    for (MorId g = 0; g < d.n_morphisms(); ++g) {
        MorId lhs = d.compose(g, adj.counit[d.src(g)]);
        MorId rhs = d.compose(adj.counit[d.tgt(g)], adj.F.mor[adj.G.mor[g]]);
        if (lhs != rhs)
            throw std::invalid_argument("counit is not natural at " + d.morphism_name(g));
    }

    for (ObjId x = 0; x < c.n_objects; ++x) {
        ObjId fx = adj.F.obj[x];
        if (d.compose(adj.counit[fx], adj.F.mor[adj.unit[x]]) != d.identity[fx])
            throw std::invalid_argument("triangle identity fails at object " + c.object_name(x));
    }
    for (ObjId y = 0; y < d.n_objects; ++y) {
        ObjId gy = adj.G.obj[y];
        if (c.compose(adj.G.mor[adj.counit[y]], adj.unit[gy]) != c.identity[gy])
            throw std::invalid_argument("triangle identity fails at object " + d.object_name(y) +
                                        " of the base");
    }
}

std::optional<AdjunctionData> find_adjoint_section(const FinCategory& c, const FinCategory& d,
                                                   const fincat::Functor& f) {
    if (!fincat::is_functor(c, d, f)) throw std::invalid_argument("F is not a functor");

    std::vector<ObjId> gobj(d.n_objects, 0);
    auto try_gobj = [&](auto&& self, int y) -> std::optional<AdjunctionData> {
        if (y == d.n_objects) {
            fincat::Functor g;
            g.obj = gobj;
            g.mor.assign(d.n_morphisms(), -1);
            for (ObjId z = 0; z < d.n_objects; ++z) g.mor[d.identity[z]] = c.identity[gobj[z]];
            std::vector<MorId> free;
            for (MorId p = 0; p < d.n_morphisms(); ++p)
                if (!d.is_identity(p)) free.push_back(p);

            auto assign_mor = [&](auto&& rec, size_t k) -> std::optional<AdjunctionData> {
                if (k == free.size()) {
                    if (!fincat::is_functor(d, c, g)) return std::nullopt;
                    // unit and counit components, outer odometer over objects of C
                    // then of D, searched in ascending morphism order.
                    std::vector<std::vector<MorId>> unit_cands(c.n_objects), counit_cands(
                                                                                 d.n_objects);
                    for (ObjId x = 0; x < c.n_objects; ++x) {
                        unit_cands[x] = c.hom(x, g.obj[f.obj[x]]);
                        if (unit_cands[x].empty()) return std::nullopt;
                    }
                    for (ObjId z = 0; z < d.n_objects; ++z) {
                        for (MorId e : d.hom(f.obj[g.obj[z]], z))
                            if (fincat::is_iso(d, e)) counit_cands[z].push_back(e);
                        if (counit_cands[z].empty()) return std::nullopt;
                    }
                    AdjunctionData adj;
                    adj.F = f;
                    adj.G = g;
                    adj.unit.assign(c.n_objects, 0);
                    adj.counit.assign(d.n_objects, 0);
                    std::vector<size_t> pick(c.n_objects + d.n_objects, 0);
                    while (true) {
                        for (ObjId x = 0; x < c.n_objects; ++x) adj.unit[x] = unit_cands[x][pick[x]];
                        for (ObjId z = 0; z < d.n_objects; ++z)
                            adj.counit[z] = counit_cands[z][pick[c.n_objects + z]];
                        try {
                            validate_adjoint_section(c, d, adj);
                            return adj;
                        } catch (const std::invalid_argument&) {
                        }
                        size_t i = 0;
                        for (; i < pick.size(); ++i) {
                            size_t limit = i < static_cast<size_t>(c.n_objects)
                                               ? unit_cands[i].size()
                                               : counit_cands[i - c.n_objects].size();
                            if (++pick[i] < limit) break;
                            pick[i] = 0;
                        }
                        if (i == pick.size()) break;
                    }
                    return std::nullopt;
                }
                MorId p = free[k];
                for (MorId cand : c.hom(g.obj[d.src(p)], g.obj[d.tgt(p)])) {
                    g.mor[p] = cand;
                    if (auto found = rec(rec, k + 1)) return found;
                }
                g.mor[p] = -1;
                return std::nullopt;
            };
            return assign_mor(assign_mor, 0);
        }
        for (ObjId x = 0; x < c.n_objects; ++x) {
            gobj[y] = x;
            if (auto found = self(self, y + 1)) return found;
        }
        return std::nullopt;
    };
    return try_gobj(try_gobj, 0);
}

AdjointReport adjoint_section_structure(const FinCategory& c, const FinCategory& d,
                                        const AdjunctionData& adj) {
    validate_adjoint_section(c, d, adj);

    AdjointReport report;
    ModelStructureSpec& m = report.structure;
    m.we = MorphismClass::none(c);
    for (MorId f = 0; f < c.n_morphisms(); ++f)
        if (fincat::is_iso(d, adj.F.mor[f])) m.we.add(f);
    m.cof = MorphismClass::all(c);
    m.fib = lifting::complement(c, m.we, lifting::Side::Right);
    m.provenance = Provenance::AdjointSection;

    // (a) base change of a weak equivalence along any morphism in the image
    // of G stays a weak equivalence, wherever the pullback exists.
    report.condition_a = true;
    for (MorId w : m.we.ids()) {
        for (MorId p = 0; p < d.n_morphisms() && report.condition_a; ++p) {
            MorId gp = adj.G.mor[p];
            if (c.tgt(gp) != c.tgt(w)) continue;
            auto cone = fincat::limit(c, fincat::cospan_diagram(c, gp, w));
            if (cone && !m.we.contains(cone->leg[0])) report.condition_a = false;
        }
    }

    // (b) the comparison into the pullback of the unit against GF(f) is a
    // weak equivalence for every morphism f.
    report.d_preorder = fincat::is_preorder(d);
    bool all_ok = true, any_missing = false;
    for (MorId f = 0; f < c.n_morphisms() && all_ok; ++f) {
        ObjId x = c.src(f), y = c.tgt(f);
        MorId gff = adj.G.mor[adj.F.mor[f]];
        auto cone = fincat::limit(c, fincat::cospan_diagram(c, adj.unit[y], gff));
        if (!cone) {
            any_missing = true;
            continue;
        }
        bool found = false;
        for (MorId h : c.hom(x, cone->apex)) {
            if (c.compose(cone->leg[0], h) == f && c.compose(cone->leg[1], h) == adj.unit[x]) {
                found = m.we.contains(h);
                break;
            }
        }
        all_ok = found;
    }
    report.condition_b = all_ok && (!any_missing || report.d_preorder);
    return report;
}

CompareReport compare_structures(const FinCategory& c, const ModelStructureSpec& m1,
                                 const ModelStructureSpec& m2) {
    CompareReport report;
    report.we_equal = (m1.we == m2.we);

    auto is_cut_labeling = [&](const ModelStructureSpec& m) {
        return static_cast<int>(m.labels.size()) == c.n_objects &&
               std::all_of(m.labels.begin(), m.labels.end(), [](int s) { return s == 0 || s == 1; });
    };
    if (is_cut_labeling(m1) && is_cut_labeling(m2)) {
        auto lower_of = [&](const ModelStructureSpec& m) {
            std::vector<ObjId> objs;
            for (ObjId x = 0; x < c.n_objects; ++x)
                if (m.labels[x] == 0) objs.push_back(x);
            return fincat::full_subcategory(c, objs);
        };
        report.lower_equivalent =
            fincat::equivalent_categories(lower_of(m1).cat, lower_of(m2).cat);
    }
    return report;
}

}  // namespace modelkit::modelstruct
