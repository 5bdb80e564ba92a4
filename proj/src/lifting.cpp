#include "modelkit/lifting.hpp"

#include <stdexcept>

namespace modelkit::lifting {

LiftingSquare LiftingSquare::make(const FinCategory& c, MorId f, MorId g, MorId top, MorId bottom) {
    c.check_morphism(f);
    c.check_morphism(g);
    c.check_morphism(top);
    c.check_morphism(bottom);
    if (c.src(top) != c.src(f) || c.tgt(top) != c.src(g) || c.src(bottom) != c.tgt(f) ||
        c.tgt(bottom) != c.tgt(g))
        throw std::invalid_argument("square edges do not share endpoints");
    if (c.compose(g, top) != c.compose(bottom, f))
        throw std::invalid_argument("square does not commute");
    return {f, g, top, bottom};
}

int MorphismClass::size() const {
    int n = 0;
    for (bool b : member) n += b;
    return n;
}

std::vector<MorId> MorphismClass::ids() const {
    std::vector<MorId> out;
    for (MorId f = 0; f < static_cast<int>(member.size()); ++f)
        if (member[f]) out.push_back(f);
    return out;
}

MorphismClass MorphismClass::none(const FinCategory& c) {
    return {std::vector<bool>(c.n_morphisms(), false)};
}

MorphismClass MorphismClass::all(const FinCategory& c) {
    return {std::vector<bool>(c.n_morphisms(), true)};
}

MorphismClass MorphismClass::isos(const FinCategory& c) {
    MorphismClass s = none(c);
    for (MorId f = 0; f < c.n_morphisms(); ++f)
        if (fincat::is_iso(c, f)) s.member[f] = true;
    return s;
}

MorphismClass MorphismClass::of(const FinCategory& c, const std::vector<MorId>& members) {
    MorphismClass s = none(c);
    for (MorId f : members) {
        c.check_morphism(f);
        s.member[f] = true;
    }
    return s;
}

bool operator==(const MorphismClass& a, const MorphismClass& b) { return a.member == b.member; }

bool subset_of(const MorphismClass& a, const MorphismClass& b) {
    for (std::size_t i = 0; i < a.member.size(); ++i)
        if (a.member[i] && !(i < b.member.size() && b.member[i])) return false;
    return true;
}

MorphismClass class_union(const MorphismClass& a, const MorphismClass& b) {
    MorphismClass out = a;
    for (std::size_t i = 0; i < out.member.size(); ++i)
        if (b.member[i]) out.member[i] = true;
    return out;
}

MorphismClass class_intersection(const MorphismClass& a, const MorphismClass& b) {
    MorphismClass out = a;
    for (std::size_t i = 0; i < out.member.size(); ++i)
        if (!b.member[i]) out.member[i] = false;
    return out;
}

std::optional<MorId> solve_lifting(const FinCategory& c, const LiftingSquare& sq) {
    for (MorId h : c.hom(c.tgt(sq.f), c.src(sq.g)))
        if (c.compose(h, sq.f) == sq.top && c.compose(sq.g, h) == sq.bottom) return h;
    return std::nullopt;
}

namespace {

template <typename Fn>
bool for_each_square(const FinCategory& c, MorId f, MorId g, Fn&& fn) {
    for (MorId top : c.hom(c.src(f), c.src(g)))
        for (MorId bottom : c.hom(c.tgt(f), c.tgt(g))) {
            if (c.compose(g, top) != c.compose(bottom, f)) continue;
            if (!fn(LiftingSquare{f, g, top, bottom})) return false;
        }
    return true;
}

}  // namespace

bool has_lifting(const FinCategory& c, MorId f, MorId g) {
    return for_each_square(c, f, g,
                           [&](const LiftingSquare& sq) { return solve_lifting(c, sq).has_value(); });
}

std::optional<LiftingSquare> first_unliftable_square(const FinCategory& c, MorId f, MorId g) {
    std::optional<LiftingSquare> found;
    for_each_square(c, f, g, [&](const LiftingSquare& sq) {
        if (!solve_lifting(c, sq)) {
            found = sq;
            return false;
        }
        return true;
    });
    return found;
}

MorphismClass complement(const FinCategory& c, const MorphismClass& s, Side side) {
    MorphismClass out = MorphismClass::all(c);
    const auto members = s.ids();
    for (MorId cand = 0; cand < c.n_morphisms(); ++cand)
        for (MorId m : members) {
            bool ok = side == Side::Right ? has_lifting(c, m, cand) : has_lifting(c, cand, m);
            if (!ok) {
                out.member[cand] = false;
                break;
            }
        }
    return out;
}

bool retract_witness_holds(const FinCategory& c, const RetractWitness& w) {
    const auto& [inner, outer, i, j, r, s] = w;
    if (c.src(i) != c.src(inner) || c.tgt(i) != c.src(outer)) return false;
    if (c.src(j) != c.tgt(inner) || c.tgt(j) != c.tgt(outer)) return false;
    if (c.src(r) != c.src(outer) || c.tgt(r) != c.src(inner)) return false;
    if (c.src(s) != c.tgt(outer) || c.tgt(s) != c.tgt(inner)) return false;
    return c.compose(outer, i) == c.compose(j, inner) &&
           c.compose(inner, r) == c.compose(s, outer) &&
           c.is_identity(c.compose(r, i)) && c.is_identity(c.compose(s, j));
}

RetractReport is_retract_closed(const FinCategory& c, const MorphismClass& cls) {
    for (MorId inner = 0; inner < c.n_morphisms(); ++inner) {
        if (cls.contains(inner)) continue;
        for (MorId outer : cls.ids()) {
            for (MorId i : c.hom(c.src(inner), c.src(outer))) {
                for (MorId r : c.hom(c.src(outer), c.src(inner))) {
                    if (!c.is_identity(c.compose(r, i))) continue;
                    for (MorId j : c.hom(c.tgt(inner), c.tgt(outer))) {
                        if (c.compose(outer, i) != c.compose(j, inner)) continue;
                        for (MorId s : c.hom(c.tgt(outer), c.tgt(inner))) {
                            if (!c.is_identity(c.compose(s, j))) continue;
                            if (c.compose(inner, r) != c.compose(s, outer)) continue;
                            return {false, RetractWitness{inner, outer, i, j, r, s}};
                        }
                    }
                }
            }
        }
    }
    return {true, std::nullopt};
}

std::optional<Factorization> factorize_through(const FinCategory& c, MorId f,
                                               const MorphismClass& left,
                                               const MorphismClass& right) {
    c.check_morphism(f);
    for (MorId l = 0; l < c.n_morphisms(); ++l) {
        if (!left.contains(l) || c.src(l) != c.src(f)) continue;
        for (MorId r : c.hom(c.tgt(l), c.tgt(f)))
            if (right.contains(r) && c.compose(r, l) == f) return Factorization{l, r};
    }
    return std::nullopt;
}

WfsReport verify_wfs(const FinCategory& c, const MorphismClass& left, const MorphismClass& right) {
    WfsReport rep;

    for (MorId f : left.ids()) {
        for (MorId g : right.ids()) {
            if (auto sq = first_unliftable_square(c, f, g)) {
                rep.lifting_ok = false;
                rep.failing_square = sq;
                break;
            }
        }
        if (!rep.lifting_ok) break;
    }

    for (MorId f = 0; f < c.n_morphisms(); ++f) {
        if (!factorize_through(c, f, left, right)) {
            rep.factorization_ok = false;
            rep.unfactorable = f;
            break;
        }
    }

    auto lrep = is_retract_closed(c, left);
    if (!lrep.closed) {
        rep.retract_closed_ok = false;
        rep.retract_witness = lrep.witness;
        rep.retract_witness_side = Side::Left;
    } else {
        auto rrep = is_retract_closed(c, right);
        if (!rrep.closed) {
            rep.retract_closed_ok = false;
            rep.retract_witness = rrep.witness;
            rep.retract_witness_side = Side::Right;
        }
    }

    rep.maximal_left = complement(c, right, Side::Left) == left;
    rep.maximal_right = complement(c, left, Side::Right) == right;
    return rep;
}

}  // namespace modelkit::lifting
