#pragma once

#include <optional>
#include <vector>

#include "modelkit/fincat.hpp"

namespace modelkit::lifting {

using fincat::FinCategory;
using fincat::MorId;

// A commuting square with f on the left edge and g on the right edge.
// Commutativity (g . top = bottom . f) is enforced by make().
struct LiftingSquare {
    MorId f = fincat::kNone;
    MorId g = fincat::kNone;
    MorId top = fincat::kNone;
    MorId bottom = fincat::kNone;

    static LiftingSquare make(const FinCategory& c, MorId f, MorId g, MorId top, MorId bottom);
};

// A subset of a category's morphisms, stored positionally.
struct MorphismClass {
    std::vector<bool> member;

    bool contains(MorId f) const {
        return f >= 0 && f < static_cast<int>(member.size()) && member[f];
    }
    void add(MorId f) { member[f] = true; }
    void remove(MorId f) { member[f] = false; }
    int size() const;
    std::vector<MorId> ids() const;

    static MorphismClass none(const FinCategory& c);
    static MorphismClass all(const FinCategory& c);
    static MorphismClass isos(const FinCategory& c);
    static MorphismClass of(const FinCategory& c, const std::vector<MorId>& members);
};

bool operator==(const MorphismClass& a, const MorphismClass& b);
bool subset_of(const MorphismClass& a, const MorphismClass& b);
MorphismClass class_union(const MorphismClass& a, const MorphismClass& b);
MorphismClass class_intersection(const MorphismClass& a, const MorphismClass& b);

// Diagonal for one concrete square, or absence.
std::optional<MorId> solve_lifting(const FinCategory& c, const LiftingSquare& sq);

// f lifts against g in every commuting square (the relation written f [] g).
bool has_lifting(const FinCategory& c, MorId f, MorId g);

// First commuting square with left edge f and right edge g that admits no
// diagonal, in (top, bottom) id order.
std::optional<LiftingSquare> first_unliftable_square(const FinCategory& c, MorId f, MorId g);

enum class Side { Left, Right };

// Left: all f lifting against every member of S. Right: all g every member
// of S lifts against.
MorphismClass complement(const FinCategory& c, const MorphismClass& s, Side side);

// inner is exhibited as a retract of outer in the arrow category:
//   outer . i = j . inner      inner . r = s . outer
//   r . i = id                 s . j = id
struct RetractWitness {
    MorId inner, outer;
    MorId i, j, r, s;
};

struct RetractReport {
    bool closed = true;
    std::optional<RetractWitness> witness;  // outer in S, inner outside S
};

RetractReport is_retract_closed(const FinCategory& c, const MorphismClass& s);

// Replays a claimed witness against the category.
bool retract_witness_holds(const FinCategory& c, const RetractWitness& w);

struct Factorization {
    MorId l, r;  // r . l = the factored morphism
};

std::optional<Factorization> factorize_through(const FinCategory& c, MorId f,
                                               const MorphismClass& left,
                                               const MorphismClass& right);

struct WfsReport {
    bool lifting_ok = true;
    bool factorization_ok = true;
    bool retract_closed_ok = true;
    std::optional<LiftingSquare> failing_square;
    std::optional<MorId> unfactorable;
    std::optional<RetractWitness> retract_witness;
    Side retract_witness_side = Side::Left;

    // Reported in addition to the sufficient conditions above: whether each
    // class is exactly the complement of the other.
    bool maximal_left = false;
    bool maximal_right = false;

    bool ok() const { return lifting_ok && factorization_ok && retract_closed_ok; }
};

WfsReport verify_wfs(const FinCategory& c, const MorphismClass& left, const MorphismClass& right);

}  // namespace modelkit::lifting
