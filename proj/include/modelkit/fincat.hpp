#pragma once

#include <optional>
#include <string>
#include <vector>

namespace modelkit::fincat {

using ObjId = int;
using MorId = int;
inline constexpr int kNone = -1;

struct Morphism {
    ObjId src = kNone;
    ObjId tgt = kNone;
};

// A finite category as explicit tables. Objects and morphisms are dense
// integer ids; display names live in the sidecar label vectors and never
// affect semantics. compose[g][f] is g∘f, kNone where target(f) != source(g).
struct FinCategory {
    int n_objects = 0;
    std::vector<Morphism> mor;
    std::vector<MorId> identity;               // object -> identity morphism
    std::vector<std::vector<MorId>> compose_table;
    std::vector<std::string> object_names;     // optional sidecar
    std::vector<std::string> morphism_names;   // optional sidecar

    int n_morphisms() const { return static_cast<int>(mor.size()); }
    ObjId src(MorId f) const { return mor[f].src; }
    ObjId tgt(MorId f) const { return mor[f].tgt; }
    MorId id(ObjId x) const { return identity[x]; }
    bool is_identity(MorId f) const;
    bool composable(MorId g, MorId f) const { return mor[f].tgt == mor[g].src; }
    // g∘f, kNone when not composable.
    MorId compose(MorId g, MorId f) const { return compose_table[g][f]; }
    std::vector<MorId> hom(ObjId x, ObjId y) const;

    std::string object_name(ObjId x) const;
    std::string morphism_name(MorId f) const;
    void check_morphism(MorId f) const;  // throws std::invalid_argument
    void check_object(ObjId x) const;
};

struct Violation {
    enum Kind {
        BadEndpoints,       // table entry endpoints mismatch composed pair
        MissingComposite,   // composable pair without a table entry
        SpuriousComposite,  // entry for a non-composable pair
        BadIdentity,        // identity table broken
        IdentityLaw,
        Associativity,
    };
    Kind kind;
    MorId f = kNone, g = kNone, h = kNone;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_category(const FinCategory& c);

struct MorphismFlags {
    bool mono = false, epi = false, iso = false, retraction = false, section = false;
};

// All flags decided by exhaustive quantification over the morphism table.
MorphismFlags classify_morphism(const FinCategory& c, MorId f);
bool is_iso(const FinCategory& c, MorId f);
// Inverse of an iso, kNone if f is not invertible.
MorId inverse(const FinCategory& c, MorId f);

// ---- diagrams, limits, colimits ----

struct Diagram {
    std::vector<ObjId> node;
    struct Arrow {
        int from = 0, to = 0;  // node indices
        MorId via = kNone;
    };
    std::vector<Arrow> arrow;
};

// Most nodes any diagram may have; larger diagrams are rejected. Everything
// the verification pipeline needs (pullbacks, pushouts, binary (co)products,
// equalizer-style cones) fits in four nodes.
inline constexpr int kMaxDiagramNodes = 4;

void check_diagram(const FinCategory& c, const Diagram& d);

struct Cone {
    ObjId apex = kNone;
    std::vector<MorId> leg;  // limit: leg[i]: apex -> node[i]; colimit: node[i] -> apex
};

bool is_cone(const FinCategory& c, const Diagram& d, const Cone& cone);
bool is_cocone(const FinCategory& c, const Diagram& d, const Cone& cone);
bool is_limiting_cone(const FinCategory& c, const Diagram& d, const Cone& cone);
bool is_colimiting_cone(const FinCategory& c, const Diagram& d, const Cone& cone);

// Exhaustive search; absence is a value. Chooser: lowest apex id, then
// lexicographically smallest legs.
std::optional<Cone> limit(const FinCategory& c, const Diagram& d);
std::optional<Cone> colimit(const FinCategory& c, const Diagram& d);

std::optional<ObjId> initial_object(const FinCategory& c);
std::optional<ObjId> terminal_object(const FinCategory& c);

Diagram discrete_pair_diagram(ObjId a, ObjId b);
Diagram cospan_diagram(const FinCategory& c, MorId f, MorId g);  // tgt(f) == tgt(g)
Diagram span_diagram(const FinCategory& c, MorId f, MorId g);    // src(f) == src(g)

// ---- functors and natural transformations ----

struct Functor {
    std::vector<ObjId> obj;  // indexed by source-category object id
    std::vector<MorId> mor;  // indexed by source-category morphism id
};

bool is_functor(const FinCategory& c, const FinCategory& d, const Functor& F,
                std::string* why = nullptr);
Functor identity_functor(const FinCategory& c);
Functor compose_functors(const Functor& g, const Functor& f);  // g∘f

// eta[x]: F(x) -> G(x) in d; naturality checked over every morphism of c.
bool is_natural(const FinCategory& c, const FinCategory& d, const Functor& F,
                const Functor& G, const std::vector<MorId>& eta, std::string* why = nullptr);

// ---- subcategories, skeletons, equivalence ----

struct Subcategory {
    FinCategory cat;
    std::vector<ObjId> obj_in_parent;
    std::vector<MorId> mor_in_parent;
};

Subcategory full_subcategory(const FinCategory& c, const std::vector<ObjId>& objs);
Subcategory skeleton(const FinCategory& c);

// Exhaustive search for an invertible functor (bijective on objects and
// morphisms, composition-preserving).
bool is_isomorphic(const FinCategory& c, const FinCategory& d);
// Finite categories are equivalent iff their skeletons are isomorphic.
bool equivalent_categories(const FinCategory& c, const FinCategory& d);

// ---- preorder reflection ----

struct PreorderReflection {
    FinCategory preorder;       // every hom-set has size <= 1
    std::vector<ObjId> cls;     // object of C -> object of P(C)
    Functor to_preorder;        // the canonical functor
};

PreorderReflection preorder_reflection(const FinCategory& c);
bool is_preorder(const FinCategory& c);

// ---- monic length ----

// Maximum number of noninvertible monomorphisms in a chain ending at the
// terminal object; absent when the category has no terminal object.
std::optional<int> monic_length(const FinCategory& c);

// ---- coproduct splitting / disjointness ----

struct CoproductPair {
    ObjId a = kNone, b = kNone;
    ObjId sum = kNone;
    MorId i1 = kNone, i2 = kNone;
};

struct SplitDecomposition {
    ObjId left = kNone, right = kNone;  // X_L, X_R
    CoproductPair lr;                   // chosen coproduct of (left, right)
    MorId iso = kNone;                  // X_L ⊔ X_R -> X
    MorId f_left = kNone;               // X_L -> A
    MorId f_right = kNone;              // X_R -> B
};

struct SplitFailure {
    CoproductPair pair;
    MorId f = kNone;  // morphism into pair.sum admitting no decomposition
};

struct DisjointFailure {
    CoproductPair pair;
    // 0: i1 not monic; 1: i2 not monic; 2..4: square k-2 is not a pullback
    // (squares: (i1,i1) over A, (i1,i2) over initial, (i2,i2) over B);
    // 5: no initial object.
    int which = 0;
    std::optional<Cone> actual_limit;  // what the cospan's limit really is
};

struct CoproductReport {
    bool all_pairs_exist = false;
    std::vector<CoproductPair> pairs;  // ordered pairs a <= b
    std::vector<std::pair<ObjId, ObjId>> missing;
    bool has_initial = false;
    ObjId initial = kNone;
    bool splitting = false;
    std::optional<SplitFailure> split_failure;
    bool disjoint = false;
    std::optional<DisjointFailure> disjoint_failure;
};

CoproductReport coproduct_properties(const FinCategory& c);

// Replay helper: search the decomposition of f through the chosen coproduct
// cocone. Used both by coproduct_properties and by witness-replaying tests.
std::optional<SplitDecomposition> split_morphism(const FinCategory& c,
                                                 const CoproductPair& pair, MorId f);

}  // namespace modelkit::fincat
