#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modelkit/fincat.hpp"
#include "modelkit/lifting.hpp"

namespace modelkit::modelstruct {

using fincat::FinCategory;
using fincat::MorId;
using fincat::ObjId;
using lifting::MorphismClass;

enum class Provenance { Manual, DoubleCut, BalancedCut, RightCut, LeftCut, AdjointSection };

struct ModelStructureSpec {
    MorphismClass we, cof, fib;
    Provenance provenance = Provenance::Manual;
    // Object labeling when the structure came from a cut (0/1) or a double
    // cut (0/1/2); empty for manual and adjoint structures.
    std::vector<int> labels;
};

// Object partition into a downward side (0) and an upward side (1); valid
// when no morphism runs from side 1 to side 0.
struct Cut {
    std::vector<int> side;

    static Cut make(const FinCategory& c, std::vector<int> side);
    bool trivial() const;
    std::vector<ObjId> lower() const;  // side 0
    std::vector<ObjId> upper() const;  // side 1
};

// Monotone three-level labeling (0, 1, 2): no morphism decreases the level.
struct DoubleCut {
    std::vector<int> level;

    static DoubleCut make(const FinCategory& c, std::vector<int> level);
};

std::vector<Cut> all_cuts(const FinCategory& c);
std::vector<DoubleCut> all_double_cuts(const FinCategory& c);
Cut cut_from_upper_names(const FinCategory& c, const std::vector<std::string>& names);

// The two-valued labeling functor a cut induces; e must be a walking arrow
// (two objects, one non-identity morphism from object 0 to object 1).
fincat::Functor cut_functor(const FinCategory& c, const Cut& f, const FinCategory& e);

struct AxiomReport {
    bool identities_ok = true;
    lifting::WfsReport wfs_cof_afib;  // (cof, we n fib)
    lifting::WfsReport wfs_acof_fib;  // (we n cof, fib)
    bool two_of_three_ok = true;
    std::optional<std::pair<MorId, MorId>> two_of_three_witness;  // composable (f, g)
    bool we_retract_closed = true;
    std::optional<lifting::RetractWitness> we_retract_witness;

    bool ok() const {
        return identities_ok && wfs_cof_afib.ok() && wfs_acof_fib.ok() && two_of_three_ok &&
               we_retract_closed;
    }
};

AxiomReport verify_model_structure(const FinCategory& c, const ModelStructureSpec& m);

ModelStructureSpec build_double_cut_structure(const FinCategory& c, const DoubleCut& f);

enum class Variant { Balanced, Right, Left };

ModelStructureSpec build_cut_structure(const FinCategory& c, const Cut& f, Variant variant);

struct PropernessWitness {
    MorId we_leg;     // the weak equivalence being pushed out / pulled back
    MorId other_leg;  // the cofibration (left) or fibration (right)
    fincat::Cone square;
    MorId comparison;  // base-changed morphism that fails to be a we
};

struct PropernessReport {
    bool proper = true;
    std::optional<PropernessWitness> witness;
    // (we_leg, other_leg) instances whose pushout/pullback is missing in C.
    std::vector<std::pair<MorId, MorId>> missing;
};

PropernessReport check_properness(const FinCategory& c, const ModelStructureSpec& m,
                                  lifting::Side side);

struct AdjunctionData {
    fincat::Functor F;            // C -> D
    fincat::Functor G;            // D -> C
    std::vector<MorId> unit;      // components 1_C => GF, indexed by objects of C
    std::vector<MorId> counit;    // components FG => 1_D, indexed by objects of D
};

// Validates functors, naturality, triangle identities, and that the counit
// is a natural isomorphism; throws std::invalid_argument naming the failing
// component otherwise.
void validate_adjoint_section(const FinCategory& c, const FinCategory& d,
                              const AdjunctionData& adj);

// Exhaustive search for a right adjoint section of F; absence is exhaustive.
std::optional<AdjunctionData> find_adjoint_section(const FinCategory& c, const FinCategory& d,
                                                   const fincat::Functor& f);

struct AdjointReport {
    ModelStructureSpec structure;
    bool condition_a = false;
    bool condition_b = false;
    bool d_preorder = false;
    // The construction does not decide right properness; this stays "unknown".
    std::string right_properness = "unknown";
};

AdjointReport adjoint_section_structure(const FinCategory& c, const FinCategory& d,
                                        const AdjunctionData& adj);

struct CompareReport {
    bool we_equal = false;
    // Present when both structures carry cut labelings: whether the two
    // lower subcategories are equivalent.
    std::optional<bool> lower_equivalent;

    bool distinct() const {
        return !we_equal || (lower_equivalent.has_value() && !*lower_equivalent);
    }
};

CompareReport compare_structures(const FinCategory& c, const ModelStructureSpec& m1,
                                 const ModelStructureSpec& m2);

}  // namespace modelkit::modelstruct
