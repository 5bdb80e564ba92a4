#pragma once

#include "modelkit/fincat.hpp"

#include <optional>
#include <string>
#include <vector>

// Truncated semi-simplicial sets: finitely many simplices per level up to a
// mandatory truncation ceiling N, with face maps as dense tables. Dimension,
// the one-simplex-per-level objects D_n, the factorization through the
// dimension reflection, and dimension-cut classifications live here.

namespace modelkit::semisimp {

// count[k] is the number of k-simplices, face[k][x][i] the i-th face of
// simplex x at level k (face[0] entries are empty). make() validates shape,
// ranges, and the identities d_i d_j = d_{j-1} d_i for i < j.
struct SemiSimplicialSet {
    int truncation = 0;
    std::vector<int> count;
    std::vector<std::vector<std::vector<int>>> face;

    static SemiSimplicialSet make(int truncation, std::vector<int> count,
                                  std::vector<std::vector<std::vector<int>>> face);
};

bool operator==(const SemiSimplicialSet& a, const SemiSimplicialSet& b);
bool operator!=(const SemiSimplicialSet& a, const SemiSimplicialSet& b);

struct SssReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Structural check that never throws; make() is the throwing variant.
SssReport validate_sss(const SemiSimplicialSet& x);

// Smallest n with no simplices above level n; 0 for the empty object. When
// the ceiling level is populated the true dimension may exceed the
// truncation, which at_ceiling records.
struct Dimension {
    int value = 0;
    bool at_ceiling = false;
};

bool operator==(const Dimension& a, const Dimension& b);
Dimension dimension(const SemiSimplicialSet& x);

// One simplex at every level up to n, nothing above. Rejects n > truncation.
SemiSimplicialSet standard_D(int n, int truncation);
SemiSimplicialSet empty_sss(int truncation);
// 3 vertices and the 3 edges between them, padded to the given ceiling.
SemiSimplicialSet triangle_boundary(int truncation);

// Levelwise functions; valid when every naturality square with a face map
// commutes. Composition is levelwise.
struct SssMap {
    std::vector<std::vector<int>> level;
};

bool operator==(const SssMap& a, const SssMap& b);

bool is_sss_map(const SemiSimplicialSet& x, const SemiSimplicialSet& y, const SssMap& f);
SssMap identity_sss_map(const SemiSimplicialSet& x);
SssMap compose(const SssMap& g, const SssMap& f);
bool is_levelwise_injective(const SssMap& f);
bool is_levelwise_bijective(const SemiSimplicialSet& x, const SemiSimplicialSet& y,
                            const SssMap& f);

// Exhaustive enumeration, levels bottom-up with face-compatibility pruning,
// in lexicographic order. Sizes are expected to be small.
std::vector<SssMap> all_sss_maps(const SemiSimplicialSet& x, const SemiSimplicialSet& y);
bool sss_map_exists(const SemiSimplicialSet& x, const SemiSimplicialSet& y);

// The unique map into D_{dim X}.
struct UnitMap {
    SemiSimplicialSet target;
    SssMap map;
};

UnitMap unit_map(const SemiSimplicialSet& x);

// f = onto_target . into_mid with mid the target cut off above dim X, which
// is the levelwise pullback of Y over its dimension reflection.
// reflection_identity records that mid and X have equal dimension value, so
// the reflection sends into_mid to an identity.
struct AdjointFactorization {
    SemiSimplicialSet mid;
    SssMap into_mid;
    SssMap onto_target;
    bool reflection_identity = false;
};

AdjointFactorization adjoint_factorize(const SemiSimplicialSet& x,
                                       const SemiSimplicialSet& y, const SssMap& f);

enum class DimCutVariant { Balanced, Right, Left };

// Membership formulas for the two-sided split at dimension n: low side
// dim <= n, high side dim > n. The balanced variant decides all three
// classes; the right variant leaves fib, and the left variant cof, decided
// only when an isomorphism forces it. ceiling_ambiguous is set when n
// reaches the truncation and an endpoint sits at the ceiling, where the
// truncated dimension cannot be trusted.
struct DimCutFlags {
    bool we = false;
    std::optional<bool> cof;
    std::optional<bool> fib;
    bool ceiling_ambiguous = false;
};

DimCutFlags classify_dim_cut(const SemiSimplicialSet& x, const SemiSimplicialSet& y,
                             const SssMap& f, int n, DimCutVariant variant);

// Levelwise (co)limits over diagrams of at most 4 nodes sharing a ceiling.
// truncation is consulted only for the empty diagram, whose nodes cannot
// supply one; the limit is then the terminal object D_truncation and the
// colimit the empty object.
struct SssDiagram {
    struct Arrow {
        int from = 0;
        int to = 0;
        SssMap via;
    };
    std::vector<SemiSimplicialSet> node;
    std::vector<Arrow> arrow;
    int truncation = 0;
};

struct SssCone {
    SemiSimplicialSet apex;
    std::vector<SssMap> leg;
};

SssCone sss_limit(const SssDiagram& d);
SssCone sss_colimit(const SssDiagram& d);

// The finite category whose objects are the given complexes and whose
// morphisms are every map between them, with composition by table. Feeds
// the categorical toolbox (monic chains in particular).
fincat::FinCategory sss_hom_category(const std::vector<SemiSimplicialSet>& objects,
                                     std::vector<std::string> names);

}  // namespace modelkit::semisimp
