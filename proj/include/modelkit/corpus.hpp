#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modelkit/fincat.hpp"

namespace modelkit::corpus {

// Builds the poset category on n objects from its order relation.
// leq[x][y] must be reflexive, transitive and antisymmetric; there is one
// morphism x -> y exactly when leq[x][y].
fincat::FinCategory poset_category(int n, const std::vector<std::vector<bool>>& leq,
                                   std::vector<std::string> names = {});

// Skeleton of finite sets restricted to the given cardinalities; morphisms are
// all functions, composition is function composition.
fincat::FinCategory finset_skeleton(const std::vector<int>& sizes);

fincat::FinCategory E();        // two-object arrow poset 0 < *
fincat::FinCategory E_prime();  // three-object chain 0 < E < *
fincat::FinCategory LAT4();     // diamond lattice X < A,B < *
fincat::FinCategory LAT5();     // bottom X, atoms A,B,C, top *
fincat::FinCategory SQ();       // commuting square poset 0 < A,B < *
fincat::FinCategory HEX();      // free category on 0->A->B->*, 0->C->D->*
fincat::FinCategory PAR();      // two parallel arrows A => B
fincat::FinCategory RET();      // generated by r: A->B, s: B->A, rs = 1_B
fincat::FinCategory FINSET3();  // sets of sizes 0, 1, 2 and all functions

fincat::FinCategory chain(int n);    // total order 0 < 1 < ... < n
fincat::FinCategory d_chain(int n);  // chain 0 < D0 < D1 < ... < Dn

// All posets on up to max_elements elements, one per isomorphism class,
// in a deterministic order (element count, then canonical relation code).
std::vector<fincat::FinCategory> all_posets(int max_elements);

const std::vector<std::string>& category_names();
std::optional<fincat::FinCategory> category_by_name(const std::string& name);

}  // namespace modelkit::corpus
