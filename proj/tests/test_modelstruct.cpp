#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "modelkit/corpus.hpp"
#include "modelkit/modelstruct.hpp"

using namespace modelkit;
using namespace modelkit::modelstruct;
using lifting::MorphismClass;
using lifting::Side;

namespace {

fincat::FinCategory by_name(const std::string& name) {
    auto c = corpus::category_by_name(name);
    REQUIRE(c.has_value());
    return *c;
}

fincat::MorId arrow(const fincat::FinCategory& c, const std::string& from,
                    const std::string& to) {
    fincat::ObjId x = -1, y = -1;
    for (fincat::ObjId o = 0; o < c.n_objects; ++o) {
        if (c.object_name(o) == from) x = o;
        if (c.object_name(o) == to) y = o;
    }
    REQUIRE(x >= 0);
    REQUIRE(y >= 0);
    auto h = c.hom(x, y);
    REQUIRE(h.size() == 1);
    return h[0];
}

std::vector<fincat::FinCategory> structure_corpus() {
    std::vector<fincat::FinCategory> out;
    for (const auto& name : corpus::category_names()) out.push_back(by_name(name));
    return out;
}

ModelStructureSpec manual_spec(MorphismClass we, MorphismClass cof, MorphismClass fib) {
    ModelStructureSpec m;
    m.we = std::move(we);
    m.cof = std::move(cof);
    m.fib = std::move(fib);
    return m;
}

}  // namespace

TEST_CASE("cuts reject morphisms that cross downward") {
    auto e3 = corpus::E_prime();
    auto cut = Cut::make(e3, {0, 0, 1});
    CHECK_FALSE(cut.trivial());
    CHECK(cut.lower() == std::vector<fincat::ObjId>{0, 1});
    CHECK(cut.upper() == std::vector<fincat::ObjId>{2});

    CHECK_THROWS_AS(Cut::make(e3, {1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Cut::make(e3, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Cut::make(e3, {0, 0, 2}), std::invalid_argument);
    CHECK(Cut::make(e3, {1, 1, 1}).trivial());

    CHECK(cut_from_upper_names(corpus::SQ(), {"B", "*"}).side == std::vector<int>{0, 0, 1, 1});
    CHECK_THROWS_AS(cut_from_upper_names(corpus::SQ(), {"Q"}), std::invalid_argument);
    CHECK_THROWS_AS(cut_from_upper_names(corpus::SQ(), {"0"}), std::invalid_argument);
}

TEST_CASE("cut enumeration is ascending in the label vector") {
    auto cuts_e = all_cuts(corpus::E());
    REQUIRE(cuts_e.size() == 3);
    CHECK(cuts_e[0].side == std::vector<int>{0, 0});
    CHECK(cuts_e[1].side == std::vector<int>{0, 1});
    CHECK(cuts_e[2].side == std::vector<int>{1, 1});

    CHECK(all_cuts(corpus::E_prime()).size() == 4);
    auto cuts_sq = all_cuts(corpus::SQ());
    REQUIRE(cuts_sq.size() == 6);
    CHECK(cuts_sq[2].side == std::vector<int>{0, 0, 1, 1});

    // Both objects of RET and of PAR map to each other, so only the trivial
    // labelings survive in RET; PAR keeps the one-directional cut.
    CHECK(all_cuts(corpus::RET()).size() == 2);
    CHECK(all_cuts(corpus::PAR()).size() == 3);
    CHECK(all_cuts(corpus::FINSET3()).size() == 3);
}

TEST_CASE("double cuts are monotone labelings") {
    auto e3 = corpus::E_prime();
    CHECK_NOTHROW(DoubleCut::make(e3, {0, 1, 2}));
    CHECK_NOTHROW(DoubleCut::make(e3, {0, 0, 2}));
    CHECK_THROWS_AS(DoubleCut::make(e3, {0, 2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(DoubleCut::make(e3, {1, 0, 2}), std::invalid_argument);

    CHECK(all_double_cuts(corpus::E()).size() == 6);
    CHECK(all_double_cuts(e3).size() == 10);
}

TEST_CASE("double cut structure on the three-object chain") {
    auto e3 = corpus::E_prime();
    auto m = build_double_cut_structure(e3, DoubleCut::make(e3, {0, 1, 2}));
    CHECK(m.provenance == Provenance::DoubleCut);

    auto lo = arrow(e3, "0", "E");
    auto hi = arrow(e3, "E", "*");
    auto across = arrow(e3, "0", "*");

    CHECK(m.cof.contains(lo));
    CHECK(m.fib.contains(lo));
    CHECK_FALSE(m.we.contains(lo));

    CHECK(m.cof.contains(hi));
    CHECK(m.fib.contains(hi));
    CHECK_FALSE(m.we.contains(hi));

    CHECK(m.cof.contains(across));
    CHECK(m.fib.contains(across));
    CHECK_FALSE(m.we.contains(across));

    CHECK(m.we == MorphismClass::isos(e3));
    CHECK(verify_model_structure(e3, m).ok());

    // Collapsing everything to the top level makes every morphism invisible.
    auto flat = build_double_cut_structure(e3, DoubleCut::make(e3, {2, 2, 2}));
    CHECK(flat.we == MorphismClass::all(e3));
    CHECK(flat.cof == MorphismClass::all(e3));
    CHECK(flat.fib == MorphismClass::isos(e3));
    CHECK(verify_model_structure(e3, flat).ok());
}

TEST_CASE("double cut acyclic fibrations are the bottom-level morphisms") {
    for (const auto& c : structure_corpus()) {
        for (const auto& dc : all_double_cuts(c)) {
            auto m = build_double_cut_structure(c, dc);
            auto expected = MorphismClass::isos(c);
            for (fincat::MorId f = 0; f < c.n_morphisms(); ++f)
                if (dc.level[c.src(f)] == 0 && dc.level[c.tgt(f)] == 0) expected.add(f);
            CHECK(class_intersection(m.we, m.fib) == expected);
        }
    }
}

TEST_CASE("every corpus cut and double cut yields a verified structure") {
    for (const auto& c : structure_corpus()) {
        for (const auto& dc : all_double_cuts(c)) {
            auto report = verify_model_structure(c, build_double_cut_structure(c, dc));
            CHECK(report.ok());
        }
        for (const auto& cut : all_cuts(c)) {
            for (auto variant : {Variant::Balanced, Variant::Right, Variant::Left}) {
                auto report = verify_model_structure(c, build_cut_structure(c, cut, variant));
                CHECK(report.ok());
            }
        }
    }
}

TEST_CASE("degenerate class choices are rejected with the right counterexample") {
    auto e = corpus::E();
    auto all_iso = manual_spec(MorphismClass::isos(e), MorphismClass::isos(e),
                               MorphismClass::isos(e));
    auto report = verify_model_structure(e, all_iso);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.wfs_cof_afib.factorization_ok);
    CHECK(*report.wfs_cof_afib.unfactorable == arrow(e, "0", "*"));

    auto no_ids = manual_spec(MorphismClass::none(e), MorphismClass::all(e),
                              MorphismClass::all(e));
    auto rejected = verify_model_structure(e, no_ids);
    CHECK_FALSE(rejected.identities_ok);
    CHECK_FALSE(rejected.ok());
}

TEST_CASE("two out of three and retract closure are checked separately") {
    auto e3 = corpus::E_prime();
    auto we = MorphismClass::isos(e3);
    we.add(arrow(e3, "0", "E"));
    we.add(arrow(e3, "E", "*"));
    auto m = manual_spec(we, MorphismClass::all(e3), MorphismClass::all(e3));
    auto report = verify_model_structure(e3, m);
    CHECK_FALSE(report.two_of_three_ok);
    REQUIRE(report.two_of_three_witness.has_value());
    CHECK(report.two_of_three_witness->first == arrow(e3, "0", "E"));
    CHECK(report.two_of_three_witness->second == arrow(e3, "E", "*"));

    auto ret = corpus::RET();
    auto idempotent = MorphismClass::isos(ret);
    idempotent.add(4);  // the composite A -> A through B
    auto n = manual_spec(idempotent, MorphismClass::all(ret), MorphismClass::all(ret));
    auto closure = verify_model_structure(ret, n);
    CHECK_FALSE(closure.we_retract_closed);
    REQUIRE(closure.we_retract_witness.has_value());
    CHECK(lifting::retract_witness_holds(ret, *closure.we_retract_witness));
    CHECK(closure.we_retract_witness->outer == 4);
    CHECK_FALSE(idempotent.contains(closure.we_retract_witness->inner));
}

TEST_CASE("right structure on the square fails right properness with a replayable square") {
    auto sq = corpus::SQ();
    auto cut = cut_from_upper_names(sq, {"B", "*"});
    auto m = build_cut_structure(sq, cut, Variant::Right);
    CHECK(m.provenance == Provenance::RightCut);

    auto nontrivial = arrow(sq, "B", "*");
    auto expected_we = MorphismClass::isos(sq);
    expected_we.add(nontrivial);
    CHECK(m.we == expected_we);
    CHECK(m.cof == MorphismClass::all(sq));
    CHECK_FALSE(m.fib.contains(nontrivial));
    CHECK(m.fib.contains(arrow(sq, "A", "*")));

    auto axioms = verify_model_structure(sq, m);
    CHECK(axioms.ok());
    CHECK(axioms.wfs_acof_fib.maximal_left);
    CHECK(axioms.wfs_acof_fib.maximal_right);

    CHECK(check_properness(sq, m, Side::Left).proper);

    auto right = check_properness(sq, m, Side::Right);
    CHECK_FALSE(right.proper);
    CHECK(right.missing.empty());
    REQUIRE(right.witness.has_value());
    const auto& w = *right.witness;
    CHECK(w.we_leg == nontrivial);
    CHECK(w.other_leg == arrow(sq, "A", "*"));
    CHECK(w.comparison == arrow(sq, "0", "A"));
    CHECK(w.comparison == w.square.leg[0]);
    CHECK_FALSE(m.we.contains(w.comparison));
    auto replay = fincat::cospan_diagram(sq, w.other_leg, w.we_leg);
    CHECK(fincat::is_limiting_cone(sq, replay, w.square));
}

TEST_CASE("left structure on the square fails left properness with a replayable square") {
    auto sq = corpus::SQ();
    auto cut = cut_from_upper_names(sq, {"B", "*"});
    auto m = build_cut_structure(sq, cut, Variant::Left);
    CHECK(m.provenance == Provenance::LeftCut);

    auto expected_we = MorphismClass::isos(sq);
    expected_we.add(arrow(sq, "0", "A"));
    CHECK(m.we == expected_we);
    CHECK(m.fib == MorphismClass::all(sq));
    CHECK(verify_model_structure(sq, m).ok());

    CHECK(check_properness(sq, m, Side::Right).proper);

    auto left = check_properness(sq, m, Side::Left);
    CHECK_FALSE(left.proper);
    REQUIRE(left.witness.has_value());
    const auto& w = *left.witness;
    CHECK(w.we_leg == arrow(sq, "0", "A"));
    CHECK(w.other_leg == arrow(sq, "0", "B"));
    CHECK(w.comparison == arrow(sq, "B", "*"));
    auto replay = fincat::span_diagram(sq, w.other_leg, w.we_leg);
    CHECK(fincat::is_colimiting_cone(sq, replay, w.square));

    auto point = corpus::chain(0);
    auto tiny = build_cut_structure(point, Cut::make(point, {0}), Variant::Left);
    CHECK(tiny.we == MorphismClass::all(point));
    CHECK(verify_model_structure(point, tiny).ok());
}

TEST_CASE("balanced structure is proper on both sides everywhere") {
    for (const auto& c : structure_corpus()) {
        for (const auto& cut : all_cuts(c)) {
            auto m = build_cut_structure(c, cut, Variant::Balanced);
            CHECK(check_properness(c, m, Side::Left).proper);
            CHECK(check_properness(c, m, Side::Right).proper);
        }
    }

    // A fully invisible structure is proper for the same vacuous reason.
    auto sq = corpus::SQ();
    auto flat = build_double_cut_structure(sq, DoubleCut::make(sq, {2, 2, 2, 2}));
    CHECK(check_properness(sq, flat, Side::Left).proper);
    CHECK(check_properness(sq, flat, Side::Right).proper);
}

TEST_CASE("pushouts along strict balanced cofibrations are always invisible") {
    for (const auto& c : structure_corpus()) {
        for (const auto& cut : all_cuts(c)) {
            auto m = build_cut_structure(c, cut, Variant::Balanced);
            for (auto i : m.cof.ids()) {
                if (fincat::is_iso(c, i)) continue;
                for (fincat::MorId g = 0; g < c.n_morphisms(); ++g) {
                    if (c.src(g) != c.src(i)) continue;
                    auto co = fincat::colimit(c, fincat::span_diagram(c, i, g));
                    if (co) CHECK(m.we.contains(co->leg[0]));
                }
            }
        }
    }
}

TEST_CASE("adjoint section structure on the chain collapse") {
    auto e3 = corpus::E_prime();
    auto e = corpus::E();
    AdjunctionData adj;
    adj.F.obj = {0, 0, 1};
    adj.F.mor = {0, 0, 1, 0, 1, 2};
    adj.G.obj = {1, 2};
    adj.G.mor = {3, 4, 5};
    adj.unit = {arrow(e3, "0", "E"), e3.identity[1], e3.identity[2]};
    adj.counit = {e.identity[0], e.identity[1]};
    CHECK_NOTHROW(validate_adjoint_section(e3, e, adj));

    auto report = adjoint_section_structure(e3, e, adj);
    const auto& m = report.structure;
    CHECK(m.provenance == Provenance::AdjointSection);
    auto expected_we = MorphismClass::isos(e3);
    expected_we.add(arrow(e3, "0", "E"));
    CHECK(m.we == expected_we);
    CHECK(m.cof == MorphismClass::all(e3));
    CHECK(m.fib.contains(arrow(e3, "E", "*")));
    CHECK_FALSE(m.fib.contains(arrow(e3, "0", "E")));
    CHECK_FALSE(m.fib.contains(arrow(e3, "0", "*")));

    CHECK(report.condition_a);
    CHECK(report.condition_b);
    CHECK(report.d_preorder);
    CHECK(report.right_properness == "unknown");
    CHECK(verify_model_structure(e3, m).ok());
    CHECK(check_properness(e3, m, Side::Left).proper);

    auto broken = adj;
    broken.counit = {e.identity[0], arrow(e, "0", "*")};
    CHECK_THROWS_AS(validate_adjoint_section(e3, e, broken), std::invalid_argument);
    auto skewed = adj;
    skewed.unit[0] = e3.identity[0];
    CHECK_THROWS_AS(validate_adjoint_section(e3, e, skewed), std::invalid_argument);
}

TEST_CASE("identity adjunction makes only isomorphisms invisible") {
    auto c = corpus::LAT4();
    AdjunctionData adj;
    adj.F = fincat::identity_functor(c);
    adj.G = adj.F;
    adj.unit = c.identity;
    adj.counit = c.identity;
    auto report = adjoint_section_structure(c, c, adj);
    CHECK(report.structure.we == MorphismClass::isos(c));
    CHECK(report.structure.cof == MorphismClass::all(c));
    CHECK(report.structure.fib == MorphismClass::all(c));
    CHECK(verify_model_structure(c, report.structure).ok());
}

TEST_CASE("adjoint section search finds the canonical chain section") {
    auto e3 = corpus::E_prime();
    auto e = corpus::E();
    auto cut = Cut::make(e3, {0, 0, 1});
    auto f = cut_functor(e3, cut, e);
    CHECK(fincat::is_functor(e3, e, f));

    auto found = find_adjoint_section(e3, e, f);
    REQUIRE(found.has_value());
    CHECK(found->G.obj == std::vector<fincat::ObjId>{1, 2});
    CHECK(found->G.mor == std::vector<fincat::MorId>{3, 4, 5});
    CHECK(found->unit == std::vector<fincat::MorId>{arrow(e3, "0", "E"), e3.identity[1],
                                                    e3.identity[2]});
    CHECK(found->counit == std::vector<fincat::MorId>{e.identity[0], e.identity[1]});
}

TEST_CASE("the hexagon collapse admits no adjoint section") {
    auto hex = corpus::HEX();
    auto e = corpus::E();
    auto cut = cut_from_upper_names(hex, {"C", "D", "*"});
    auto f = cut_functor(hex, cut, e);
    CHECK(fincat::is_functor(hex, e, f));
    CHECK_FALSE(find_adjoint_section(hex, e, f).has_value());

    // No other labeling rescues it: the two parallel composites block every
    // candidate unit.
    for (const auto& other : all_cuts(hex))
        CHECK_FALSE(find_adjoint_section(hex, e, cut_functor(hex, other, e)).has_value());
}

TEST_CASE("retraction pair collapses onto its terminal object") {
    auto ret = corpus::RET();
    auto point = corpus::chain(0);
    fincat::Functor collapse;
    collapse.obj = {0, 0};
    collapse.mor = {0, 0, 0, 0, 0};
    auto found = find_adjoint_section(ret, point, collapse);
    REQUIRE(found.has_value());
    CHECK(found->G.obj == std::vector<fincat::ObjId>{1});

    auto report = adjoint_section_structure(ret, point, *found);
    CHECK(report.structure.we == MorphismClass::all(ret));
    CHECK(report.structure.fib == MorphismClass::isos(ret));
    CHECK(report.condition_a);
    CHECK(report.condition_b);
    CHECK(verify_model_structure(ret, report.structure).ok());
    CHECK(check_properness(ret, report.structure, Side::Left).proper);
}

TEST_CASE("found adjoint sections over the corpus give verified left proper structures") {
    auto e = corpus::E();
    int found_count = 0;
    for (const auto& c : structure_corpus()) {
        for (const auto& cut : all_cuts(c)) {
            auto section = find_adjoint_section(c, e, cut_functor(c, cut, e));
            if (!section) continue;
            ++found_count;
            auto report = adjoint_section_structure(c, e, *section);
            CHECK(report.d_preorder);
            if (report.condition_a && report.condition_b) {
                CHECK(verify_model_structure(c, report.structure).ok());
                CHECK(check_properness(c, report.structure, Side::Left).proper);
            }
        }
    }
    CHECK(found_count >= 5);
}

TEST_CASE("structure comparison separates homotopy classifications") {
    auto e = corpus::E();
    auto cut_e = Cut::make(e, {0, 1});
    auto same = compare_structures(e, build_cut_structure(e, cut_e, Variant::Balanced),
                                   build_cut_structure(e, cut_e, Variant::Balanced));
    CHECK(same.we_equal);
    REQUIRE(same.lower_equivalent.has_value());
    CHECK(*same.lower_equivalent);
    CHECK_FALSE(same.distinct());

    // On the walking arrow the balanced and right readings of the same cut
    // produce literally identical classes.
    auto agree = compare_structures(e, build_cut_structure(e, cut_e, Variant::Balanced),
                                    build_cut_structure(e, cut_e, Variant::Right));
    CHECK(agree.we_equal);
    CHECK_FALSE(agree.distinct());

    // On the three-object chain they come apart: the balanced reading makes
    // the bottom step invisible, the right reading does not.
    auto e3 = corpus::E_prime();
    auto cut_e3 = Cut::make(e3, {0, 0, 1});
    auto b = build_cut_structure(e3, cut_e3, Variant::Balanced);
    auto r = build_cut_structure(e3, cut_e3, Variant::Right);
    CHECK(b.we.contains(arrow(e3, "0", "E")));
    CHECK_FALSE(r.we.contains(arrow(e3, "0", "E")));
    auto apart = compare_structures(e3, b, r);
    CHECK_FALSE(apart.we_equal);
    CHECK(apart.distinct());

    auto chain2 = corpus::chain(2);
    auto narrow = build_cut_structure(chain2, Cut::make(chain2, {0, 1, 1}), Variant::Balanced);
    auto wide = build_cut_structure(chain2, Cut::make(chain2, {0, 0, 1}), Variant::Balanced);
    auto split = compare_structures(chain2, narrow, wide);
    REQUIRE(split.lower_equivalent.has_value());
    CHECK_FALSE(*split.lower_equivalent);
    CHECK(split.distinct());

    auto manual = manual_spec(MorphismClass::isos(e), MorphismClass::all(e),
                              MorphismClass::all(e));
    auto unlabeled = compare_structures(e, manual, build_cut_structure(e, cut_e, Variant::Right));
    CHECK(unlabeled.we_equal);
    CHECK_FALSE(unlabeled.lower_equivalent.has_value());
    CHECK_FALSE(unlabeled.distinct());
}
