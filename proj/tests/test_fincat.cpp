#include <stdexcept>

#include "doctest.h"
#include "modelkit/corpus.hpp"
#include "modelkit/fincat.hpp"

using namespace modelkit;
using namespace modelkit::fincat;
namespace cp = modelkit::corpus;

namespace {

std::vector<FinCategory> small_corpus() {
    std::vector<FinCategory> cs;
    cs.push_back(cp::E());
    cs.push_back(cp::E_prime());
    cs.push_back(cp::LAT4());
    cs.push_back(cp::LAT5());
    cs.push_back(cp::SQ());
    cs.push_back(cp::HEX());
    cs.push_back(cp::PAR());
    cs.push_back(cp::RET());
    cs.push_back(cp::FINSET3());
    return cs;
}

MorId hom_unique(const FinCategory& c, ObjId x, ObjId y) {
    auto h = c.hom(x, y);
    REQUIRE(h.size() == 1);
    return h[0];
}

ObjId by_name(const FinCategory& c, const std::string& name) {
    for (ObjId x = 0; x < c.n_objects; ++x)
        if (c.object_name(x) == name) return x;
    FAIL("no object named ", name);
    return kNone;
}

}  // namespace

TEST_CASE("corpus categories validate cleanly") {
    for (const auto& c : small_corpus()) {
        auto rep = validate_category(c);
        CHECK(rep.ok());
    }
}

TEST_CASE("defective composition entries are reported, not fatal") {
    auto c = cp::E_prime();
    // redirect a composite to a morphism with the wrong target
    MorId oe = hom_unique(c, 0, 1), et = hom_unique(c, 1, 2);
    c.compose_table[et][oe] = c.identity[0];
    auto rep = validate_category(c);
    CHECK(!rep.ok());
    bool saw_bad_entry = false;
    for (const auto& v : rep.violations)
        if (v.kind == Violation::BadEndpoints) saw_bad_entry = true;
    CHECK(saw_bad_entry);
}

TEST_CASE("identity morphisms carry every classification flag") {
    auto c = cp::LAT4();
    for (ObjId x = 0; x < c.n_objects; ++x) {
        auto f = classify_morphism(c, c.identity[x]);
        CHECK(f.mono);
        CHECK(f.epi);
        CHECK(f.iso);
        CHECK(f.retraction);
        CHECK(f.section);
    }
}

TEST_CASE("strict poset arrows are monic but admit no one-sided inverses") {
    auto c = cp::E_prime();
    auto f = classify_morphism(c, hom_unique(c, 0, 1));
    CHECK(f.mono);
    CHECK(!f.retraction);
    CHECK(!f.section);
    CHECK(!f.iso);
}

TEST_CASE("retraction without section in the split-idempotent category") {
    auto c = cp::RET();
    MorId r = c.hom(0, 1)[0];
    auto fr = classify_morphism(c, r);
    CHECK(fr.retraction);
    CHECK(!fr.section);
    CHECK(!fr.iso);
    MorId s = c.hom(1, 0)[0];
    auto fs = classify_morphism(c, s);
    CHECK(fs.section);
    CHECK(!fs.retraction);
}

TEST_CASE("mono and epi detection in the finite-set skeleton") {
    auto c = cp::FINSET3();
    MorId one_to_two = c.hom(1, 2)[0];
    auto f = classify_morphism(c, one_to_two);
    CHECK(f.mono);
    CHECK(!f.epi);
    MorId two_to_one = c.hom(2, 1)[0];
    auto g = classify_morphism(c, two_to_one);
    CHECK(g.epi);
    CHECK(!g.mono);
    CHECK(g.retraction);
}

TEST_CASE("pullback of the coproduct inclusions in the diamond lattice") {
    auto c = cp::LAT4();
    ObjId A = by_name(c, "A"), B = by_name(c, "B"), X = by_name(c, "X"), top = by_name(c, "*");
    auto cocone = colimit(c, discrete_pair_diagram(A, B));
    REQUIRE(cocone.has_value());
    CHECK(cocone->apex == top);
    auto cone = limit(c, cospan_diagram(c, cocone->leg[0], cocone->leg[1]));
    REQUIRE(cone.has_value());
    CHECK(cone->apex == X);
}

TEST_CASE("product with the terminal object is the object itself") {
    auto c = cp::LAT4();
    ObjId A = by_name(c, "A");
    auto t = terminal_object(c);
    REQUIRE(t.has_value());
    auto cone = limit(c, discrete_pair_diagram(A, *t));
    REQUIRE(cone.has_value());
    CHECK(cone->apex == A);
}

TEST_CASE("pushouts in chains are least upper bounds") {
    auto c = cp::chain(3);
    MorId f = hom_unique(c, 0, 2), g = hom_unique(c, 0, 1);
    auto cocone = colimit(c, span_diagram(c, f, g));
    REQUIRE(cocone.has_value());
    CHECK(cocone->apex == 2);

    auto idspan = span_diagram(c, c.identity[1], c.identity[1]);
    auto same = colimit(c, idspan);
    REQUIRE(same.has_value());
    CHECK(same->apex == 1);
}

TEST_CASE("parallel arrows admit no coproduct and the report says so") {
    auto rep = coproduct_properties(cp::PAR());
    CHECK(!rep.all_pairs_exist);
    REQUIRE(rep.missing.size() == 1);
    CHECK(rep.missing[0] == std::pair<ObjId, ObjId>{0, 1});
}

TEST_CASE("limit and colimit outputs are universal against all competitors") {
    for (const auto& c : small_corpus()) {
        for (ObjId a = 0; a < c.n_objects; ++a)
            for (ObjId b = a; b < c.n_objects; ++b) {
                auto d = discrete_pair_diagram(a, b);
                if (auto cone = limit(c, d)) CHECK(is_limiting_cone(c, d, *cone));
                if (auto cocone = colimit(c, d)) CHECK(is_colimiting_cone(c, d, *cocone));
            }
        for (MorId f = 0; f < c.n_morphisms(); ++f)
            for (MorId g = 0; g < c.n_morphisms(); ++g) {
                if (c.tgt(f) == c.tgt(g)) {
                    auto d = cospan_diagram(c, f, g);
                    if (auto cone = limit(c, d)) CHECK(is_limiting_cone(c, d, *cone));
                }
                if (c.src(f) == c.src(g)) {
                    auto d = span_diagram(c, f, g);
                    if (auto cocone = colimit(c, d)) CHECK(is_colimiting_cone(c, d, *cocone));
                }
            }
    }
}

TEST_CASE("preorder reflection collapses parallel arrows") {
    auto pr = preorder_reflection(cp::PAR());
    CHECK(is_preorder(pr.preorder));
    CHECK(pr.preorder.n_objects == 2);
    CHECK(pr.preorder.hom(0, 1).size() == 1);
    CHECK(pr.preorder.hom(1, 0).empty());
    CHECK(is_functor(cp::PAR(), pr.preorder, pr.to_preorder));
}

TEST_CASE("preorder reflection of the finite-set skeleton has two classes") {
    auto pr = preorder_reflection(cp::FINSET3());
    CHECK(pr.cls[0] != pr.cls[1]);
    CHECK(pr.cls[1] == pr.cls[2]);
    CHECK(pr.preorder.n_objects == 2);
}

TEST_CASE("posets are their own preorder reflection") {
    auto c = cp::LAT4();
    auto pr = preorder_reflection(c);
    CHECK(is_isomorphic(pr.preorder, c));
}

TEST_CASE("preorder reflection is idempotent") {
    for (const auto& c : small_corpus()) {
        auto p1 = preorder_reflection(c);
        auto p2 = preorder_reflection(p1.preorder);
        CHECK(is_isomorphic(p2.preorder, p1.preorder));
    }
}

TEST_CASE("monic length of total orders") {
    for (int n = 0; n <= 4; ++n) {
        auto len = monic_length(cp::chain(n));
        REQUIRE(len.has_value());
        CHECK(*len == n);
    }
}

TEST_CASE("monic length with a bottom element below the chain") {
    for (int n = 0; n <= 4; ++n) {
        auto len = monic_length(cp::d_chain(n));
        REQUIRE(len.has_value());
        CHECK(*len == n + 1);
    }
}

TEST_CASE("monic length needs a terminal object") {
    CHECK(!monic_length(cp::PAR()).has_value());
}

TEST_CASE("monic length survives passing to a skeleton") {
    auto c = cp::finset_skeleton({0, 1, 2, 2});
    auto direct = monic_length(c);
    auto sk = skeleton(c);
    auto reduced = monic_length(sk.cat);
    REQUIRE(direct.has_value());
    REQUIRE(reduced.has_value());
    CHECK(*direct == *reduced);
    CHECK(*direct == monic_length(cp::FINSET3()).value());
}

TEST_CASE("coproduct report for the diamond lattice") {
    auto c = cp::LAT4();
    auto rep = coproduct_properties(c);
    CHECK(rep.all_pairs_exist);
    CHECK(rep.splitting);
    CHECK(!rep.disjoint);
    REQUIRE(rep.disjoint_failure.has_value());
    CHECK(rep.disjoint_failure->which >= 2);  // a pullback square fails, not monicity
    REQUIRE(rep.disjoint_failure->actual_limit.has_value());
    // the failing mixed square genuinely has the wrong pullback
    CHECK(rep.disjoint_failure->actual_limit->apex != initial_object(c).value());
}

TEST_CASE("coproduct report for the five-element lattice") {
    auto c = cp::LAT5();
    auto rep = coproduct_properties(c);
    CHECK(rep.all_pairs_exist);
    CHECK(!rep.splitting);
    CHECK(!rep.disjoint);
    REQUIRE(rep.split_failure.has_value());
    MorId f = rep.split_failure->f;
    CHECK(c.object_name(c.src(f)) == "C");
    CHECK(c.object_name(c.tgt(f)) == "*");
    // the counterexample genuinely admits no decomposition
    CHECK(!split_morphism(c, rep.split_failure->pair, f).has_value());
}

TEST_CASE("coproduct report for the arrow poset") {
    auto rep = coproduct_properties(cp::E());
    CHECK(rep.all_pairs_exist);
    CHECK(rep.splitting);
    CHECK(rep.disjoint);
}

TEST_CASE("disjoint coproducts forbid morphisms intertwining the inclusions") {
    for (const auto& c : small_corpus()) {
        auto rep = coproduct_properties(c);
        if (!rep.disjoint) continue;
        for (const auto& pair : rep.pairs)
            for (MorId f : c.hom(pair.a, pair.b))
                if (c.compose(pair.i2, f) == pair.i1)
                    CHECK(pair.a == initial_object(c).value());
    }
}

TEST_CASE("splitting witnesses replay") {
    auto c = cp::LAT4();
    auto rep = coproduct_properties(c);
    REQUIRE(rep.splitting);
    for (const auto& pair : rep.pairs)
        for (MorId f = 0; f < c.n_morphisms(); ++f) {
            if (c.tgt(f) != pair.sum) continue;
            auto dec = split_morphism(c, pair, f);
            REQUIRE(dec.has_value());
            CHECK(is_iso(c, dec->iso));
            CHECK(c.compose(c.compose(f, dec->iso), dec->lr.i1) ==
                  c.compose(pair.i1, dec->f_left));
            CHECK(c.compose(c.compose(f, dec->iso), dec->lr.i2) ==
                  c.compose(pair.i2, dec->f_right));
        }
}

TEST_CASE("category isomorphism ignores labels and spots genuine differences") {
    CHECK(is_isomorphic(cp::LAT4(), cp::SQ()));
    CHECK(is_isomorphic(cp::E(), cp::chain(1)));
    CHECK(!is_isomorphic(cp::PAR(), cp::RET()));
    CHECK(!is_isomorphic(cp::LAT4(), cp::chain(3)));
}

TEST_CASE("equivalence detects redundant isomorphic objects") {
    auto fat = cp::finset_skeleton({0, 1, 2, 2});
    CHECK(equivalent_categories(fat, cp::FINSET3()));
    CHECK(!equivalent_categories(fat, cp::E()));
}

TEST_CASE("poset enumeration hits the known isomorphism-class counts") {
    auto ps = cp::all_posets(5);
    std::vector<int> counts(6, 0);
    for (const auto& c : ps) counts[c.n_objects]++;
    CHECK(counts == std::vector<int>{1, 1, 2, 5, 16, 63});
    for (const auto& c : ps) {
        CHECK(validate_category(c).ok());
        CHECK(is_preorder(c));
    }
}

TEST_CASE("free hexagon category has two distinct parallel composites") {
    auto c = cp::HEX();
    CHECK(validate_category(c).ok());
    ObjId bot = by_name(c, "0"), top = by_name(c, "*");
    CHECK(c.hom(bot, top).size() == 2);
}

TEST_CASE("diagrams above the size cap are rejected") {
    auto c = cp::LAT4();
    Diagram d;
    d.node = {0, 1, 2, 3, 0};
    CHECK_THROWS_AS(limit(c, d), std::invalid_argument);
}
