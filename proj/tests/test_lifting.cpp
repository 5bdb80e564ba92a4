#include <stdexcept>

#include "doctest.h"
#include "modelkit/corpus.hpp"
#include "modelkit/fincat.hpp"
#include "modelkit/lifting.hpp"

using namespace modelkit;
using namespace modelkit::fincat;
using namespace modelkit::lifting;
namespace cp = modelkit::corpus;

namespace {

MorId the(const FinCategory& c, ObjId x, ObjId y) {
    auto h = c.hom(x, y);
    REQUIRE(h.size() == 1);
    return h[0];
}

MorphismClass initial_morphisms(const FinCategory& c) {
    auto init = initial_object(c);
    REQUIRE(init.has_value());
    MorphismClass s = MorphismClass::none(c);
    for (ObjId x = 0; x < c.n_objects; ++x) s.add(c.hom(*init, x)[0]);
    return s;
}

MorphismClass terminal_morphisms(const FinCategory& c) {
    auto t = terminal_object(c);
    REQUIRE(t.has_value());
    MorphismClass s = MorphismClass::none(c);
    for (ObjId x = 0; x < c.n_objects; ++x) s.add(c.hom(x, *t)[0]);
    return s;
}

// The weak equivalence / acyclic fibration pair of the two-level labeling
// on the chain 0 < E < * that sends 0 and E down and * up.
std::pair<MorphismClass, MorphismClass> chain_wfs(const FinCategory& c) {
    MorphismClass left = MorphismClass::isos(c);
    left.add(the(c, 0, 2));
    left.add(the(c, 1, 2));
    MorphismClass right = MorphismClass::isos(c);
    right.add(the(c, 0, 1));
    return {left, right};
}

}  // namespace

TEST_CASE("iso left edges always lift") {
    auto c = cp::E_prime();
    auto sq = LiftingSquare::make(c, c.identity[0], the(c, 1, 2), the(c, 0, 1), the(c, 0, 2));
    auto h = solve_lifting(c, sq);
    REQUIRE(h.has_value());
    CHECK(c.compose(*h, sq.f) == sq.top);
    CHECK(c.compose(sq.g, *h) == sq.bottom);
}

TEST_CASE("a poset square with no diagonal candidate reports absence") {
    auto c = cp::E_prime();
    auto sq = LiftingSquare::make(c, the(c, 0, 2), the(c, 1, 2), the(c, 0, 1), c.identity[2]);
    CHECK(!solve_lifting(c, sq).has_value());
}

TEST_CASE("non-commuting squares are rejected at construction") {
    auto c = cp::PAR();
    MorId f = c.hom(0, 1)[0], g = c.hom(0, 1)[1];
    CHECK_THROWS_AS(LiftingSquare::make(c, c.identity[0], c.identity[1], f, g),
                    std::invalid_argument);
}

TEST_CASE("morphisms out of the initial object detect retractions") {
    for (const auto& c : {cp::RET(), cp::FINSET3(), cp::LAT4()}) {
        auto got = complement(c, initial_morphisms(c), Side::Right);
        MorphismClass want = MorphismClass::none(c);
        for (MorId f = 0; f < c.n_morphisms(); ++f)
            if (classify_morphism(c, f).retraction) want.add(f);
        CHECK(got == want);
    }
}

TEST_CASE("morphisms into the terminal object detect sections") {
    for (const auto& c : {cp::RET(), cp::FINSET3(), cp::LAT4()}) {
        auto got = complement(c, terminal_morphisms(c), Side::Left);
        MorphismClass want = MorphismClass::none(c);
        for (MorId f = 0; f < c.n_morphisms(); ++f)
            if (classify_morphism(c, f).section) want.add(f);
        CHECK(got == want);
    }
}

TEST_CASE("complement of the empty class is everything") {
    auto c = cp::E_prime();
    CHECK(complement(c, MorphismClass::none(c), Side::Right) == MorphismClass::all(c));
    CHECK(complement(c, MorphismClass::none(c), Side::Left) == MorphismClass::all(c));
}

TEST_CASE("isomorphisms and the full class are retract-closed") {
    for (const auto& c : {cp::E_prime(), cp::RET(), cp::FINSET3()}) {
        CHECK(is_retract_closed(c, MorphismClass::isos(c)).closed);
        CHECK(is_retract_closed(c, MorphismClass::all(c)).closed);
    }
}

TEST_CASE("the split idempotent is not retract-closed on its own") {
    auto c = cp::RET();
    MorId e = fincat::kNone;
    for (MorId f : c.hom(0, 0))
        if (!c.is_identity(f)) e = f;
    REQUIRE(e != fincat::kNone);
    auto rep = is_retract_closed(c, MorphismClass::of(c, {e}));
    CHECK(!rep.closed);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->inner == c.identity[1]);
    CHECK(rep.witness->outer == e);
    CHECK(retract_witness_holds(c, *rep.witness));
}

TEST_CASE("factorization picks the declared classes") {
    auto c = cp::E_prime();

    SUBCASE("left class everything, right class isos") {
        auto l = MorphismClass::all(c);
        auto r = MorphismClass::isos(c);
        for (MorId f = 0; f < c.n_morphisms(); ++f) {
            auto fac = factorize_through(c, f, l, r);
            REQUIRE(fac.has_value());
            CHECK(c.compose(fac->r, fac->l) == f);
            CHECK(l.contains(fac->l));
            CHECK(r.contains(fac->r));
        }
    }

    SUBCASE("isos through isos cannot produce a strict arrow") {
        auto isos = MorphismClass::isos(c);
        CHECK(!factorize_through(c, the(c, 0, 2), isos, isos).has_value());
    }
}

TEST_CASE("trivial weak factorization systems verify with maximality") {
    for (const auto& c : {cp::E(), cp::E_prime(), cp::LAT4(), cp::RET(), cp::FINSET3()}) {
        auto all = MorphismClass::all(c);
        auto isos = MorphismClass::isos(c);
        auto rep = verify_wfs(c, all, isos);
        CHECK(rep.ok());
        CHECK(rep.maximal_left);
        CHECK(rep.maximal_right);
        auto rep2 = verify_wfs(c, isos, all);
        CHECK(rep2.ok());
        CHECK(rep2.maximal_left);
        CHECK(rep2.maximal_right);
    }
}

TEST_CASE("unfactorable morphisms are reported with a witness") {
    auto c = cp::E();
    auto isos = MorphismClass::isos(c);
    auto rep = verify_wfs(c, isos, isos);
    CHECK(!rep.factorization_ok);
    REQUIRE(rep.unfactorable.has_value());
    CHECK(*rep.unfactorable == the(c, 0, 1));
}

TEST_CASE("a nontrivial system on the three-chain verifies") {
    auto c = cp::E_prime();
    auto [left, right] = chain_wfs(c);
    auto rep = verify_wfs(c, left, right);
    CHECK(rep.ok());
    CHECK(rep.maximal_left);
    CHECK(rep.maximal_right);
}

TEST_CASE("verified systems satisfy the closure laws") {
    auto check_closure = [](const FinCategory& c, const MorphismClass& left,
                            const MorphismClass& right) {
        CHECK(subset_of(MorphismClass::isos(c), left));
        CHECK(subset_of(MorphismClass::isos(c), right));
        for (MorId f = 0; f < c.n_morphisms(); ++f)
            for (MorId g = 0; g < c.n_morphisms(); ++g) {
                if (!c.composable(g, f)) continue;
                MorId gf = c.compose(g, f);
                if (left.contains(f) && left.contains(g)) CHECK(left.contains(gf));
                if (right.contains(f) && right.contains(g)) CHECK(right.contains(gf));
            }
        CHECK(is_retract_closed(c, left).closed);
        CHECK(is_retract_closed(c, right).closed);
        for (MorId f : left.ids())
            for (MorId g = 0; g < c.n_morphisms(); ++g) {
                if (c.src(g) != c.src(f)) continue;
                auto d = span_diagram(c, f, g);
                if (auto po = colimit(c, d)) CHECK(left.contains(po->leg[1]));
            }
        for (MorId f : right.ids())
            for (MorId g = 0; g < c.n_morphisms(); ++g) {
                if (c.tgt(g) != c.tgt(f)) continue;
                auto d = cospan_diagram(c, f, g);
                if (auto pb = limit(c, d)) CHECK(right.contains(pb->leg[1]));
            }
    };

    for (const auto& c : {cp::E(), cp::E_prime(), cp::LAT4()}) {
        check_closure(c, MorphismClass::all(c), MorphismClass::isos(c));
        check_closure(c, MorphismClass::isos(c), MorphismClass::all(c));
    }
    auto c = cp::E_prime();
    auto [left, right] = chain_wfs(c);
    check_closure(c, left, right);
}

TEST_CASE("complement is antitone and satisfies the Galois law") {
    auto c = cp::E_prime();
    auto s1 = MorphismClass::of(c, {the(c, 0, 1)});
    auto s2 = MorphismClass::of(c, {the(c, 0, 1), the(c, 1, 2)});
    for (Side side : {Side::Left, Side::Right})
        CHECK(subset_of(complement(c, s2, side), complement(c, s1, side)));

    for (const auto& cat : {cp::E_prime(), cp::RET(), cp::PAR()}) {
        for (MorId f = 0; f < cat.n_morphisms(); ++f) {
            auto s = MorphismClass::of(cat, {f});
            CHECK(subset_of(s, complement(cat, complement(cat, s, Side::Right), Side::Left)));
            CHECK(subset_of(s, complement(cat, complement(cat, s, Side::Left), Side::Right)));
        }
    }
}

TEST_CASE("morphism class ids round out sorted") {
    auto c = cp::FINSET3();
    auto s = MorphismClass::of(c, {5, 2, 9});
    CHECK(s.ids() == std::vector<MorId>{2, 5, 9});
    CHECK(s.size() == 3);
}
