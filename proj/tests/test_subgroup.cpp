#include "doctest.h"

#include "modsurf/subgroup.hpp"

#include <algorithm>
#include <set>

using namespace modsurf;

namespace {

// The level-2 congruence group as an abstract generator list.
std::vector<UnimodularMatrix> level2_generators() {
    return {UnimodularMatrix::t_power(2), UnimodularMatrix(1, 0, 2, 1)};
}

}   // namespace

TEST_CASE("full group: one coset") {
    CosetRepresentation rep = CosetRepresentation::from_generators(
        {UnimodularMatrix::gen_s(), UnimodularMatrix::gen_t()});
    CHECK(rep.size() == 1);
    SubgroupInvariants inv = invariants(rep);
    CHECK(inv.mu == 1);
    CHECK(inv.cusp_count == 1);
    CHECK(inv.genus == 0);
    CHECK(inv.e2 == 1);
    CHECK(inv.e3 == 1);
    CHECK_FALSE(inv.torsion_free);
    CHECK(inv.s_stable);
    CHECK(membership(rep, UnimodularMatrix(17, 12, 7, 5)));
}

TEST_CASE("level-2 group: index, torsion, cusps") {
    CosetRepresentation rep = CosetRepresentation::from_generators(level2_generators());
    SubgroupInvariants inv = invariants(rep);
    CHECK(inv.mu == 6);
    CHECK(inv.cusp_count == 3);
    CHECK(inv.genus == 0);
    CHECK(inv.e2 == 0);
    CHECK(inv.e3 == 0);
    CHECK(inv.torsion_free);
    CHECK(inv.s_stable);
    CHECK(is_s_stable(rep));

    auto cc = cusps(rep);
    REQUIRE(cc.size() == 3);
    CHECK(cc[0].representative == ExtendedRational::infinity());
    CHECK(cc[1].representative == ExtendedRational(0, 1));
    CHECK(cc[2].representative == ExtendedRational(1, 1));
    for (const auto& c : cc) {
        CHECK(c.width == 2);
        CHECK(c.is_real);
    }
    // Widths always sum to the index.
    int total = 0;
    for (const auto& c : cc) total += c.width;
    CHECK(total == inv.mu);

    // Membership agrees with the defining congruence conditions.
    CHECK(membership(rep, UnimodularMatrix::t_power(2)));
    CHECK(membership(rep, UnimodularMatrix(1, 0, 2, 1)));
    CHECK(membership(rep, UnimodularMatrix(3, 2, -2, -1).negated()));
    CHECK_FALSE(membership(rep, UnimodularMatrix::gen_t()));
    CHECK_FALSE(membership(rep, UnimodularMatrix::gen_s()));
    CHECK_FALSE(membership(rep, UnimodularMatrix(2, 1, 1, 1)));
}

TEST_CASE("coset table round trip and validation messages") {
    CosetRepresentation rep = CosetRepresentation::from_generators(level2_generators());
    CosetRepresentation back = CosetRepresentation::from_parts(rep.perm_s(), rep.perm_t());
    CHECK(back.perm_s() == rep.perm_s());
    CHECK(back.perm_t() == rep.perm_t());
    CHECK(pointed_isomorphic(rep, back));

    CHECK(table_violations({}, {}).size() == 1);
    CHECK(table_violations({0, 1}, {0}).size() == 1);          // size mismatch
    // s not a bijection.
    auto v1 = table_violations({0, 0}, {1, 0});
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].find("perm_s is not a bijection") != std::string::npos);
    // Out-of-range value.
    auto v2 = table_violations({0, 5}, {1, 0});
    REQUIRE(!v2.empty());
    CHECK(v2[0].find("out of range") != std::string::npos);
    // s^2 != 1 on a 3-cycle.
    auto v3 = table_violations({1, 2, 0}, {0, 1, 2});
    CHECK(!v3.empty());
    CHECK(v3[0].find("s^2 != 1") != std::string::npos);
    // Valid relations but two orbits.
    auto v4 = table_violations({0, 1}, {0, 1});
    REQUIRE(!v4.empty());
    CHECK(v4.back().find("not transitive") != std::string::npos);

    CHECK_THROWS_AS(CosetRepresentation::from_parts({0, 1}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(CosetRepresentation::from_parts({0, 0}, {0, 1}),
                         doctest::Contains("invalid coset tables"), std::invalid_argument);
}

TEST_CASE("infinite-index generators exhaust the budget") {
    // T^3 and (1,0;3,1) generate a free subgroup of infinite index (the
    // index-6 coincidence is special to exponent 2); enumeration must stop
    // at the budget rather than loop.
    std::vector<UnimodularMatrix> gens = {UnimodularMatrix::t_power(3),
                                          UnimodularMatrix(1, 0, 3, 1)};
    CHECK_THROWS_WITH_AS(
        CosetRepresentation::from_generators(gens, 500),
        "index bound exceeded: coset table budget of 500 rows exhausted",
        BudgetExceededError);
    CHECK_THROWS_AS(CosetRepresentation::from_generators(gens, 0), std::invalid_argument);
}

TEST_CASE("standardization makes the table generator-independent") {
    CosetRepresentation a = CosetRepresentation::from_generators(level2_generators());
    // Same subgroup, different generating set: conjugates and products.
    const UnimodularMatrix x = UnimodularMatrix::t_power(2);
    const UnimodularMatrix y(1, 0, 2, 1);
    CosetRepresentation b = CosetRepresentation::from_generators(
        {y.inverse(), compose(x, y), compose(compose(y, x), y.inverse())});
    CHECK(a.perm_s() == b.perm_s());
    CHECK(a.perm_t() == b.perm_t());
    CHECK(pointed_isomorphic(a, b));
}

TEST_CASE("coset representatives and coset_of are consistent") {
    CosetRepresentation rep = CosetRepresentation::from_generators(level2_generators());
    for (int i = 0; i < rep.size(); ++i) {
        const UnimodularMatrix& g = rep.representative(i);
        CHECK(g.det() == 1);
        CHECK(rep.coset_of(g) == i);
    }
    // Left-multiplying a representative by a member does not move the coset.
    CHECK(rep.coset_of(compose(UnimodularMatrix::t_power(2), rep.representative(4))) == 4);
}

TEST_CASE("a non-stable subgroup is detected") {
    // Index-18 fixture: stable under neither conjugation; the mirrored group
    // has the same invariants but a different pointed action.
    std::vector<UnimodularMatrix> gens = {
        UnimodularMatrix(1, 6, 0, 1), UnimodularMatrix(3, -2, 2, -1),
        UnimodularMatrix(5, 2, 2, 1), UnimodularMatrix(7, 10, 2, 3)};
    CosetRepresentation rep = CosetRepresentation::from_generators(gens);
    SubgroupInvariants inv = invariants(rep);
    CHECK(inv.mu == 18);
    CHECK_FALSE(inv.s_stable);
    CHECK_FALSE(is_s_stable(rep));

    // Stability is equivalent to closure under the mirror automorphism.
    std::vector<UnimodularMatrix> mirrored;
    for (const auto& g : gens) mirrored.push_back(s_involution(g));
    CosetRepresentation mrep = CosetRepresentation::from_generators(mirrored);
    SubgroupInvariants minv = invariants(mrep);
    CHECK(minv.mu == inv.mu);
    CHECK(minv.genus == inv.genus);
    CHECK(minv.cusp_count == inv.cusp_count);
    CHECK_FALSE(pointed_isomorphic(rep, mrep));
    bool all_members = true;
    for (const auto& g : mirrored) all_members = all_members && membership(rep, g);
    CHECK_FALSE(all_members);
}

TEST_CASE("stability matches closure under the mirror automorphism") {
    CosetRepresentation rep = CosetRepresentation::from_generators(level2_generators());
    for (const auto& g : level2_generators()) CHECK(membership(rep, s_involution(g)));
}

TEST_CASE("Hecke-type group with odd widths") {
    // <T, (1,0;4,1)>: index 6, cusps of widths 1, 4, 1 — odd widths are fine
    // for every query including the parabolic system.
    CosetRepresentation rep = CosetRepresentation::from_generators(
        {UnimodularMatrix::gen_t(), UnimodularMatrix(1, 0, 4, 1)});
    SubgroupInvariants inv = invariants(rep);
    CHECK(inv.mu == 6);
    CHECK(inv.cusp_count == 3);
    CHECK(inv.genus == 0);
    CHECK(inv.torsion_free);
    auto cc = cusps(rep);
    std::multiset<int> widths;
    for (const auto& c : cc) widths.insert(c.width);
    CHECK(widths == std::multiset<int>{1, 1, 4});

    ParabolicSystem sys = parabolic_generator_system(rep);
    CHECK(sys.elements.size() == 3);
    UnimodularMatrix prod = UnimodularMatrix::identity();
    for (const auto& e : sys.elements) prod = compose(prod, e.matrix);
    CHECK(psl_equal(prod, UnimodularMatrix::identity()));
}

TEST_CASE("cusp stabilizers of the level-2 group") {
    CosetRepresentation rep = CosetRepresentation::from_generators(level2_generators());
    auto cc = cusps(rep);
    REQUIRE(cc.size() == 3);

    CHECK(cusp_stabilizer(rep, cc[0]) == UnimodularMatrix(1, 2, 0, 1));
    CHECK(cusp_stabilizer(rep, cc[1]) == UnimodularMatrix(1, 0, -2, 1));
    CHECK(cusp_stabilizer(rep, cc[2]) == UnimodularMatrix(-1, 2, -2, 3));

    for (const auto& c : cc) {
        UnimodularMatrix st = cusp_stabilizer(rep, c);
        CHECK(membership(rep, st));
        CHECK(is_parabolic(st));
        ParabolicNormalForm nf = parabolic_normal_form(st);
        CHECK(mpz_class(abs(nf.shift)) == c.width);
        // It fixes the cusp representative.
        CHECK(mobius_act(ProjectiveClass(st), c.representative) == c.representative);
    }
}

TEST_CASE("parabolic generating system of the level-2 group") {
    CosetRepresentation rep = CosetRepresentation::from_generators(level2_generators());
    ParabolicSystem sys = parabolic_generator_system(rep);
    REQUIRE(sys.elements.size() == 3);

    CHECK(sys.elements[0].matrix == UnimodularMatrix(1, 2, 0, 1));
    CHECK(sys.elements[0].cusp_index == 0);
    CHECK(sys.elements[1].matrix == UnimodularMatrix(3, 2, -2, -1));
    CHECK(sys.elements[1].cusp_index == 2);
    CHECK(sys.elements[2].matrix == UnimodularMatrix(1, 0, -2, 1));
    CHECK(sys.elements[2].cusp_index == 1);

    // Defining properties: one parabolic member per cusp, widths match,
    // ordered product is the identity in the quotient.
    std::set<int> seen;
    UnimodularMatrix prod = UnimodularMatrix::identity();
    for (const auto& e : sys.elements) {
        CHECK(membership(rep, e.matrix));
        CHECK(is_parabolic(e.matrix));
        CHECK(seen.insert(e.cusp_index).second);
        CHECK(e.width == cusps(rep)[e.cusp_index].width);
        CHECK(parabolic_normal_form(e.matrix) == ParabolicNormalForm{+1, e.width});
        prod = compose(prod, e.matrix);
    }
    CHECK(psl_equal(prod, UnimodularMatrix::identity()));
}

TEST_CASE("parabolic system rejects unsuitable groups") {
    // The full group has torsion.
    CosetRepresentation full = CosetRepresentation::from_generators(
        {UnimodularMatrix::gen_s(), UnimodularMatrix::gen_t()});
    CHECK_THROWS_WITH_AS(parabolic_generator_system(full),
                         doctest::Contains("torsion-free genus-zero"), std::invalid_argument);
}

TEST_CASE("pointed isomorphism distinguishes distinct subgroups") {
    CosetRepresentation a = CosetRepresentation::from_generators(level2_generators());
    CosetRepresentation b = CosetRepresentation::from_generators(
        {UnimodularMatrix::gen_t(), UnimodularMatrix(1, 0, 4, 1)});
    CHECK_FALSE(pointed_isomorphic(a, b));   // same index, different groups
    CHECK(pointed_isomorphic(a, a));
}
