#include <set>

#include "doctest.h"
#include "psca/groups.hpp"
#include "test_helpers.hpp"

using namespace psca;
using namespace psca::test;

TEST_CASE("closure orders match the known generator sets") {
    CHECK(Subgroup::closure(5, perms({"43215"})).order() == 2);
    CHECK(Subgroup::closure(7, perms({"4735621"})).order() == 6);
    CHECK(Subgroup::closure(6, perms({"154326", "216543"})).order() == 12);
    Subgroup s4 = Subgroup::closure(7, perms({"7261354", "4216537"}));
    CHECK(s4.order() == 24);
    std::set<int64_t> orders;
    for (const Perm& p : s4.elements()) orders.insert(p.order());
    CHECK(orders == std::set<int64_t>{1, 2, 3, 4});
}

TEST_CASE("coset expansion") {
    Subgroup g = Subgroup::closure(7, perms({"4735621"}));
    CHECK(expandCoset(g, P("1254736"), CosetSide::left) ==
          sortedCopy(perms({"1254736", "2517634", "4765132", "5126437",
                            "6472531", "7641235"})));
    CHECK(expandCoset(g, Perm::identity(7), CosetSide::left) == g.elements());
    Subgroup c2 = Subgroup::closure(5, perms({"43215"}));
    CHECK(expandCoset(c2, P("23514"), CosetSide::left) ==
          sortedCopy(perms({"23514", "32541"})));
}

TEST_CASE("conjugation") {
    std::mt19937 rng(11);
    Subgroup g = Subgroup::closure(6, perms({"154326", "216543"}));
    CHECK(conjugateSubgroup(g, Perm::identity(6)) == g);
    for (int it = 0; it < 20; ++it) {
        Perm sigma = randomPerm(6, rng);
        Subgroup h = conjugateSubgroup(g, sigma);
        CHECK(h.order() == g.order());
        CHECK(h.signature() == g.signature());
        CHECK(conjugateSubgroup(h, sigma.inverse()) == g);
    }
}

TEST_CASE("conjugacy test") {
    Subgroup a = Subgroup::closure(5, perms({"21345"}));  // a transposition
    Subgroup b = Subgroup::closure(5, perms({"12354"}));
    CHECK(areConjugate(a, a));
    CHECK(areConjugate(a, b));
    // Same order, different cycle type: the single vs the double
    // transposition in S_4.
    Subgroup c = Subgroup::closure(4, perms({"2134"}));
    Subgroup d = Subgroup::closure(4, perms({"2143"}));
    CHECK_FALSE(areConjugate(c, d));
    // Both of these are generated by double transpositions of S_5.
    CHECK(areConjugate(Subgroup::closure(5, perms({"34125"})),
                       Subgroup::closure(5, perms({"43215"}))));
}

TEST_CASE("Lagrange and coset partition on random subgroups") {
    std::mt19937 rng(21);
    for (int n = 3; n <= 6; ++n) {
        for (int it = 0; it < 25; ++it) {
            std::vector<Perm> gens = {randomPerm(n, rng)};
            if (rng() % 2) gens.push_back(randomPerm(n, rng));
            Subgroup g = Subgroup::closure(n, gens);
            CHECK(factorial(n) % g.order() == 0);

            CosetSide side = (rng() % 2) ? CosetSide::left : CosetSide::right;
            CosetDecomposition dec = decomposeCosets(g, side);
            CHECK(static_cast<int64_t>(dec.reps.size()) == factorial(n) / g.order());
            std::set<Perm> seen;
            for (const Perm& rep : dec.reps) {
                auto coset = expandCoset(g, rep, side);
                CHECK(coset.front() == rep);  // rep is the least member
                for (const Perm& x : coset) CHECK(seen.insert(x).second);
            }
            CHECK(static_cast<int64_t>(seen.size()) == factorial(n));
        }
    }
}

TEST_CASE("subgroup class counts for small n") {
    CHECK(enumerateSubgroupClasses(2).size() == 1);
    auto n3 = enumerateSubgroupClasses(3);
    REQUIRE(n3.size() == 3);
    CHECK(n3[0].order() == 6);
    CHECK(n3[1].order() == 3);
    CHECK(n3[2].order() == 2);

    auto n4 = enumerateSubgroupClasses(4);
    REQUIRE(n4.size() == 10);
    std::multiset<int64_t> orders;
    for (const auto& g : n4) orders.insert(g.order());
    CHECK(orders == std::multiset<int64_t>{2, 2, 3, 4, 4, 4, 6, 8, 12, 24});

    CHECK(enumerateSubgroupClasses(5).size() == 18);
}

TEST_CASE("subgroup classes are irredundant and complete for n <= 5") {
    for (int n = 4; n <= 5; ++n) {
        auto classes = enumerateSubgroupClasses(n);
        for (size_t i = 0; i < classes.size(); ++i)
            for (size_t j = i + 1; j < classes.size(); ++j)
                if (classes[i].order() == classes[j].order())
                    CHECK_FALSE(areConjugate(classes[i], classes[j]));
        // every cyclic subgroup is conjugate to some representative
        for (const Perm& sigma : allPerms(n)) {
            if (sigma.isIdentity()) continue;
            Subgroup c = Subgroup::closure(n, {sigma});
            bool matched = false;
            for (const auto& rep : classes)
                if (rep.order() == c.order() && areConjugate(rep, c)) {
                    matched = true;
                    break;
                }
            CHECK(matched);
        }
    }
}

TEST_CASE("bounded enumeration agrees with the full one") {
    auto full = enumerateSubgroupClasses(5);
    ClassEnumOptions opts;
    opts.maxOrder = 6;
    auto bounded = enumerateSubgroupClasses(5, opts);
    std::vector<const Subgroup*> expect;
    for (const auto& g : full)
        if (g.order() <= 6) expect.push_back(&g);
    REQUIRE(bounded.size() == expect.size());
    for (size_t i = 0; i < bounded.size(); ++i) {
        CHECK(bounded[i].order() == expect[i]->order());
        CHECK(areConjugate(bounded[i], *expect[i]));
    }
}

TEST_CASE("cyclic-only enumeration") {
    auto cyc = enumerateSubgroupClasses(5, {.maxOrder = {}, .cyclicOnly = true});
    // cycle types of S_5 with order > 1: 2, 2+2, 3, 3+2, 4, 5
    CHECK(cyc.size() == 6);
    for (const auto& g : cyc) {
        int64_t maxOrd = 0;
        for (const Perm& p : g.elements()) maxOrd = std::max(maxOrd, p.order());
        CHECK(maxOrd == g.order());
    }
}

TEST_CASE("enumeration requires a bound for n >= 8") {
    CHECK_THROWS_AS(enumerateSubgroupClasses(8), std::invalid_argument);
}

TEST_CASE("conjugacy class members") {
    Subgroup g = Subgroup::closure(4, perms({"2134"}));
    auto members = conjugacyClassMembers(g);
    CHECK(members.size() == 6);  // one per transposition of S_4
    for (const auto& m : members) CHECK(areConjugate(g, m));
}

TEST_CASE("advisory names") {
    CHECK(advisoryGroupName(Subgroup::closure(5, perms({"43215"}))) == "C2");
    CHECK(advisoryGroupName(Subgroup::closure(7, perms({"4735621"}))) == "C6");
    CHECK(advisoryGroupName(Subgroup::closure(7, perms({"1576342"}))) == "C4");
    CHECK(advisoryGroupName(Subgroup::closure(7, perms({"3275641", "4261735"}))) == "S3");
    CHECK(advisoryGroupName(Subgroup::closure(6, perms({"154326", "216543"}))) == "D12");
    CHECK(advisoryGroupName(Subgroup::closure(7, perms({"7261354", "4216537"}))) == "S4");
    CHECK(advisoryGroupName(Subgroup::closure(8, perms({"67142358", "46572381"}))) ==
          "SL(2,3)");
    CHECK(advisoryGroupName(Subgroup::closure(5, perms({"34125", "43215"}))) == "C2xC2");
    CHECK(advisoryGroupName(Subgroup::closure(6, perms({"125634", "346521", "345612"}))) ==
          "S4");
}
