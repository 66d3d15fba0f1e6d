#include <set>

#include "doctest.h"
#include "psca/psca_ops.hpp"
#include "psca/search.hpp"
#include "test_helpers.hpp"

using namespace psca;
using namespace psca::test;

namespace {

std::vector<Perm> rowsToSeqs(const IncidenceMatrix& m,
                             const std::vector<uint32_t>& rows) {
    std::vector<Perm> out;
    for (uint32_t r : rows) out.push_back(m.rowLabels()[r]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("plain (4,3,1) search equals the brute-force solution set") {
    IncidenceMatrix m = IncidenceMatrix::plain(4, 3);
    SearchReport rep = search(plainProblem(m, 1));
    CHECK(rep.termination == Termination::exhausted);

    // brute force: try every 5-subset of S_4 minus the identity
    std::vector<Perm> others;
    for (const Perm& p : allPerms(4))
        if (!p.isIdentity()) others.push_back(p);
    REQUIRE(others.size() == 23);
    std::set<std::vector<Perm>> brute;
    std::vector<int> idx = {0, 1, 2, 3, 4};
    while (true) {
        std::vector<Perm> cand = {Perm::identity(4)};
        for (int i : idx) cand.push_back(others[static_cast<size_t>(i)]);
        if (verify(4, 3, cand).valid) brute.insert(sortedCopy(cand));
        int i = 4;
        while (i >= 0 && idx[static_cast<size_t>(i)] == 18 + i) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < 5; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
    CHECK(brute.size() == 3);

    std::set<std::vector<Perm>> engine;
    for (const auto& rows : rep.solutions) engine.insert(rowsToSeqs(m, rows));
    CHECK(engine == brute);
}

TEST_CASE("plain (5,3,1) has no solutions") {
    IncidenceMatrix m = IncidenceMatrix::plain(5, 3);
    SearchReport rep = search(plainProblem(m, 1));
    CHECK(rep.solutions.empty());
    CHECK(rep.termination == Termination::exhausted);
    CHECK(rep.nodesVisited > 0);
}

TEST_CASE("plain (5,3,2) finds sound solutions including the known array") {
    IncidenceMatrix m = IncidenceMatrix::plain(5, 3);
    SearchReport rep = search(plainProblem(m, 2));
    CHECK(rep.termination == Termination::exhausted);
    REQUIRE(!rep.solutions.empty());
    for (const auto& rows : rep.solutions) {
        auto seqs = rowsToSeqs(m, rows);
        CHECK(verify(5, 3, seqs).lambda == 2);
        CHECK(seqs.front() == Perm::identity(5));  // root fixing
    }
    std::vector<Perm> known =
        sortedCopy(readSequenceFile(corpusPath("psca_5_3_2.txt")).flat());
    bool found = false;
    for (const auto& rows : rep.solutions)
        if (rowsToSeqs(m, rows) == known) found = true;
    CHECK(found);

    SUBCASE("two runs are identical") {
        SearchReport rep2 = search(plainProblem(m, 2));
        CHECK(rep2.solutions == rep.solutions);
        CHECK(rep2.nodesVisited == rep.nodesVisited);
        CHECK(rep2.branchesPruned == rep.branchesPruned);
    }
    SUBCASE("a 4-thread run yields the same set and counters") {
        SearchLimits lim;
        lim.threads = 4;
        SearchReport rep4 = search(plainProblem(m, 2), lim);
        CHECK(rep4.solutions == rep.solutions);
        CHECK(rep4.nodesVisited == rep.nodesVisited);
        CHECK(rep4.branchesPruned == rep.branchesPruned);
    }
}

TEST_CASE("plain (6,4,1) finds a 24-sequence solution under a solution limit") {
    IncidenceMatrix m = IncidenceMatrix::plain(6, 4);
    SearchLimits lim;
    lim.maxSolutions = 1;
    SearchReport rep = search(plainProblem(m, 1), lim);
    CHECK(rep.termination == Termination::solutionLimit);
    REQUIRE(rep.solutions.size() == 1);
    auto seqs = rowsToSeqs(m, rep.solutions[0]);
    CHECK(seqs.size() == 24);
    CHECK(verify(6, 4, seqs).lambda == 1);
}

TEST_CASE("time limit is honored") {
    IncidenceMatrix m = IncidenceMatrix::plain(6, 3);
    SearchLimits lim;
    lim.timeLimitSec = 0.05;
    SearchReport rep = search(plainProblem(m, 2), lim);
    CHECK(rep.termination == Termination::timeLimit);
    CHECK(rep.wallTimeSec < 5.0);
}

TEST_CASE("state coherence: incremental state equals recomputation") {
    IncidenceMatrix m = IncidenceMatrix::plain(5, 3);
    SearchProblem pb = plainProblem(m, 2);
    int64_t checked = 0;
    NodeHook hook = [&](const SearchStateView& v) {
        if (checked >= 400) return;
        ++checked;
        const int64_t lambda = 2;
        std::vector<int32_t> r(static_cast<size_t>(m.colCount()), 0);
        for (uint32_t x : v.chosenRows)
            for (const auto& e : m.row(x)) r[e.index] += static_cast<int32_t>(e.count);
        std::vector<uint32_t> liveY;
        for (int64_t c = 0; c < m.colCount(); ++c)
            if (r[static_cast<size_t>(c)] < lambda)
                liveY.push_back(static_cast<uint32_t>(c));
        REQUIRE(std::vector<uint32_t>(v.liveColumns.begin(), v.liveColumns.end()) ==
                liveY);
        for (uint32_t y : liveY) REQUIRE(v.coverage[y] == r[y]);

        std::set<uint32_t> chosen(v.chosenRows.begin(), v.chosenRows.end());
        std::vector<uint32_t> cand;
        for (int64_t row = 0; row < m.rowCount(); ++row) {
            if (chosen.count(static_cast<uint32_t>(row))) continue;
            bool ok = true;
            for (const auto& e : m.row(row))
                if (static_cast<int32_t>(e.count) + r[e.index] > lambda) ok = false;
            if (ok) cand.push_back(static_cast<uint32_t>(row));
        }
        REQUIRE(std::vector<uint32_t>(v.candidateRows.begin(),
                                      v.candidateRows.end()) == cand);

        std::vector<int32_t> mPot(static_cast<size_t>(m.colCount()), 0);
        for (uint32_t row : cand)
            for (const auto& e : m.row(row)) mPot[e.index] += static_cast<int32_t>(e.count);
        for (uint32_t y : liveY) REQUIRE(v.potential[y] == mPot[y]);
    };
    search(pb, {}, hook);
    CHECK(checked >= 400);
}

TEST_CASE("monotonicity along root-to-node paths") {
    IncidenceMatrix m = IncidenceMatrix::plain(5, 3);
    SearchProblem pb = plainProblem(m, 2);
    // depth -> snapshot sizes of the most recent node at that depth
    std::vector<size_t> ySize, lSize;
    std::vector<std::vector<int32_t>> cover;
    NodeHook hook = [&](const SearchStateView& v) {
        size_t d = v.chosenRows.size();
        ySize.resize(std::max(ySize.size(), d + 1));
        lSize.resize(std::max(lSize.size(), d + 1));
        cover.resize(std::max(cover.size(), d + 1));
        ySize[d] = v.liveColumns.size();
        lSize[d] = v.candidateRows.size();
        cover[d].assign(v.coverage.begin(), v.coverage.end());
        if (d > 0) {
            CHECK(ySize[d] <= ySize[d - 1]);
            CHECK(lSize[d] < lSize[d - 1]);
            for (size_t c = 0; c < cover[d].size(); ++c)
                CHECK(cover[d][c] >= cover[d - 1][c]);
        }
    };
    search(pb, {}, hook);
}

TEST_CASE("left-coset search (7,3,2) over the order-6 subgroup") {
    Subgroup s3 = Subgroup::closure(7, perms({"3275641", "4261735"}));
    CosetSearchRequest req;
    req.n = 7;
    req.k = 3;
    req.lambda = 2;
    req.side = CosetSide::left;
    req.groups = {s3};
    auto outcomes = searchCosets(req);
    REQUIRE(outcomes.size() == 1);
    const auto& oc = outcomes[0];
    CHECK(oc.skipReason.empty());
    CHECK(oc.name == "S3");
    REQUIRE(!oc.solutionSequences.empty());
    for (const auto& seqs : oc.solutionSequences) {
        CHECK(seqs.size() == 12);
        CHECK(verify(7, 3, seqs).lambda == 2);
    }
    for (const auto& reps : oc.solutionReps) CHECK(reps.size() == 2);
    // the known array appears among the solutions
    std::vector<Perm> known =
        sortedCopy(readSequenceFile(corpusPath("psca_7_3_2.txt")).flat());
    bool found = false;
    for (const auto& seqs : oc.solutionSequences)
        if (seqs == known) found = true;
    CHECK(found);
}

TEST_CASE("left-coset search (8,3,4) over SL(2,3): single-coset solutions") {
    Subgroup g = Subgroup::closure(8, perms({"67142358", "46572381"}));
    REQUIRE(g.order() == 24);
    CosetSearchRequest req;
    req.n = 8;
    req.k = 3;
    req.lambda = 4;
    req.side = CosetSide::left;
    req.groups = {g};
    auto outcomes = searchCosets(req);
    REQUIRE(outcomes.size() == 1);
    const auto& oc = outcomes[0];
    CHECK(oc.skipReason.empty());
    REQUIRE(!oc.solutionSequences.empty());
    std::vector<Perm> known =
        sortedCopy(readSequenceFile(corpusPath("psca_8_3_4.txt")).flat());
    bool found = false;
    for (const auto& seqs : oc.solutionSequences) {
        CHECK(verify(8, 3, seqs).lambda == 4);
        if (seqs == known) found = true;
    }
    CHECK(found);
}

TEST_CASE("trivial-group equivalence on (5,3,2)") {
    // The identity-containing array is a union of left cosets of <13254>,
    // so the coset search and the plain search agree on existence.
    Subgroup c2 = Subgroup::closure(5, perms({"13254"}));
    CosetSearchRequest req;
    req.n = 5;
    req.k = 3;
    req.lambda = 2;
    req.side = CosetSide::left;
    req.groups = {c2};
    auto outcomes = searchCosets(req);
    REQUIRE(outcomes.size() == 1);
    CHECK(!outcomes[0].solutionSequences.empty());
    for (const auto& seqs : outcomes[0].solutionSequences)
        CHECK(verify(5, 3, seqs).valid);
}

TEST_CASE("subgroups that cannot fit are skipped with a reason") {
    Subgroup c5 = Subgroup::closure(5, perms({"23451"}));
    CosetSearchRequest req;
    req.n = 5;
    req.k = 3;
    req.lambda = 2;  // k!*lambda = 12, not divisible by 5
    req.side = CosetSide::left;
    req.groups = {c5, Subgroup::trivial(5)};
    auto outcomes = searchCosets(req);
    REQUIRE(outcomes.size() == 2);
    for (const auto& oc : outcomes) {
        CHECK(!oc.skipReason.empty());
        CHECK(oc.report.solutions.empty());
    }
}

TEST_CASE("right-coset problems are dropped when the subgroup row exceeds lambda") {
    Subgroup g = Subgroup::closure(7, perms({"4735621"}));
    IncidenceMatrix m = IncidenceMatrix::forGroup(7, 4, g, CosetSide::right);
    CHECK(!groupProblem(m, g, 1).has_value());  // C6 covers some tuple twice
    CHECK(groupProblem(m, g, 2).has_value());
}

TEST_CASE("left-coset exclusions honor the lambda cap") {
    Subgroup g = Subgroup::closure(5, perms({"43215"}));
    IncidenceMatrix m = IncidenceMatrix::forGroup(5, 3, g, CosetSide::left);
    auto pb = groupProblem(m, g, 1);
    REQUIRE(pb.has_value());
    for (uint32_t r : pb->excludedRows) {
        bool hasBig = false;
        for (const auto& e : m.row(r))
            if (e.count > 1) hasBig = true;
        CHECK(hasBig);
    }
    // excluded rows never appear in solutions of higher-lambda searches
    SearchReport rep = search(*pb);
    for (const auto& rows : rep.solutions)
        for (uint32_t r : rows)
            CHECK(std::find(pb->excludedRows.begin(), pb->excludedRows.end(), r) ==
                  pb->excludedRows.end());
}
