#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psca/groups.hpp"
#include "psca/incidence.hpp"

namespace psca {

struct SearchLimits {
    int64_t maxSolutions = 0;  // 0 = unlimited
    double timeLimitSec = 0;   // 0 = none
    int threads = 1;
};

enum class Termination { exhausted, solutionLimit, timeLimit };
const char* terminationName(Termination t);

// A configured run of the backtracking engine over an incidence matrix.
// targetRows = k! * lambda / maxEntry; the plain search is the group search
// with the trivial group.
struct SearchProblem {
    const IncidenceMatrix* matrix = nullptr;
    int64_t lambda = 1;
    int64_t targetRows = 0;
    // When nonempty, replaces the branch set at the first level.
    std::vector<uint32_t> rootRows;
    // Removed from the initial candidate set (rows with an entry > lambda).
    std::vector<uint32_t> excludedRows;
};

// Plain search: root fixed to the identity sequence 12..n.
SearchProblem plainProblem(const IncidenceMatrix& m, int64_t lambda);

// Group-matrix search. Left side: rows with an entry greater than lambda are
// excluded up front. Right side: the root is fixed to the coset of the
// subgroup itself; returns nullopt when that row has an entry greater than
// lambda (no union of right cosets can then exist).
std::optional<SearchProblem> groupProblem(const IncidenceMatrix& m,
                                          const Subgroup& G, int64_t lambda);

// Snapshot of the incremental engine state offered to the node hook;
// coverage/potential are full column-width arrays, valid at live columns.
struct SearchStateView {
    std::span<const uint32_t> chosenRows;     // X
    std::span<const uint32_t> liveColumns;    // Y, ascending
    std::span<const int32_t> coverage;        // r_y
    std::span<const int32_t> potential;       // m_y
    std::span<const uint32_t> candidateRows;  // L, ascending
};
using NodeHook = std::function<void(const SearchStateView&)>;

struct SearchReport {
    // Deduplicated, each sorted ascending; list sorted lexicographically.
    std::vector<std::vector<uint32_t>> solutions;
    int64_t nodesVisited = 0;
    int64_t branchesPruned = 0;
    double wallTimeSec = 0;
    Termination termination = Termination::exhausted;
};

// Exhaustive within limits: with no limits, visits every solution extending
// the root fixing at least once. Branching follows the maximal-coverage /
// minimal-potential column rule with ties broken by least column rank, and
// rows in ascending index order. With threads > 1 the tree is split below
// the first branching levels; the solution set and counters of an
// uninterrupted run are schedule-independent.
SearchReport search(const SearchProblem& problem, const SearchLimits& limits = {},
                    const NodeHook& hook = {});

// ----- union-of-cosets driver -----

struct GroupSearchOutcome {
    Subgroup group;
    std::string name;        // advisory isomorphism label, may be empty
    std::string skipReason;  // nonempty when the subgroup was not searched
    SearchReport report;
    // Expanded sequence lists (cosets expanded, canonical sorted), parallel
    // to report.solutions, and the coset representatives per solution.
    std::vector<std::vector<Perm>> solutionSequences;
    std::vector<std::vector<Perm>> solutionReps;
};

struct CosetSearchRequest {
    int n = 0, k = 0;
    int64_t lambda = 1;
    CosetSide side = CosetSide::left;
    // Candidate subgroups. For the left side pass one representative per
    // conjugacy class; for the right side pass all subgroups of interest.
    std::vector<Subgroup> groups;
    SearchLimits limits;  // timeLimitSec is a global budget across subgroups
    bool stopOnHit = false;
    int64_t memoryBudget = IncidenceMatrix::kDefaultBudget;
};

// Searches the given subgroups in decreasing order of |G| (ties by element
// list). Subgroups whose order does not divide k!*lambda are skipped with a
// reason, as are right-side subgroups whose own coset row exceeds lambda.
std::vector<GroupSearchOutcome> searchCosets(const CosetSearchRequest& req);

// Candidate subgroups for searchCosets built from class enumeration: class
// representatives for the left side, all class members for the right side.
// Orders outside [minOrder, maxOrder] are dropped; non-divisors of
// k!*lambda are kept so the driver can report them as skipped.
std::vector<Subgroup> enumeratedCosetGroups(int n, int64_t kFactLambda,
                                            CosetSide side, int64_t minOrder,
                                            std::optional<int64_t> maxOrder,
                                            bool cyclicOnly);

}  // namespace psca
