#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psca/groups.hpp"
#include "psca/incidence.hpp"
#include "psca/perm.hpp"

namespace psca {

// A candidate or verified perfect sequence covering array. The sequence list
// is a multiset: repeated entries are allowed.
struct PscaInstance {
    int n = 0, k = 0;
    int64_t lambda = 0;
    std::vector<Perm> sequences;
};

struct ColumnDiag {
    int64_t rank = 0;
    KSubseq tuple;
    int64_t count = 0;
};

struct VerifyResult {
    bool valid = false;
    int64_t lambda = 0;           // inferred from |P| = k! * lambda
    std::string reason;           // set when invalid
    std::vector<ColumnDiag> badColumns;  // up to 10 mismatched columns, by rank

    std::string message() const;
};

// Per-column coverage counts computed directly from the sequences (no
// incidence matrix involved).
RepetitionVector repetitionOf(int n, int k, std::span<const Perm> sequences);

// Accepts iff |P| = k!*lambda for an integer lambda >= 1 and every column of
// the repetition vector equals lambda. An expected lambda, when given, is
// cross-checked against the inferred one.
VerifyResult verify(int n, int k, std::span<const Perm> sequences,
                    std::optional<int64_t> expectedLambda = {});

// Multiset union; lambdas add.
PscaInstance unionInstances(const PscaInstance& p, const PscaInstance& q);

// Removes the 1-based symbol from every sequence and renumbers the symbols
// above it down by one; (n,k,lambda) -> (n-1,k,lambda). Requires k <= n-1.
PscaInstance deleteSymbol(const PscaInstance& p, int symbol);

// Same sequences viewed at k-1: (n,k,lambda) -> (n,k-1,k*lambda). Requires
// k >= 3.
PscaInstance reinterpret(const PscaInstance& p);

// Right action: every sequence x becomes compose(x, sigma). Preserves
// lambda.
PscaInstance relabel(const PscaInstance& p, const Perm& sigma);

struct CosetStructure {
    bool structured = false;
    std::vector<Perm> reps;  // lexicographically least coset members, ascending
};

// Structured iff the (repeat-free) sequence set is exactly a union of
// |P|/|G| distinct cosets of G on the given side.
CosetStructure detectCosetStructure(const PscaInstance& p, const Subgroup& G,
                                    CosetSide side);

}  // namespace psca
