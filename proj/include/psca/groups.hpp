#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psca/perm.hpp"

namespace psca {

// With compose(a, b) = "a then b", the left coset x*G is {compose(x, g)} and
// the right coset G*x is {compose(g, x)}.
enum class CosetSide { left, right };

const char* sideName(CosetSide side);

class Subgroup {
public:
    Subgroup() = default;

    // Smallest subgroup of S_n containing the generators (breadth-first
    // product closure). An empty generator list gives the trivial subgroup.
    static Subgroup closure(int n, std::vector<Perm> generators);
    static Subgroup trivial(int n);

    int n() const { return n_; }
    int64_t order() const { return static_cast<int64_t>(elems_.size()); }
    bool isTrivial() const { return elems_.size() == 1; }
    // Sorted ascending (lexicographically); always contains the identity.
    const std::vector<Perm>& elements() const { return elems_; }
    const std::vector<Perm>& generators() const { return gens_; }
    bool contains(const Perm& p) const;

    // (order, sorted multiset of element orders): conjugation invariant used
    // to pre-bucket class deduplication.
    std::vector<int64_t> signature() const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.n_ == b.n_ && a.elems_ == b.elems_;
    }

private:
    friend Subgroup subgroupFromSortedElements(int n, std::vector<Perm> elems,
                                               std::vector<Perm> gens);
    int n_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;
};

// Internal trusted constructor; elems must be a closed, sorted element set.
Subgroup subgroupFromSortedElements(int n, std::vector<Perm> elems,
                                    std::vector<Perm> gens);

// left: {compose(rep, g) : g in G}; right: {compose(g, rep) : g in G}.
// Returned sorted.
std::vector<Perm> expandCoset(const Subgroup& G, const Perm& rep,
                              CosetSide side);

// {compose(compose(sigma, g), sigma^-1) : g in G}.
Subgroup conjugateSubgroup(const Subgroup& G, const Perm& sigma);

// True iff sigma G sigma^-1 = H for some sigma in S_n. Backtracks over the
// image of a probe element of G; only elements of H with matching cycle type
// are candidate images.
bool areConjugate(const Subgroup& G, const Subgroup& H);

struct CosetDecomposition {
    CosetSide side = CosetSide::left;
    // Lexicographically least member of each coset, ascending; together the
    // cosets partition S_n.
    std::vector<Perm> reps;
};
CosetDecomposition decomposeCosets(const Subgroup& G, CosetSide side);

struct ClassEnumOptions {
    // Upper bound on subgroup order during cyclic extension. Enumeration is
    // complete for all classes of order <= maxOrder. Required for n >= 8.
    std::optional<int64_t> maxOrder;
    // Only classes of cyclic subgroups (no extension step).
    bool cyclicOnly = false;
};

// One representative per conjugacy class of nontrivial subgroups of S_n,
// sorted by (order descending, element list ascending). Seeds with the
// classes of prime-order cyclic subgroups, then repeatedly extends each
// class representative H by elements g outside H to closure(H + g),
// deduplicating by signature and then by explicit conjugacy.
std::vector<Subgroup> enumerateSubgroupClasses(int n,
                                               const ClassEnumOptions& opts = {});

// All distinct conjugates sigma G sigma^-1 over sigma in S_n, sorted by
// element list ascending.
std::vector<Subgroup> conjugacyClassMembers(const Subgroup& G);

// Advisory isomorphism-type label from (order, element-order multiset),
// maintained for orders <= 24; empty string when unknown. Never used in
// logic.
std::string advisoryGroupName(const Subgroup& G);

}  // namespace psca
