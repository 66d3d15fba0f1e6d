#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "psca/groups.hpp"
#include "psca/perm.hpp"

namespace psca {

// Thrown when an estimated build footprint exceeds the configured budget.
struct BudgetError : std::runtime_error {
    BudgetError(int64_t required, int64_t allowed)
        : std::runtime_error("estimated matrix footprint " +
                             std::to_string(required) +
                             " bytes exceeds memory budget " +
                             std::to_string(allowed) + " bytes"),
          requiredBytes(required),
          allowedBytes(allowed) {}
    int64_t requiredBytes;
    int64_t allowedBytes;
};

// Per-column coverage counts of a row multiset.
struct RepetitionVector {
    int n = 0, k = 0;
    std::vector<int64_t> entries;
};

// Sparse coverage-count matrix: rows are n-sequences (plain) or cosets of a
// subgroup (group form), columns are the n!/(n-k)! ordered k-subsequences in
// lexicographic order. Stored as positions of nonzero entries per row and
// per column, with a count per nonzero. Immutable after build.
class IncidenceMatrix {
public:
    struct Entry {
        uint32_t index;  // column rank in row lists, row index in column lists
        uint32_t count;
    };

    static constexpr int64_t kDefaultBudget = 8LL * (1LL << 30);

    // Rows enumerate S_n in lexicographic order; entry (x,y) = 1 iff x
    // covers y.
    static IncidenceMatrix plain(int n, int k,
                                 int64_t memoryBudget = kDefaultBudget);

    // One row per coset of G; entry (x,y) counts how many coset members
    // cover y. Row labels are the lexicographically least coset members,
    // ascending.
    static IncidenceMatrix forGroup(int n, int k, const Subgroup& G,
                                    CosetSide side,
                                    int64_t memoryBudget = kDefaultBudget);

    int n() const { return n_; }
    int k() const { return k_; }
    int64_t rowCount() const { return static_cast<int64_t>(rowLabels_.size()); }
    int64_t colCount() const { return colCount_; }
    // 1 for the plain matrix, |G| for a group matrix.
    int64_t maxEntry() const { return maxEntry_; }
    CosetSide side() const { return side_; }

    const std::vector<Perm>& rowLabels() const { return rowLabels_; }
    // Entries sorted by column rank.
    std::span<const Entry> row(int64_t r) const {
        return {rowEntries_.data() + rowPtr_[static_cast<size_t>(r)],
                rowEntries_.data() + rowPtr_[static_cast<size_t>(r) + 1]};
    }
    // Entries sorted by row index.
    std::span<const Entry> col(int64_t c) const {
        return {colEntries_.data() + colPtr_[static_cast<size_t>(c)],
                colEntries_.data() + colPtr_[static_cast<size_t>(c) + 1]};
    }
    int64_t rowSum(int64_t r) const;
    // Index of the row labeled by p, or -1.
    int64_t findRow(const Perm& p) const;

private:
    int n_ = 0, k_ = 0;
    int64_t colCount_ = 0;
    int64_t maxEntry_ = 1;
    CosetSide side_ = CosetSide::left;
    std::vector<Perm> rowLabels_;
    std::vector<int64_t> rowPtr_, colPtr_;
    std::vector<Entry> rowEntries_, colEntries_;

    void buildColumnsFromRows();
};

// Entrywise sum of the selected rows (with counts).
RepetitionVector repetitionVector(const IncidenceMatrix& m,
                                  std::span<const int64_t> rows);

}  // namespace psca
