#include "psca/incidence.hpp"

#include <algorithm>
#include <numeric>

namespace psca {

namespace {

void checkParams(int n, int k) {
    if (k < 2 || k > n || n > Perm::kMaxN)
        throw std::invalid_argument("incidence matrix requires 2 <= k <= n <= " +
                                    std::to_string(Perm::kMaxN));
}

void checkBudget(int64_t rows, int64_t nnzUpper, int64_t budget) {
    int64_t bytes = nnzUpper * static_cast<int64_t>(sizeof(IncidenceMatrix::Entry)) * 2 +
                    rows * static_cast<int64_t>(sizeof(Perm)) + rows * 8 + 64;
    if (bytes > budget) throw BudgetError(bytes, budget);
}

}  // namespace

IncidenceMatrix IncidenceMatrix::plain(int n, int k, int64_t memoryBudget) {
    checkParams(n, k);
    const int64_t rows = factorial(n);
    const int64_t perRow = binomial(n, k);
    checkBudget(rows, rows * perRow, memoryBudget);

    IncidenceMatrix m;
    m.n_ = n;
    m.k_ = k;
    m.colCount_ = subseqCount(n, k);
    m.maxEntry_ = 1;
    m.rowLabels_.reserve(static_cast<size_t>(rows));
    m.rowPtr_.reserve(static_cast<size_t>(rows) + 1);
    m.rowPtr_.push_back(0);
    m.rowEntries_.reserve(static_cast<size_t>(rows * perRow));

    std::vector<uint8_t> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), uint8_t{0});
    std::vector<int64_t> ranks;
    ranks.reserve(static_cast<size_t>(perRow));
    do {
        Perm p = Perm::fromZeroBased({img.data(), img.size()}, n);
        ranks.clear();
        forEachCoveredRank(p, k, [&](int64_t rank) { ranks.push_back(rank); });
        std::sort(ranks.begin(), ranks.end());
        for (int64_t rank : ranks)
            m.rowEntries_.push_back({static_cast<uint32_t>(rank), 1});
        m.rowLabels_.push_back(p);
        m.rowPtr_.push_back(static_cast<int64_t>(m.rowEntries_.size()));
    } while (std::next_permutation(img.begin(), img.end()));

    m.buildColumnsFromRows();
    return m;
}

IncidenceMatrix IncidenceMatrix::forGroup(int n, int k, const Subgroup& G,
                                          CosetSide side, int64_t memoryBudget) {
    checkParams(n, k);
    if (G.n() != n) throw std::invalid_argument("subgroup degree does not match n");
    // Defensive closure check: the element set must be exactly the closure
    // of its generators.
    Subgroup reclosed = Subgroup::closure(
        n, G.generators().empty()
               ? std::vector<Perm>(G.elements().begin(), G.elements().end())
               : G.generators());
    if (!(reclosed == G))
        throw std::invalid_argument("subgroup element set is not closed");

    const int64_t nFact = factorial(n);
    const int64_t rows = nFact / G.order();
    const int64_t cols = subseqCount(n, k);
    const int64_t nnzUpper =
        std::min(nFact * binomial(n, k), rows * cols);
    checkBudget(rows, nnzUpper, memoryBudget);

    IncidenceMatrix m;
    m.n_ = n;
    m.k_ = k;
    m.colCount_ = cols;
    m.maxEntry_ = G.order();
    m.side_ = side;
    m.rowLabels_.reserve(static_cast<size_t>(rows));
    m.rowPtr_.push_back(0);

    std::vector<uint8_t> seen(static_cast<size_t>(nFact), 0);
    std::vector<uint32_t> counts(static_cast<size_t>(cols), 0);
    std::vector<int64_t> touched;
    for (int64_t r = 0; r < nFact; ++r) {
        if (seen[static_cast<size_t>(r)]) continue;
        Perm rep = Perm::fromLexRank(n, static_cast<uint64_t>(r));
        touched.clear();
        for (const Perm& x : expandCoset(G, rep, side)) {
            seen[static_cast<size_t>(x.lexRank())] = 1;
            forEachCoveredRank(x, k, [&](int64_t rank) {
                if (counts[static_cast<size_t>(rank)]++ == 0)
                    touched.push_back(rank);
            });
        }
        std::sort(touched.begin(), touched.end());
        for (int64_t c : touched) {
            m.rowEntries_.push_back(
                {static_cast<uint32_t>(c), counts[static_cast<size_t>(c)]});
            counts[static_cast<size_t>(c)] = 0;
        }
        m.rowLabels_.push_back(rep);
        m.rowPtr_.push_back(static_cast<int64_t>(m.rowEntries_.size()));
    }

    m.buildColumnsFromRows();
    return m;
}

void IncidenceMatrix::buildColumnsFromRows() {
    colPtr_.assign(static_cast<size_t>(colCount_) + 1, 0);
    for (const Entry& e : rowEntries_) colPtr_[e.index + 1]++;
    for (size_t c = 1; c < colPtr_.size(); ++c) colPtr_[c] += colPtr_[c - 1];
    colEntries_.resize(rowEntries_.size());
    std::vector<int64_t> fill(colPtr_.begin(), colPtr_.end() - 1);
    const int64_t rows = rowCount();
    for (int64_t r = 0; r < rows; ++r)
        for (const Entry& e : row(r))
            colEntries_[static_cast<size_t>(fill[e.index]++)] = {
                static_cast<uint32_t>(r), e.count};
}

int64_t IncidenceMatrix::rowSum(int64_t r) const {
    int64_t sum = 0;
    for (const Entry& e : row(r)) sum += e.count;
    return sum;
}

int64_t IncidenceMatrix::findRow(const Perm& p) const {
    auto it = std::lower_bound(rowLabels_.begin(), rowLabels_.end(), p);
    if (it == rowLabels_.end() || !(*it == p)) return -1;
    return it - rowLabels_.begin();
}

RepetitionVector repetitionVector(const IncidenceMatrix& m,
                                  std::span<const int64_t> rows) {
    RepetitionVector rv;
    rv.n = m.n();
    rv.k = m.k();
    rv.entries.assign(static_cast<size_t>(m.colCount()), 0);
    for (int64_t r : rows) {
        if (r < 0 || r >= m.rowCount())
            throw std::invalid_argument("repetitionVector: row index out of range");
        for (const auto& e : m.row(r)) rv.entries[e.index] += e.count;
    }
    return rv;
}

}  // namespace psca
