#include "psca/psca_ops.hpp"

#include <algorithm>
#include <stdexcept>

namespace psca {

std::string VerifyResult::message() const {
    if (valid) return "valid lambda=" + std::to_string(lambda);
    std::string out = "invalid: " + reason;
    for (const auto& d : badColumns)
        out += "\n  column " + d.tuple.toCompact() + " (rank " +
               std::to_string(d.rank) + ") count=" + std::to_string(d.count);
    return out;
}

RepetitionVector repetitionOf(int n, int k, std::span<const Perm> sequences) {
    if (k < 2 || k > n || n > Perm::kMaxN)
        throw std::invalid_argument("repetitionOf requires 2 <= k <= n <= " +
                                    std::to_string(Perm::kMaxN));
    RepetitionVector rv;
    rv.n = n;
    rv.k = k;
    rv.entries.assign(static_cast<size_t>(subseqCount(n, k)), 0);
    for (const Perm& s : sequences) {
        if (s.n() != n)
            throw std::invalid_argument("sequence length does not match n");
        forEachCoveredRank(s, k, [&](int64_t r) { rv.entries[static_cast<size_t>(r)]++; });
    }
    return rv;
}

VerifyResult verify(int n, int k, std::span<const Perm> sequences,
                    std::optional<int64_t> expectedLambda) {
    VerifyResult res;
    const int64_t kFact = factorial(k);
    const int64_t size = static_cast<int64_t>(sequences.size());
    if (size == 0) {
        res.reason = "empty sequence list (lambda >= 1 requires k! sequences)";
        return res;
    }
    if (size % kFact != 0) {
        res.reason = "size " + std::to_string(size) + " is not a multiple of k! = " +
                     std::to_string(kFact);
        return res;
    }
    const int64_t lambda = size / kFact;
    if (expectedLambda && *expectedLambda != lambda) {
        res.reason = "size " + std::to_string(size) + " implies lambda=" +
                     std::to_string(lambda) + " but lambda=" +
                     std::to_string(*expectedLambda) + " was expected";
        return res;
    }
    RepetitionVector rv = repetitionOf(n, k, sequences);
    int64_t badCount = 0;
    for (size_t c = 0; c < rv.entries.size(); ++c) {
        if (rv.entries[c] == lambda) continue;
        ++badCount;
        if (res.badColumns.size() < 10)
            res.badColumns.push_back({static_cast<int64_t>(c),
                                      unrankSubseq(static_cast<int64_t>(c), n, k),
                                      rv.entries[c]});
    }
    if (badCount > 0) {
        res.reason = std::to_string(badCount) +
                     " column(s) not covered exactly lambda=" +
                     std::to_string(lambda) + " times";
        return res;
    }
    res.valid = true;
    res.lambda = lambda;
    return res;
}

PscaInstance unionInstances(const PscaInstance& p, const PscaInstance& q) {
    if (p.n != q.n || p.k != q.k)
        throw std::invalid_argument("union requires matching (n,k)");
    PscaInstance out;
    out.n = p.n;
    out.k = p.k;
    out.lambda = p.lambda + q.lambda;
    out.sequences = p.sequences;
    out.sequences.insert(out.sequences.end(), q.sequences.begin(),
                         q.sequences.end());
    std::sort(out.sequences.begin(), out.sequences.end());
    return out;
}

PscaInstance deleteSymbol(const PscaInstance& p, int symbol) {
    if (p.k > p.n - 1)
        throw std::invalid_argument("deleteSymbol requires k <= n-1");
    if (symbol < 1 || symbol > p.n)
        throw std::invalid_argument("symbol out of range");
    PscaInstance out;
    out.n = p.n - 1;
    out.k = p.k;
    out.lambda = p.lambda;
    out.sequences.reserve(p.sequences.size());
    const int s0 = symbol - 1;
    for (const Perm& x : p.sequences) {
        std::array<uint8_t, Perm::kMaxN> img{};
        int j = 0;
        for (int i = 0; i < x.n(); ++i) {
            int v = x.img(i);
            if (v == s0) continue;
            img[j++] = static_cast<uint8_t>(v > s0 ? v - 1 : v);
        }
        out.sequences.push_back(
            Perm::fromZeroBased({img.data(), static_cast<size_t>(out.n)}, out.n));
    }
    std::sort(out.sequences.begin(), out.sequences.end());
    return out;
}

PscaInstance reinterpret(const PscaInstance& p) {
    if (p.k < 3)
        throw std::invalid_argument("reinterpret requires k >= 3");
    PscaInstance out = p;
    out.k = p.k - 1;
    out.lambda = p.lambda * p.k;
    return out;
}

PscaInstance relabel(const PscaInstance& p, const Perm& sigma) {
    if (sigma.n() != p.n)
        throw std::invalid_argument("relabel permutation size does not match n");
    PscaInstance out;
    out.n = p.n;
    out.k = p.k;
    out.lambda = p.lambda;
    out.sequences.reserve(p.sequences.size());
    for (const Perm& x : p.sequences) out.sequences.push_back(compose(x, sigma));
    std::sort(out.sequences.begin(), out.sequences.end());
    return out;
}

CosetStructure detectCosetStructure(const PscaInstance& p, const Subgroup& G,
                                    CosetSide side) {
    CosetStructure out;
    if (G.n() != p.n) return out;
    const int64_t size = static_cast<int64_t>(p.sequences.size());
    if (size == 0 || size % G.order() != 0) return out;
    std::vector<Perm> pool = p.sequences;
    std::sort(pool.begin(), pool.end());
    if (std::adjacent_find(pool.begin(), pool.end()) != pool.end())
        return out;  // repeated sequences: not a union of distinct cosets

    std::vector<Perm> reps;
    while (!pool.empty()) {
        const Perm rep = pool.front();  // least remaining = least of its coset
        for (const Perm& x : expandCoset(G, rep, side)) {
            auto it = std::lower_bound(pool.begin(), pool.end(), x);
            if (it == pool.end() || !(*it == x)) return out;
            pool.erase(it);
        }
        reps.push_back(rep);
    }
    out.structured = true;
    out.reps = std::move(reps);
    return out;
}

}  // namespace psca
