#include "psca/groups.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace psca {

const char* sideName(CosetSide side) {
    return side == CosetSide::left ? "left" : "right";
}

namespace {

struct PackedHash {
    size_t operator()(uint64_t v) const {
        v ^= v >> 33;
        v *= 0xff51afd7ed558ccdULL;
        v ^= v >> 33;
        return static_cast<size_t>(v);
    }
};

std::vector<Perm> closeUnder(int n, const std::vector<Perm>& gens) {
    std::vector<Perm> elems;
    std::unordered_set<uint64_t, PackedHash> seen;
    std::deque<Perm> queue;
    Perm id = Perm::identity(n);
    seen.insert(id.packed());
    queue.push_back(id);
    elems.push_back(id);
    while (!queue.empty()) {
        Perm cur = queue.front();
        queue.pop_front();
        for (const Perm& g : gens) {
            Perm next = compose(cur, g);
            if (seen.insert(next.packed()).second) {
                elems.push_back(next);
                queue.push_back(next);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

}  // namespace

Subgroup subgroupFromSortedElements(int n, std::vector<Perm> elems,
                                    std::vector<Perm> gens) {
    Subgroup g;
    g.n_ = n;
    g.elems_ = std::move(elems);
    g.gens_ = std::move(gens);
    return g;
}

Subgroup Subgroup::closure(int n, std::vector<Perm> generators) {
    std::vector<Perm> gens;
    for (const Perm& g : generators) {
        if (g.n() != n)
            throw std::invalid_argument("generator size does not match n");
        if (g.isIdentity()) continue;
        if (std::find(gens.begin(), gens.end(), g) == gens.end())
            gens.push_back(g);
    }
    std::vector<Perm> elems = closeUnder(n, gens);
    return subgroupFromSortedElements(n, std::move(elems), std::move(gens));
}

Subgroup Subgroup::trivial(int n) { return closure(n, {}); }

bool Subgroup::contains(const Perm& p) const {
    return std::binary_search(elems_.begin(), elems_.end(), p);
}

std::vector<int64_t> Subgroup::signature() const {
    std::vector<int64_t> sig;
    sig.reserve(elems_.size() + 1);
    sig.push_back(order());
    for (const Perm& p : elems_) sig.push_back(p.order());
    std::sort(sig.begin() + 1, sig.end());
    return sig;
}

std::vector<Perm> expandCoset(const Subgroup& G, const Perm& rep,
                              CosetSide side) {
    if (rep.n() != G.n())
        throw std::invalid_argument("coset representative size does not match subgroup");
    std::vector<Perm> out;
    out.reserve(G.elements().size());
    for (const Perm& g : G.elements())
        out.push_back(side == CosetSide::left ? compose(rep, g)
                                              : compose(g, rep));
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup conjugateSubgroup(const Subgroup& G, const Perm& sigma) {
    if (sigma.n() != G.n())
        throw std::invalid_argument("conjugating permutation size does not match subgroup");
    Perm sigmaInv = sigma.inverse();
    auto conj = [&](const Perm& g) {
        return compose(compose(sigma, g), sigmaInv);
    };
    std::vector<Perm> elems;
    elems.reserve(G.elements().size());
    for (const Perm& g : G.elements()) elems.push_back(conj(g));
    std::sort(elems.begin(), elems.end());
    std::vector<Perm> gens;
    gens.reserve(G.generators().size());
    for (const Perm& g : G.generators()) gens.push_back(conj(g));
    return subgroupFromSortedElements(G.n(), std::move(elems), std::move(gens));
}

namespace {

// Small generating set picked greedily from the element list.
std::vector<Perm> smallGeneratingSet(int n, const std::vector<Perm>& elems) {
    std::vector<Perm> gens;
    if (elems.size() <= 1) return gens;
    std::vector<Perm> closed = {Perm::identity(n)};
    for (const Perm& p : elems) {
        if (std::binary_search(closed.begin(), closed.end(), p)) continue;
        gens.push_back(p);
        closed = closeUnder(n, gens);
        if (closed.size() == elems.size()) break;
    }
    return gens;
}

// Number of sigma with a fixed conjugation image for an element of the given
// cycle type (the centralizer order).
int64_t conjugatorCount(const std::vector<int>& type) {
    std::map<int, int> mult;
    for (int len : type) mult[len]++;
    int64_t c = 1;
    for (auto [len, m] : mult) {
        for (int i = 0; i < m; ++i) c *= len;
        c *= factorial(m);
    }
    return c;
}

std::vector<std::vector<int>> cyclesOf(const Perm& p) {
    std::vector<std::vector<int>> cycles;
    uint32_t seen = 0;
    for (int i = 0; i < p.n(); ++i) {
        if (seen & (1u << i)) continue;
        std::vector<int> cyc;
        for (int j = i; !(seen & (1u << j)); j = p.img(j)) {
            seen |= 1u << j;
            cyc.push_back(j);
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

// Enumerates every sigma satisfying sigma * g * sigma^-1 = h, i.e.
// g(sigma(i)) = sigma(h(i)) for all i: sigma maps each cycle of h onto a
// same-length cycle of g preserving cyclic order. Returns true if the
// callback accepted some sigma.
template <typename Fn>
bool forEachConjugator(const Perm& g, const Perm& h, Fn&& accept) {
    const int n = g.n();
    auto hCycles = cyclesOf(h);
    auto gCycles = cyclesOf(g);
    std::map<int, std::vector<int>> gByLen;  // length -> indices into gCycles
    for (size_t i = 0; i < gCycles.size(); ++i)
        gByLen[static_cast<int>(gCycles[i].size())].push_back(static_cast<int>(i));
    std::vector<uint8_t> usedG(gCycles.size(), 0);
    std::array<uint8_t, Perm::kMaxN> image{};

    auto rec = [&](auto&& self, size_t ci) -> bool {
        if (ci == hCycles.size()) {
            Perm sigma = Perm::fromZeroBased({image.data(), static_cast<size_t>(n)}, n);
            return accept(sigma);
        }
        const auto& hc = hCycles[ci];
        int len = static_cast<int>(hc.size());
        for (int gi : gByLen[len]) {
            if (usedG[gi]) continue;
            usedG[gi] = 1;
            const auto& gc = gCycles[gi];
            for (int rot = 0; rot < len; ++rot) {
                for (int t = 0; t < len; ++t)
                    image[hc[t]] = static_cast<uint8_t>(gc[(rot + t) % len]);
                if (self(self, ci + 1)) {
                    usedG[gi] = 0;
                    return true;
                }
            }
            usedG[gi] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace

bool areConjugate(const Subgroup& G, const Subgroup& H) {
    if (G.n() != H.n() || G.order() != H.order()) return false;
    if (G.order() == 1) return true;
    if (G == H) return true;
    if (G.signature() != H.signature()) return false;

    std::vector<Perm> gens = G.generators();
    if (gens.empty()) gens = smallGeneratingSet(G.n(), G.elements());

    // Probe element of G minimizing candidate images times alignments.
    const Perm* probe = nullptr;
    int64_t bestCost = INT64_MAX;
    for (const Perm& g : G.elements()) {
        if (g.isIdentity()) continue;
        auto type = g.cycleType();
        int64_t sameType = 0;
        for (const Perm& h : H.elements())
            if (h.cycleType() == type) ++sameType;
        int64_t cost = sameType * conjugatorCount(type);
        if (cost < bestCost) {
            bestCost = cost;
            probe = &g;
        }
    }
    auto probeType = probe->cycleType();

    Perm probeCopy = *probe;
    for (const Perm& h : H.elements()) {
        if (h.cycleType() != probeType) continue;
        bool found = forEachConjugator(probeCopy, h, [&](const Perm& sigma) {
            Perm sigmaInv = sigma.inverse();
            for (const Perm& g : gens) {
                Perm image = compose(compose(sigma, g), sigmaInv);
                if (!H.contains(image)) return false;
            }
            return true;
        });
        if (found) return true;
    }
    return false;
}

CosetDecomposition decomposeCosets(const Subgroup& G, CosetSide side) {
    const int n = G.n();
    const int64_t nFact = factorial(n);
    CosetDecomposition out;
    out.side = side;
    out.reps.reserve(static_cast<size_t>(nFact / G.order()));
    std::vector<uint8_t> seen(static_cast<size_t>(nFact), 0);
    for (int64_t r = 0; r < nFact; ++r) {
        if (seen[static_cast<size_t>(r)]) continue;
        Perm rep = Perm::fromLexRank(n, static_cast<uint64_t>(r));
        for (const Perm& x : expandCoset(G, rep, side))
            seen[static_cast<size_t>(x.lexRank())] = 1;
        out.reps.push_back(rep);
    }
    return out;
}

namespace {

struct VecU32Hash {
    size_t operator()(const std::vector<uint32_t>& v) const {
        uint64_t h = 0x9e3779b97f4a7c15ULL + v.size();
        for (uint32_t x : v) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

struct SigHash {
    size_t operator()(const std::vector<int64_t>& v) const {
        uint64_t h = 1469598103934665603ULL + v.size();
        for (int64_t x : v) {
            h ^= static_cast<uint64_t>(x);
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

// Canonical representative permutation for a cycle type: consecutive blocks,
// each block one cycle.
Perm permOfCycleType(int n, const std::vector<int>& parts) {
    std::array<uint8_t, Perm::kMaxN> img{};
    int base = 0;
    for (int len : parts) {
        for (int i = 0; i < len - 1; ++i)
            img[base + i] = static_cast<uint8_t>(base + i + 1);
        img[base + len - 1] = static_cast<uint8_t>(base);
        base += len;
    }
    return Perm::fromZeroBased({img.data(), static_cast<size_t>(n)}, n);
}

void partitionsOf(int n, std::vector<int>& cur, int maxPart,
                  std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, maxPart); p >= 1; --p) {
        cur.push_back(p);
        partitionsOf(n - p, cur, p, out);
        cur.pop_back();
    }
}

bool isPrime(int64_t v) {
    if (v < 2) return false;
    for (int64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

struct ClassEnumerator {
    int n;
    int64_t nFact;
    std::optional<int64_t> bound;
    std::vector<Perm> byRank;

    struct Rec {
        std::vector<Perm> elems;   // sorted
        std::vector<Perm> gens;
        int64_t order;
    };
    std::vector<Rec> classes;
    std::unordered_set<std::vector<uint32_t>, VecU32Hash> exactSeen;
    std::unordered_map<std::vector<int64_t>, std::vector<size_t>, SigHash> bySig;

    explicit ClassEnumerator(int n_, std::optional<int64_t> bound_)
        : n(n_), nFact(factorial(n_)), bound(bound_) {
        byRank.reserve(static_cast<size_t>(nFact));
        for (int64_t r = 0; r < nFact; ++r)
            byRank.push_back(Perm::fromLexRank(n, static_cast<uint64_t>(r)));
    }

    std::vector<uint32_t> ranksOf(const std::vector<Perm>& elems) const {
        std::vector<uint32_t> ranks;
        ranks.reserve(elems.size());
        for (const Perm& p : elems)
            ranks.push_back(static_cast<uint32_t>(p.lexRank()));
        return ranks;
    }

    // Returns index of the class this subgroup belongs to, inserting a new
    // class if it is not conjugate to any known representative.
    size_t dedupInsert(std::vector<Perm> elems, bool& isNew) {
        isNew = false;
        std::vector<uint32_t> key = ranksOf(elems);
        if (!exactSeen.insert(key).second) {
            // Exact set already processed; find its class by conjugacy below
            // only if needed. Classes are looked up lazily elsewhere, so a
            // repeat can simply be ignored by the caller.
            return SIZE_MAX;
        }
        Subgroup cand = subgroupFromSortedElements(n, elems, {});
        std::vector<int64_t> sig = cand.signature();
        auto& bucket = bySig[sig];
        for (size_t idx : bucket) {
            Subgroup repG = subgroupFromSortedElements(
                n, classes[idx].elems, classes[idx].gens);
            if (areConjugate(repG, cand)) return idx;
        }
        Rec rec;
        rec.gens = smallGeneratingSet(n, elems);
        rec.elems = std::move(elems);
        rec.order = static_cast<int64_t>(rec.elems.size());
        classes.push_back(std::move(rec));
        bucket.push_back(classes.size() - 1);
        isNew = true;
        return classes.size() - 1;
    }

    // Closure of gens, aborting early if the size would exceed the bound.
    // Returns false on abort.
    bool boundedClosure(const std::vector<Perm>& gens,
                        std::vector<Perm>& out) const {
        std::unordered_set<uint64_t, PackedHash> seen;
        std::deque<Perm> queue;
        out.clear();
        Perm id = Perm::identity(n);
        seen.insert(id.packed());
        out.push_back(id);
        queue.push_back(id);
        size_t limit = bound ? static_cast<size_t>(*bound) : SIZE_MAX;
        while (!queue.empty()) {
            Perm cur = queue.front();
            queue.pop_front();
            for (const Perm& g : gens) {
                Perm next = compose(cur, g);
                if (seen.insert(next.packed()).second) {
                    out.push_back(next);
                    if (out.size() > limit) return false;
                    queue.push_back(next);
                }
            }
        }
        std::sort(out.begin(), out.end());
        return true;
    }

    void extend(size_t classIdx, std::deque<size_t>& work) {
        // Snapshot: classes vector may grow during the loop.
        std::vector<Perm> elems = classes[classIdx].elems;
        std::vector<Perm> gens = classes[classIdx].gens;
        const int64_t order = classes[classIdx].order;
        if (order == nFact) return;
        if (bound && 2 * order > *bound) return;  // any proper extension is too big

        std::vector<uint8_t> seen(static_cast<size_t>(nFact), 0);
        for (const Perm& h : elems)
            seen[static_cast<size_t>(h.lexRank())] = 1;

        std::vector<Perm> extGens = gens;
        extGens.push_back(Perm::identity(n));  // slot for g
        std::vector<Perm> closureBuf;

        for (int64_t r = 0; r < nFact; ++r) {
            if (seen[static_cast<size_t>(r)]) continue;
            const Perm& g = byRank[static_cast<size_t>(r)];
            // closure(H + g) is invariant over the double coset H g H; mark
            // the whole double coset as handled.
            for (const Perm& h1 : elems) {
                Perm left = compose(h1, g);
                for (const Perm& h2 : elems)
                    seen[static_cast<size_t>(compose(left, h2).lexRank())] = 1;
            }
            extGens.back() = g;
            if (!boundedClosure(extGens, closureBuf)) continue;
            bool isNew = false;
            size_t idx = dedupInsert(closureBuf, isNew);
            if (isNew) work.push_back(idx);
        }
    }
};

}  // namespace

std::vector<Subgroup> enumerateSubgroupClasses(int n,
                                               const ClassEnumOptions& opts) {
    if (n < 2) return {};
    if (n > 9)
        throw std::invalid_argument("subgroup class enumeration supports n <= 9");
    if (n >= 8 && !opts.maxOrder && !opts.cyclicOnly)
        throw std::invalid_argument(
            "full subgroup class enumeration is infeasible for n >= 8; "
            "restrict by max order or cyclic-only");

    ClassEnumerator en(n, opts.maxOrder);

    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitionsOf(n, cur, n, parts);

    std::deque<size_t> work;
    for (const auto& type : parts) {
        Perm p = permOfCycleType(n, type);
        int64_t ord = p.order();
        if (ord < 2) continue;
        if (!opts.cyclicOnly && !isPrime(ord)) continue;
        if (opts.maxOrder && ord > *opts.maxOrder) continue;
        bool isNew = false;
        size_t idx = en.dedupInsert(Subgroup::closure(n, {p}).elements(), isNew);
        if (isNew) {
            en.classes[idx].gens = {p};
            work.push_back(idx);
        }
    }

    if (!opts.cyclicOnly) {
        while (!work.empty()) {
            size_t idx = work.front();
            work.pop_front();
            en.extend(idx, work);
        }
    }

    std::vector<Subgroup> out;
    out.reserve(en.classes.size());
    for (auto& rec : en.classes)
        out.push_back(subgroupFromSortedElements(n, std::move(rec.elems),
                                                 std::move(rec.gens)));
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        return a.elements() < b.elements();
    });
    return out;
}

std::vector<Subgroup> conjugacyClassMembers(const Subgroup& G) {
    const int n = G.n();
    const int64_t nFact = factorial(n);
    std::unordered_set<std::vector<uint32_t>, VecU32Hash> seen;
    std::vector<Subgroup> out;
    for (int64_t r = 0; r < nFact; ++r) {
        Perm sigma = Perm::fromLexRank(n, static_cast<uint64_t>(r));
        Subgroup conj = conjugateSubgroup(G, sigma);
        std::vector<uint32_t> key;
        key.reserve(conj.elements().size());
        for (const Perm& p : conj.elements())
            key.push_back(static_cast<uint32_t>(p.lexRank()));
        if (seen.insert(key).second) out.push_back(std::move(conj));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        return a.elements() < b.elements();
    });
    return out;
}

std::string advisoryGroupName(const Subgroup& G) {
    const int64_t order = G.order();
    if (order == 1) return "C1";
    if (order > 24) return "";
    std::map<int64_t, int> mult;
    int64_t maxOrd = 1;
    for (const Perm& p : G.elements()) {
        int64_t o = p.order();
        mult[o]++;
        maxOrd = std::max(maxOrd, o);
    }
    if (maxOrd == order) return "C" + std::to_string(order);

    auto is = [&](std::initializer_list<std::pair<int64_t, int>> want) {
        if (static_cast<size_t>(mult.size()) != want.size()) return false;
        for (auto [o, m] : want) {
            auto it = mult.find(o);
            if (it == mult.end() || it->second != m) return false;
        }
        return true;
    };

    switch (order) {
        case 4:
            if (is({{1, 1}, {2, 3}})) return "C2xC2";
            break;
        case 6:
            if (is({{1, 1}, {2, 3}, {3, 2}})) return "S3";
            break;
        case 8:
            if (is({{1, 1}, {2, 5}, {4, 2}})) return "D8";
            if (is({{1, 1}, {2, 1}, {4, 6}})) return "Q8";
            if (is({{1, 1}, {2, 3}, {4, 4}})) return "C4xC2";
            if (is({{1, 1}, {2, 7}})) return "C2xC2xC2";
            break;
        case 10:
            if (is({{1, 1}, {2, 5}, {5, 4}})) return "D10";
            break;
        case 12:
            if (is({{1, 1}, {2, 7}, {3, 2}, {6, 2}})) return "D12";
            if (is({{1, 1}, {2, 3}, {3, 8}})) return "A4";
            if (is({{1, 1}, {2, 1}, {3, 2}, {4, 6}, {6, 2}})) return "Dic3";
            if (is({{1, 1}, {2, 3}, {3, 2}, {6, 6}})) return "C6xC2";
            break;
        case 14:
            if (is({{1, 1}, {2, 7}, {7, 6}})) return "D14";
            break;
        case 18:
            if (is({{1, 1}, {2, 9}, {3, 2}, {9, 6}})) return "D18";
            break;
        case 20:
            if (is({{1, 1}, {2, 5}, {4, 10}, {5, 4}})) return "F20";
            if (is({{1, 1}, {2, 11}, {5, 4}, {10, 4}})) return "D20";
            break;
        case 21:
            if (is({{1, 1}, {3, 14}, {7, 6}})) return "C7:C3";
            break;
        case 24:
            if (is({{1, 1}, {2, 9}, {3, 8}, {4, 6}})) return "S4";
            if (is({{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}})) return "SL(2,3)";
            if (is({{1, 1}, {2, 7}, {3, 8}, {6, 8}})) return "A4xC2";
            break;
        default:
            break;
    }
    return "";
}

}  // namespace psca
