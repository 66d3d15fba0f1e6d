#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace psca {

// Permutations of [n] in one-line notation, n <= 12. Symbols are 1-based in
// all text forms and 0-based internally.
class Perm {
public:
    static constexpr int kMaxN = 12;

    Perm() = default;

    static Perm identity(int n);
    // image[i] = symbol at position i, 1-based symbols. Throws
    // std::invalid_argument unless the image is a bijection on {1..n}.
    static Perm fromOneBased(std::span<const int> image);
    static Perm fromZeroBased(std::span<const uint8_t> image, int n);

    int n() const { return n_; }
    // 0-based: symbol at position i.
    int img(int i) const { return img_[i]; }
    // 0-based: position of symbol s.
    int pos(int s) const { return pos_[s]; }

    Perm inverse() const;
    bool isIdentity() const;

    // Lexicographic index of this permutation within S_n (0-based).
    uint64_t lexRank() const;
    static Perm fromLexRank(int n, uint64_t rank);

    // Cycle lengths sorted descending (fixed points included as 1s).
    std::vector<int> cycleType() const;
    int64_t order() const;

    // 4 bits per position; total order consistent with lexicographic order
    // for equal n.
    uint64_t packed() const;

    std::string toText() const;     // "4 7 3 5 6 2 1"
    std::string toCompact() const;  // "4735621", requires n <= 9

    friend bool operator==(const Perm& a, const Perm& b) {
        return a.n_ == b.n_ && a.packed() == b.packed();
    }
    friend bool operator<(const Perm& a, const Perm& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.packed() < b.packed();
    }

private:
    uint8_t n_ = 0;
    std::array<uint8_t, kMaxN> img_{};
    std::array<uint8_t, kMaxN> pos_{};
};

// compose(alpha, beta): alpha acts first, result(i) = beta(alpha(i)).
// The coset products pi*G and G*pi everywhere in this library use this
// convention.
Perm compose(const Perm& alpha, const Perm& beta);

int64_t factorial(int n);
int64_t binomial(int n, int k);
// |S_{n,k}| = n!/(n-k)!
int64_t subseqCount(int n, int k);

// Ordered k-tuple of distinct symbols from [n]; 0-based internally.
struct KSubseq {
    int k = 0;
    std::array<uint8_t, Perm::kMaxN> sym{};

    static KSubseq fromOneBased(std::span<const int> symbols);
    std::string toCompact() const;  // symbols as digits, 1-based

    friend bool operator==(const KSubseq& a, const KSubseq& b) {
        if (a.k != b.k) return false;
        for (int i = 0; i < a.k; ++i)
            if (a.sym[i] != b.sym[i]) return false;
        return true;
    }
};

// Position of y in the lexicographic order of all ordered k-tuples of
// distinct symbols from [n].
int64_t rankSubseq(const KSubseq& y, int n);
KSubseq unrankSubseq(int64_t rank, int n, int k);

// True iff the symbols of y appear in x in order (not necessarily
// contiguously).
bool covers(const Perm& x, const KSubseq& y);

// Calls fn(rank) for the rank of each of the C(n,k) k-subsequences covered
// by x, in increasing position order (ranks arrive unsorted).
template <typename Fn>
void forEachCoveredRank(const Perm& x, int k, Fn&& fn) {
    const int n = x.n();
    std::array<int, Perm::kMaxN> idx{};
    for (int i = 0; i < k; ++i) idx[i] = i;
    // factors[i] = (n-1-i)!/(n-k)!: weight of a symbol choice at tuple slot i
    std::array<int64_t, Perm::kMaxN> factors{};
    for (int i = 0; i < k; ++i) {
        int64_t f = 1;
        for (int j = n - 1 - i; j > n - k; --j) f *= j;
        factors[i] = f;
    }
    while (true) {
        uint32_t used = 0;
        int64_t rank = 0;
        for (int i = 0; i < k; ++i) {
            int s = x.img(idx[i]);
            int below = std::popcount(used & ((1u << s) - 1));
            rank += static_cast<int64_t>(s - below) * factors[i];
            used |= 1u << s;
        }
        fn(rank);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace psca
