#include "psca/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace psca {

namespace {

void checkN(int n) {
    if (n < 1 || n > Perm::kMaxN)
        throw std::invalid_argument("permutation size " + std::to_string(n) +
                                    " outside supported range [1, " +
                                    std::to_string(Perm::kMaxN) + "]");
}

}  // namespace

Perm Perm::identity(int n) {
    checkN(n);
    std::array<uint8_t, kMaxN> img{};
    for (int i = 0; i < n; ++i) img[i] = static_cast<uint8_t>(i);
    return fromZeroBased({img.data(), static_cast<size_t>(n)}, n);
}

Perm Perm::fromOneBased(std::span<const int> image) {
    checkN(static_cast<int>(image.size()));
    const int n = static_cast<int>(image.size());
    std::array<uint8_t, kMaxN> img{};
    for (int i = 0; i < n; ++i) {
        int v = image[i];
        if (v < 1 || v > n)
            throw std::invalid_argument("symbol " + std::to_string(v) +
                                        " out of range 1.." + std::to_string(n));
        img[i] = static_cast<uint8_t>(v - 1);
    }
    return fromZeroBased({img.data(), static_cast<size_t>(n)}, n);
}

Perm Perm::fromZeroBased(std::span<const uint8_t> image, int n) {
    checkN(n);
    Perm p;
    p.n_ = static_cast<uint8_t>(n);
    uint32_t seen = 0;
    for (int i = 0; i < n; ++i) {
        uint8_t v = image[i];
        if (v >= n || (seen & (1u << v)))
            throw std::invalid_argument("image is not a bijection on {1.." +
                                        std::to_string(n) + "}");
        seen |= 1u << v;
        p.img_[i] = v;
        p.pos_[v] = static_cast<uint8_t>(i);
    }
    return p;
}

Perm Perm::inverse() const {
    Perm p;
    p.n_ = n_;
    p.img_ = pos_;
    p.pos_ = img_;
    return p;
}

bool Perm::isIdentity() const {
    for (int i = 0; i < n_; ++i)
        if (img_[i] != i) return false;
    return true;
}

uint64_t Perm::lexRank() const {
    uint64_t rank = 0;
    uint32_t used = 0;
    int64_t fact = factorial(n_ - 1);
    for (int i = 0; i < n_; ++i) {
        int v = img_[i];
        int below = std::popcount(used & ((1u << v) - 1));
        rank += static_cast<uint64_t>(v - below) * fact;
        used |= 1u << v;
        if (n_ - 1 - i > 0) fact /= (n_ - 1 - i);
    }
    return rank;
}

Perm Perm::fromLexRank(int n, uint64_t rank) {
    checkN(n);
    std::array<uint8_t, kMaxN> pool{};
    std::iota(pool.begin(), pool.begin() + n, uint8_t{0});
    std::array<uint8_t, kMaxN> img{};
    int64_t fact = factorial(n - 1);
    int remaining = n;
    for (int i = 0; i < n; ++i) {
        int idx = static_cast<int>(rank / fact);
        rank %= fact;
        img[i] = pool[idx];
        std::copy(pool.begin() + idx + 1, pool.begin() + remaining,
                  pool.begin() + idx);
        --remaining;
        if (remaining > 0) fact /= remaining;
    }
    return fromZeroBased({img.data(), static_cast<size_t>(n)}, n);
}

std::vector<int> Perm::cycleType() const {
    std::vector<int> lens;
    uint32_t seen = 0;
    for (int i = 0; i < n_; ++i) {
        if (seen & (1u << i)) continue;
        int len = 0;
        for (int j = i; !(seen & (1u << j)); j = img_[j]) {
            seen |= 1u << j;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
}

int64_t Perm::order() const {
    int64_t ord = 1;
    for (int len : cycleType()) ord = std::lcm<int64_t>(ord, len);
    return ord;
}

uint64_t Perm::packed() const {
    uint64_t key = 0;
    for (int i = 0; i < n_; ++i)
        key = (key << 4) | static_cast<uint64_t>(img_[i]);
    return key;
}

std::string Perm::toText() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
        if (i) out += ' ';
        out += std::to_string(img_[i] + 1);
    }
    return out;
}

std::string Perm::toCompact() const {
    if (n_ > 9) throw std::invalid_argument("compact form requires n <= 9");
    std::string out;
    for (int i = 0; i < n_; ++i) out += static_cast<char>('1' + img_[i]);
    return out;
}

Perm compose(const Perm& alpha, const Perm& beta) {
    if (alpha.n() != beta.n())
        throw std::invalid_argument("compose: dimension mismatch (" +
                                    std::to_string(alpha.n()) + " vs " +
                                    std::to_string(beta.n()) + ")");
    Perm p;
    std::array<uint8_t, Perm::kMaxN> img{};
    const int n = alpha.n();
    for (int i = 0; i < n; ++i)
        img[i] = static_cast<uint8_t>(beta.img(alpha.img(i)));
    return Perm::fromZeroBased({img.data(), static_cast<size_t>(n)}, n);
}

int64_t factorial(int n) {
    int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    int64_t b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

int64_t subseqCount(int n, int k) {
    int64_t c = 1;
    for (int i = 0; i < k; ++i) c *= (n - i);
    return c;
}

KSubseq KSubseq::fromOneBased(std::span<const int> symbols) {
    const int k = static_cast<int>(symbols.size());
    if (k < 1 || k > Perm::kMaxN)
        throw std::invalid_argument("k-subsequence length out of range");
    KSubseq y;
    y.k = k;
    uint32_t seen = 0;
    for (int i = 0; i < k; ++i) {
        int v = symbols[i];
        if (v < 1 || v > Perm::kMaxN || (seen & (1u << (v - 1))))
            throw std::invalid_argument("k-subsequence symbols must be distinct values in [n]");
        seen |= 1u << (v - 1);
        y.sym[i] = static_cast<uint8_t>(v - 1);
    }
    return y;
}

std::string KSubseq::toCompact() const {
    std::string out;
    for (int i = 0; i < k; ++i) out += static_cast<char>('1' + sym[i]);
    return out;
}

int64_t rankSubseq(const KSubseq& y, int n) {
    if (y.k > n) throw std::invalid_argument("rankSubseq: k exceeds n");
    int64_t rank = 0;
    uint32_t used = 0;
    for (int i = 0; i < y.k; ++i) {
        int s = y.sym[i];
        if (s >= n) throw std::invalid_argument("rankSubseq: symbol exceeds n");
        int below = std::popcount(used & ((1u << s) - 1));
        int64_t weight = 1;
        for (int j = n - 1 - i; j > n - y.k; --j) weight *= j;
        rank += static_cast<int64_t>(s - below) * weight;
        used |= 1u << s;
    }
    return rank;
}

KSubseq unrankSubseq(int64_t rank, int n, int k) {
    if (k < 1 || k > n)
        throw std::invalid_argument("unrankSubseq: bad k");
    if (rank < 0 || rank >= subseqCount(n, k))
        throw std::invalid_argument("unrankSubseq: rank out of range");
    KSubseq y;
    y.k = k;
    std::array<uint8_t, Perm::kMaxN> pool{};
    std::iota(pool.begin(), pool.begin() + n, uint8_t{0});
    int remaining = n;
    for (int i = 0; i < k; ++i) {
        int64_t weight = 1;
        for (int j = n - 1 - i; j > n - k; --j) weight *= j;
        int idx = static_cast<int>(rank / weight);
        rank %= weight;
        y.sym[i] = pool[idx];
        std::copy(pool.begin() + idx + 1, pool.begin() + remaining,
                  pool.begin() + idx);
        --remaining;
    }
    return y;
}

bool covers(const Perm& x, const KSubseq& y) {
    if (y.k > x.n())
        throw std::invalid_argument("covers: k-subsequence longer than sequence");
    int prev = -1;
    for (int i = 0; i < y.k; ++i) {
        if (y.sym[i] >= x.n())
            throw std::invalid_argument("covers: symbol out of range");
        int p = x.pos(y.sym[i]);
        if (p <= prev) return false;
        prev = p;
    }
    return true;
}

}  // namespace psca
