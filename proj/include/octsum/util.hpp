#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace octsum {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Largest target value any exact-arithmetic entry point accepts. Everything
// is 64-bit with checked overflow; failures throw, never wrap.
inline constexpr i64 kMaxTarget = i64{1} << 40;

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in addition");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication");
    return r;
}

// floor(sqrt(n)); n must be non-negative.
inline i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// True iff n is a perfect square; *root gets floor(sqrt(max(n,0))).
inline bool is_square(i64 n, i64* root = nullptr) {
    if (n < 0) return false;
    const i64 r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

// Plain bit vector over [0, size). Supports the shifted-or used by the
// reachability sieves: dest |= src << k, truncated at size.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}
    Bitset(std::size_t size, std::vector<u64> words) : size_(size), words_(std::move(words)) {
        if (words_.size() != (size + 63) / 64)
            throw std::invalid_argument("bitset word count does not match size");
        trim();
    }

    std::size_t size() const { return size_; }
    const std::vector<u64>& words() const { return words_; }

    void set(std::size_t i) { words_[i >> 6] |= u64{1} << (i & 63); }

    bool test(std::size_t i) const {
        return i < size_ && (words_[i >> 6] >> (i & 63)) & 1;
    }

    void or_shifted(const Bitset& src, std::size_t k) {
        if (k >= size_) return;
        const std::size_t off = k >> 6, sh = k & 63;
        const std::size_t nw = words_.size();
        if (sh == 0) {
            for (std::size_t i = off; i < nw; ++i)
                words_[i] |= src.words_[i - off];
        } else {
            for (std::size_t i = off; i < nw; ++i) {
                u64 w = src.words_[i - off] << sh;
                if (i > off) w |= src.words_[i - off - 1] >> (64 - sh);
                words_[i] |= w;
            }
        }
        trim();
    }

    // smallest set index in [from, size), or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find_first_unset(std::size_t from) const {
        for (std::size_t i = from; i < size_; ++i)
            if (!test(i)) return i;
        return npos;
    }

private:
    void trim() {
        const std::size_t tail = size_ & 63;
        if (tail && !words_.empty()) words_.back() &= (u64{1} << tail) - 1;
    }

    std::size_t size_ = 0;
    std::vector<u64> words_;
};

}  // namespace octsum
