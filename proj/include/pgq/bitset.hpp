#ifndef PGQ_BITSET_HPP
#define PGQ_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pgq {

/// Fixed-size bitset indexed by point/hyperplane table positions.
/// Intersection counts reduce to word-wise AND + popcount passes.
class IndexBitset {
public:
    IndexBitset() = default;
    explicit IndexBitset(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }

    IndexBitset& operator&=(const IndexBitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    IndexBitset& operator|=(const IndexBitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    bool operator==(const IndexBitset& o) const = default;

    template <class Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                fn(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    std::span<const std::uint64_t> words() const { return w_; }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

inline std::size_t and_count(const IndexBitset& a, const IndexBitset& b) {
    auto wa = a.words(), wb = b.words();
    std::size_t c = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        c += static_cast<std::size_t>(std::popcount(wa[i] & wb[i]));
    return c;
}

inline std::size_t and_count3(const IndexBitset& a, const IndexBitset& b, const IndexBitset& c) {
    auto wa = a.words(), wb = b.words(), wc = c.words();
    std::size_t n = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        n += static_cast<std::size_t>(std::popcount(wa[i] & wb[i] & wc[i]));
    return n;
}

} // namespace pgq

#endif
