#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace locator {

using Vertex = std::uint32_t;

/// Dense fixed-universe bitset over the vertices of a subdivided graph.
/// Used for belief states; all binary operations require equal universes.
class VertexSet {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : size_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (auto& w : s.words_) w = ~Word{0};
        s.trim();
        return s;
    }

    static VertexSet of(std::size_t universe, std::initializer_list<Vertex> vs) {
        VertexSet s(universe);
        for (Vertex v : vs) s.insert(v);
        return s;
    }

    std::size_t universe() const { return size_; }
    std::size_t word_count() const { return words_.size(); }
    const std::vector<Word>& words() const { return words_; }
    std::vector<Word>& words() { return words_; }

    bool contains(Vertex v) const { return v < size_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U); }
    void insert(Vertex v) { words_[v / kWordBits] |= Word{1} << (v % kWordBits); }
    void erase(Vertex v) { words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (Word w : words_)
            if (w) return false;
        return true;
    }

    /// Lowest member; undefined on an empty set.
    Vertex first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<Vertex>(i * kWordBits + std::countr_zero(words_[i]));
        return static_cast<Vertex>(size_);
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            Word w = words_[i];
            while (w) {
                const int b = std::countr_zero(w);
                f(static_cast<Vertex>(i * kWordBits + b));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> to_vector() const {
        std::vector<Vertex> out;
        out.reserve(count());
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

    bool is_subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& subtract(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }

    /// Every member shifted up (+1) / down (-1) by one position.
    VertexSet shifted_up() const {
        VertexSet r(size_);
        Word carry = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            r.words_[i] = (words_[i] << 1) | carry;
            carry = words_[i] >> (kWordBits - 1);
        }
        r.trim();
        return r;
    }
    VertexSet shifted_down() const {
        VertexSet r(size_);
        Word carry = 0;
        for (std::size_t i = words_.size(); i-- > 0;) {
            r.words_[i] = (words_[i] >> 1) | carry;
            carry = words_[i] << (kWordBits - 1);
        }
        return r;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.size_ == b.size_ && a.words_ == b.words_; }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
        for (Word w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
            h ^= h >> 33;
        }
        return static_cast<std::size_t>(h);
    }

    /// Raw little-endian word bytes appended to `out`; used in memo keys.
    void append_bytes(std::string& out) const {
        out.append(reinterpret_cast<const char*>(words_.data()), words_.size() * sizeof(Word));
    }

private:
    void trim() {
        if (size_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace locator
