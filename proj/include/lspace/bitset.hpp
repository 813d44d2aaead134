#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lspace {

// Fixed-capacity bit set over indices 0..size-1.  Doubles as a vertex set
// (bits index vertices of one graph) and as a subfamily mask (bits index
// members of one set family).  Two bitsets interoperate only if they have
// the same size.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int size) : size_(size), words_(word_count(size), 0) {}

  static Bitset full(int size) {
    Bitset b(size);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    b.trim();
    return b;
  }

  static Bitset singleton(int size, int bit) {
    Bitset b(size);
    b.set(bit);
    return b;
  }

  int size() const { return size_; }

  bool test(int i) const {
    assert(i >= 0 && i < size_);
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }

  void set(int i) {
    assert(i >= 0 && i < size_);
    words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    assert(i >= 0 && i < size_);
    words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool any() const { return !none(); }

  int count() const {
    int n = 0;
    for (auto w : words_) n += popcount(w);
    return n;
  }

  Bitset& operator|=(const Bitset& o) {
    assert(size_ == o.size_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }

  Bitset& operator&=(const Bitset& o) {
    assert(size_ == o.size_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  // Set difference.
  Bitset& operator-=(const Bitset& o) {
    assert(size_ == o.size_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  bool operator==(const Bitset& o) const = default;

  bool is_subset_of(const Bitset& o) const {
    assert(size_ == o.size_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  bool intersects(const Bitset& o) const {
    assert(size_ == o.size_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  // First set bit, or -1 when empty.
  int find_first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return static_cast<int>(k * 64) + ctz(words_[k]);
    return -1;
  }

  // First set bit strictly after i, or -1.
  int find_next(int i) const {
    ++i;
    if (i >= size_) return -1;
    std::size_t k = static_cast<std::size_t>(i) >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
    if (w) return static_cast<int>(k * 64) + ctz(w);
    for (++k; k < words_.size(); ++k)
      if (words_[k]) return static_cast<int>(k * 64) + ctz(words_[k]);
    return -1;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int i = find_first(); i != -1; i = find_next(i)) out.push_back(i);
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    h ^= static_cast<std::uint64_t>(size_);
    h *= 1099511628211ull;
    return static_cast<std::size_t>(h);
  }

 private:
  static std::size_t word_count(int size) {
    return (static_cast<std::size_t>(size) + 63) / 64;
  }

  static int popcount(std::uint64_t w) { return __builtin_popcountll(w); }
  static int ctz(std::uint64_t w) { return __builtin_ctzll(w); }

  // Clear bits at positions >= size_ so that whole-word comparisons stay
  // valid.
  void trim() {
    if (size_ & 63) words_.back() &= ~std::uint64_t{0} >> (64 - (size_ & 63));
  }

  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

// Lexicographic order on the ascending index sequences of the two sets:
// the empty set sorts first and a set precedes its proper extensions.
// This is the canonical order used for every family and subfamily emitted
// by the library.
inline bool lex_less(const Bitset& a, const Bitset& b) {
  int i = a.find_first();
  int j = b.find_first();
  while (i != -1 && j != -1) {
    if (i != j) return i < j;
    i = a.find_next(i);
    j = b.find_next(j);
  }
  return i == -1 && j != -1;
}

}  // namespace lspace
