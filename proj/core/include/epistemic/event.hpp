#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace epistemic {

/// A set of state indices over a fixed universe {0, ..., universe_size - 1}.
///
/// Stored as a packed bitset so that intersection, union, complement and
/// inclusion cost one pass over |universe| / 64 words. Two events compare
/// equal only if they share a universe and have the same members.
class Event {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Event() = default;
  explicit Event(std::size_t universe_size)
      : size_(universe_size), words_((universe_size + kWordBits - 1) / kWordBits, 0) {}
  Event(std::size_t universe_size, std::initializer_list<std::size_t> members)
      : Event(universe_size) {
    for (std::size_t m : members) insert(m);
  }

  static Event full(std::size_t universe_size) {
    Event e(universe_size);
    e.fill();
    return e;
  }

  /// Event whose members are the set bits of `mask` (universe <= 64).
  static Event from_mask(std::size_t universe_size, std::uint64_t mask) {
    Event e(universe_size);
    if (!e.words_.empty()) e.words_[0] = mask;
    e.trim();
    return e;
  }

  std::size_t universe_size() const { return size_; }

  bool contains(std::size_t i) const {
    return i < size_ && ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0;
  }
  void insert(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void erase(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void fill() {
    for (auto& w : words_) w = ~Word{0};
    trim();
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  bool empty() const {
    for (Word w : words_)
      if (w != 0) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool is_subset_of(const Event& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    return true;
  }
  bool intersects(const Event& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & other.words_[k]) != 0) return true;
    return false;
  }

  Event& operator&=(const Event& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Event& operator|=(const Event& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// Set difference.
  Event& operator-=(const Event& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend Event operator&(Event a, const Event& b) { return a &= b; }
  friend Event operator|(Event a, const Event& b) { return a |= b; }
  friend Event operator-(Event a, const Event& b) { return a -= b; }

  /// Complement relative to the universe.
  Event operator~() const {
    Event r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  /// Lowest member, or universe_size() when empty.
  std::size_t first() const { return next(0); }
  /// Lowest member >= from, or universe_size() when none.
  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t k = from / kWordBits;
    Word w = words_[k] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return size_;
      w = words_[k];
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = first(); i < size_; i = next(i + 1)) fn(i);
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  const std::vector<Word>& words() const { return words_; }

  friend bool operator==(const Event& a, const Event& b) = default;
  /// Strict weak order (universe first, then bit pattern); for use as a map key.
  friend bool operator<(const Event& a, const Event& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (std::size_t k = a.words_.size(); k-- > 0;)
      if (a.words_[k] != b.words_[k]) return a.words_[k] < b.words_[k];
    return false;
  }

 private:
  void trim() {
    if (size_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace epistemic

template <>
struct std::hash<epistemic::Event> {
  std::size_t operator()(const epistemic::Event& e) const noexcept {
    std::size_t h = e.universe_size();
    for (auto w : e.words()) h = h * 0x9E3779B97F4A7C15ULL ^ (w + (h << 6) + (h >> 2));
    return h;
  }
};
