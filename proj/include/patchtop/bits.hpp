#ifndef PATCHTOP_BITS_HPP
#define PATCHTOP_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace patchtop {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subset of a fixed finite universe {0, ..., n-1}.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t universe) : n_(universe), w_(words(universe), 0) {}

  static Bits full(std::size_t universe) {
    Bits b(universe);
    for (auto& w : b.w_) w = ~0ull;
    b.trim();
    return b;
  }

  static Bits singleton(std::size_t universe, std::size_t i) {
    Bits b(universe);
    b.set(i);
    return b;
  }

  std::size_t universe() const { return n_; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ull; }
  void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  // Index of the least member, or universe() when empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return (k << 6) + static_cast<std::size_t>(__builtin_ctzll(w_[k]));
    return n_;
  }

  Bits& operator&=(const Bits& o) {
    check(o);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }

  Bits& operator|=(const Bits& o) {
    check(o);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }

  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

  // Set difference: this minus o.
  Bits minus(const Bits& o) const {
    check(o);
    Bits r(*this);
    for (std::size_t k = 0; k < r.w_.size(); ++k) r.w_[k] &= ~o.w_[k];
    return r;
  }

  Bits complement() const {
    Bits r(*this);
    for (auto& w : r.w_) w = ~w;
    r.trim();
    return r;
  }

  // o ⊆ this
  bool contains(const Bits& o) const {
    check(o);
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (o.w_[k] & ~w_[k]) return false;
    return true;
  }

  bool intersects(const Bits& o) const {
    check(o);
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (o.w_[k] & w_[k]) return true;
    return false;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }

  // Arbitrary total order, usable as a map key.
  bool operator<(const Bits& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return w_ < o.w_;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> r;
    r.reserve(count());
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) r.push_back(i);
    return r;
  }

  // Deterministic order for reports: by cardinality, then lexicographic members.
  static bool canonical_less(const Bits& a, const Bits& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.members() < b.members();
  }

  struct Hash {
    std::size_t operator()(const Bits& b) const {
      std::uint64_t h = 1469598103934665603ull;
      for (auto w : b.w_) {
        h ^= w;
        h *= 1099511628211ull;
      }
      h ^= b.n_;
      h *= 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };

private:
  static std::size_t words(std::size_t n) { return (n + 63) / 64; }

  void trim() {
    if (n_ & 63) w_.back() &= (1ull << (n_ & 63)) - 1ull;
    if (w_.empty() && n_ > 0) w_.assign(words(n_), 0);
  }

  void check(const Bits& o) const {
    if (n_ != o.n_) throw Error("Bits: universe size mismatch");
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace patchtop

#endif
