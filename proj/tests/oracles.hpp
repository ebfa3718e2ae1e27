// Test-side oracles, independent of the library implementation paths they
// check: exhaustive poset enumeration up to isomorphism, brute-force lattice
// closure, and random structure generators.
#ifndef PATCHTOP_TESTS_ORACLES_HPP
#define PATCHTOP_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "patchtop/finspace.hpp"
#include "patchtop/lattice.hpp"

namespace oracles {

using patchtop::Bits;
using patchtop::FinPoset;

// Relation on {0..n-1} packed as n*n bits (row-major), diagonal included.
struct RelMask {
  int n = 0;
  std::uint64_t bits = 0;
  bool leq(int i, int j) const { return (bits >> (i * n + j)) & 1ull; }
};

inline bool is_partial_order(const RelMask& r) {
  for (int i = 0; i < r.n; ++i)
    if (!r.leq(i, i)) return false;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j) {
      if (i != j && r.leq(i, j) && r.leq(j, i)) return false;
      if (!r.leq(i, j)) continue;
      for (int k = 0; k < r.n; ++k)
        if (r.leq(j, k) && !r.leq(i, k)) return false;
    }
  return true;
}

inline std::uint64_t relabel(const RelMask& r, const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      if (r.leq(i, j)) out |= 1ull << (perm[i] * r.n + perm[j]);
  return out;
}

inline std::uint64_t canonical_form(const RelMask& r) {
  std::vector<int> perm(r.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~0ull;
  do {
    best = std::min(best, relabel(r, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline FinPoset to_poset(const RelMask& r) {
  std::vector<std::string> names;
  for (int i = 0; i < r.n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<Bits> up(r.n, Bits(r.n));
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      if (r.leq(i, j)) up[i].set(j);
  return FinPoset(std::move(names), std::move(up));
}

// All posets on exactly n points, one per isomorphism class.
inline std::vector<FinPoset> posets_up_to_iso(int n) {
  if (n == 0) return {FinPoset()};
  std::vector<std::pair<int, int>> strict;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) strict.emplace_back(i, j);
  std::uint64_t diag = 0;
  for (int i = 0; i < n; ++i) diag |= 1ull << (i * n + i);

  std::set<std::uint64_t> seen;
  std::vector<FinPoset> out;
  for (std::uint64_t mask = 0; mask < (1ull << strict.size()); ++mask) {
    RelMask r{n, diag};
    for (std::size_t b = 0; b < strict.size(); ++b)
      if ((mask >> b) & 1ull) r.bits |= 1ull << (strict[b].first * n + strict[b].second);
    if (!is_partial_order(r)) continue;
    if (seen.insert(canonical_form(r)).second) out.push_back(to_poset(r));
  }
  return out;
}

// All posets on 0..n points, one per isomorphism class.
inline std::vector<FinPoset> posets_up_to_iso_up_to(int n) {
  std::vector<FinPoset> out;
  for (int k = 0; k <= n; ++k) {
    auto v = posets_up_to_iso(k);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

using Rng = std::mt19937_64;

inline FinPoset random_poset(int n, Rng& rng, double edge_prob = 0.35) {
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::bernoulli_distribution edge(edge_prob);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> le;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) le.emplace_back(names[label[i]], names[label[j]]);
  return FinPoset(std::move(names), le);
}

inline Bits random_subset(std::size_t universe, Rng& rng, double p = 0.5) {
  std::bernoulli_distribution in(p);
  Bits s(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (in(rng)) s.set(i);
  return s;
}

inline Bits random_up_set(const FinPoset& x, Rng& rng, double p = 0.4) {
  return x.up_closure(random_subset(x.size(), rng, p));
}

// Brute-force closure of a family of subsets under pairwise meet/join, with
// the bounds adjoined; used as the independent oracle for SetLattice.
inline std::vector<Bits> brute_force_lattice(std::size_t universe, std::vector<Bits> gens) {
  std::set<Bits> fam(gens.begin(), gens.end());
  fam.insert(Bits(universe));
  fam.insert(Bits::full(universe));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Bits> snap(fam.begin(), fam.end());
    for (std::size_t a = 0; a < snap.size(); ++a)
      for (std::size_t b = a + 1; b < snap.size(); ++b) {
        if (fam.insert(snap[a] & snap[b]).second) grew = true;
        if (fam.insert(snap[a] | snap[b]).second) grew = true;
      }
  }
  std::vector<Bits> out(fam.begin(), fam.end());
  std::sort(out.begin(), out.end(), Bits::canonical_less);
  return out;
}

// All up-sets of a poset, by brute force over all subsets (n <= 20 or so).
inline std::vector<Bits> brute_force_up_sets(const FinPoset& x) {
  std::vector<Bits> out;
  const std::size_t n = x.size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Bits s(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1ull) s.set(i);
    if (x.is_up_set(s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), Bits::canonical_less);
  return out;
}

}  // namespace oracles

#endif
