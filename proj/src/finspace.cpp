#include "patchtop/finspace.hpp"

#include <algorithm>
#include <unordered_set>

namespace patchtop {

namespace {

void sort_canonical(std::vector<Bits>& sets) {
  std::sort(sets.begin(), sets.end(), Bits::canonical_less);
}

}  // namespace

FinPoset::FinPoset(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& le)
    : elements_(std::move(elements)) {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(elements_[i], i).second)
      throw Error("duplicate element id '" + elements_[i] + "'");
  }
  up_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) up_[i].set(i);
  for (const auto& [a, b] : le) up_[index_of(a)].set(index_of(b));
  // Reflexive-transitive closure (Warshall over bit rows).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up_[i].test(k)) up_[i] |= up_[k];
  finish_from_up_rows();
}

FinPoset::FinPoset(std::vector<std::string> elements, std::vector<Bits> up_rows)
    : elements_(std::move(elements)), up_(std::move(up_rows)) {
  const std::size_t n = elements_.size();
  if (up_.size() != n) throw Error("up-row count does not match element count");
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(elements_[i], i).second)
      throw Error("duplicate element id '" + elements_[i] + "'");
    if (up_[i].universe() != n) throw Error("up-row universe mismatch");
    if (!up_[i].test(i)) throw Error("order is not reflexive");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (up_[i].test(k) && !up_[i].contains(up_[k]))
        throw Error("order is not transitive");
  finish_from_up_rows();
}

void FinPoset::finish_from_up_rows() {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (up_[i].test(j) && up_[j].test(i))
        throw Error("antisymmetry violated between '" + elements_[i] + "' and '" +
                    elements_[j] + "'");
  down_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (up_[j].test(i)) down_[i].set(j);
}

std::size_t FinPoset::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("unknown element id '" + id + "'");
  return it->second;
}

Bits FinPoset::subset(const std::vector<std::string>& ids) const {
  Bits s(size());
  for (const auto& id : ids) s.set(index_of(id));
  return s;
}

std::vector<std::string> FinPoset::ids(const Bits& s) const {
  validate_subset(s);
  std::vector<std::string> r;
  for (auto i : s.members()) r.push_back(elements_[i]);
  return r;
}

Bits FinPoset::strict_up_of(std::size_t i) const {
  Bits r = up_[i];
  r.reset(i);
  return r;
}

Bits FinPoset::up_closure(const Bits& s) const {
  validate_subset(s);
  Bits r(size());
  for (auto i : s.members()) r |= up_[i];
  return r;
}

Bits FinPoset::down_closure(const Bits& s) const {
  validate_subset(s);
  Bits r(size());
  for (auto i : s.members()) r |= down_[i];
  return r;
}

std::vector<Bits> FinPoset::open_sets() const {
  // Walk the lattice of down-sets: grow by one minimal missing element.
  std::unordered_set<Bits, Bits::Hash> seen;
  std::vector<Bits> work;
  work.push_back(empty_set());
  seen.insert(work.back());
  for (std::size_t head = 0; head < work.size(); ++head) {
    Bits d = work[head];
    for (std::size_t x = 0; x < size(); ++x) {
      if (d.test(x)) continue;
      Bits below = down_[x];
      below.reset(x);
      if (!d.contains(below)) continue;
      Bits next = d;
      next.set(x);
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  sort_canonical(work);
  return work;
}

Bits FinPoset::maximal_points(const Bits& within) const {
  validate_subset(within);
  Bits r(size());
  for (auto i : within.members()) {
    Bits above = strict_up_of(i);
    above &= within;
    if (above.empty()) r.set(i);
  }
  return r;
}

void FinPoset::validate_subset(const Bits& s) const {
  if (s.universe() != size()) throw Error("subset does not belong to this space");
}

bool same_poset(const FinPoset& a, const FinPoset& b) {
  if (a.size() != b.size() || a.elements() != b.elements()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq(i, j) != b.leq(i, j)) return false;
  return true;
}

Bits closure(const FinPoset& x, const Bits& s) { return x.up_closure(s); }

FinPoset hochster_dual(const FinPoset& x) {
  std::vector<Bits> rows;
  rows.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) rows.push_back(x.down_of(i));
  return FinPoset(x.elements(), std::move(rows));
}

bool is_thomason(const FinPoset& x, const Bits& s) { return x.is_up_set(s); }

std::vector<Bits> constructible_sets(const FinPoset& x) {
  const std::size_t n = x.size();
  if (n > 16)
    throw Error("constructible_sets is materialized only for spaces with at most "
                "16 points; query via the generating basis instead");

  std::vector<Bits> basis = x.open_sets();
  {
    std::vector<Bits> comps;
    comps.reserve(basis.size());
    for (const auto& u : basis) comps.push_back(u.complement());
    basis.insert(basis.end(), comps.begin(), comps.end());
  }

  std::unordered_set<Bits, Bits::Hash> result(basis.begin(), basis.end());
  if (n <= 10) {
    // Literal closure under pairwise intersection and union.
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Bits> snapshot(result.begin(), result.end());
      for (std::size_t a = 0; a < snapshot.size(); ++a) {
        for (std::size_t b = a; b < snapshot.size(); ++b) {
          if (result.insert(snapshot[a] & snapshot[b]).second) grew = true;
          if (result.insert(snapshot[a] | snapshot[b]).second) grew = true;
        }
      }
    }
  } else {
    // The pairwise closure is the set of unions of basis atoms; check that
    // every atom is a singleton, then the closure is the full power set.
    for (std::size_t i = 0; i < n; ++i) {
      Bits cell = Bits::full(n);
      for (const auto& b : basis)
        if (b.test(i)) cell &= b;
      if (cell.count() != 1)
        throw Error("internal: basis atoms of a finite T0 space must be singletons");
    }
    result.clear();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      Bits s(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1ull) s.set(i);
      result.insert(s);
    }
  }

  std::size_t expected = std::size_t(1) << n;
  if (result.size() != expected)
    throw Error("internal: constructible closure is not the full power set");
  std::vector<Bits> out(result.begin(), result.end());
  sort_canonical(out);
  return out;
}

namespace {

// Shared density kernel: find a non-empty constructible avoided by d.
std::optional<Bits> find_missed_constructible(const FinPoset& x, const Bits& d) {
  if (x.size() <= 16) {
    for (const auto& c : constructible_sets(x))
      if (!c.empty() && !c.intersects(d)) return c;
    return std::nullopt;
  }
  // Basis route: the sets U ∩ V^c for quasi-compact opens U, V form a basis
  // of the constructible topology, so meeting every non-empty basis element
  // is equivalent to meeting every non-empty constructible.
  std::vector<Bits> opens = x.open_sets();
  for (const auto& u : opens)
    for (const auto& v : opens) {
      Bits c = u.minus(v);
      if (!c.empty() && !c.intersects(d)) return c;
    }
  return std::nullopt;
}

}  // namespace

bool patch_dense_fin(const FinPoset& x, const Bits& d) {
  if (d.universe() != x.size()) throw Error("subset does not belong to this space");
  return !find_missed_constructible(x, d).has_value();
}

std::optional<Bits> patch_density_witness(const FinPoset& x, const Bits& d) {
  if (d.universe() != x.size()) throw Error("subset does not belong to this space");
  return find_missed_constructible(x, d);
}

Bits locally_closed_points(const FinPoset& x) {
  Bits r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Bits meet = x.down_of(i) & x.up_of(i);
    if (meet == Bits::singleton(x.size(), i)) r.set(i);
  }
  return r;
}

Bits weakly_visible_points_fin(const FinPoset& x) {
  Bits r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Candidate pair: V = up(x), W = up(x) minus {x}; both are Thomason.
    Bits v = x.up_of(i);
    Bits w = x.strict_up_of(i);
    Bits cut = v.minus(w);
    if (is_thomason(x, v) && is_thomason(x, w) && cut == Bits::singleton(x.size(), i))
      r.set(i);
  }
  return r;
}

bool is_jacobson(const FinPoset& x) {
  // Closed sets are the complements of the opens.
  for (const auto& u : x.open_sets()) {
    Bits c = u.complement();
    Bits maxima = x.maximal_points(c);
    if (x.up_closure(maxima) != c) return false;
  }
  return true;
}

DenseEpiResult lemma_dense_epi(const FinPoset& x, const std::vector<std::string>& images) {
  DenseEpiResult r;
  const std::size_t d = images.size();
  std::vector<std::size_t> img(d);
  Bits img_set(x.size());
  for (std::size_t k = 0; k < d; ++k) {
    img[k] = x.index_of(images[k]);
    img_set.set(img[k]);
  }

  // (i) image patch-dense, by constructible enumeration.
  r.missed_constructible = find_missed_constructible(x, img_set);
  r.dense = !r.missed_constructible.has_value();

  std::vector<Bits> opens = x.open_sets();
  auto pre = [&](const Bits& u) {
    Bits p(d);
    for (std::size_t k = 0; k < d; ++k)
      if (u.test(img[k])) p.set(k);
    return p;
  };

  // (ii) over all pairs of quasi-compact opens.
  r.opens_separated = true;
  for (const auto& u : opens) {
    Bits pu = pre(u);
    for (const auto& v : opens) {
      if (v.contains(u)) continue;  // U ⊆ V: nothing to check
      if (pre(v).contains(pu)) {
        r.opens_separated = false;
        r.opens_witness = std::make_pair(u, v);
        break;
      }
    }
    if (!r.opens_separated) break;
  }

  // (iii), restricted to Sierpinski-valued spectral maps: these correspond to
  // quasi-compact opens, and α i = β i becomes U ∩ i(D) = V ∩ i(D).
  r.sierpinski_epi = true;
  for (const auto& u : opens) {
    for (const auto& v : opens) {
      if (u == v) continue;
      if ((u & img_set) == (v & img_set)) {
        r.sierpinski_epi = false;
        r.epi_witness = std::make_pair(u, v);
        break;
      }
    }
    if (!r.sierpinski_epi) break;
  }
  return r;
}

SpectralMapFin::SpectralMapFin(FinPoset source, FinPoset target,
                               const std::vector<std::string>& images)
    : source_(std::move(source)), target_(std::move(target)) {
  if (images.size() != source_.size())
    throw Error("spectral map: image list does not match source size");
  map_.reserve(images.size());
  for (const auto& id : images) map_.push_back(target_.index_of(id));
  for (std::size_t i = 0; i < source_.size(); ++i)
    for (std::size_t j = 0; j < source_.size(); ++j)
      if (source_.leq(i, j) && !target_.leq(map_[i], map_[j]))
        throw Error("map is not monotone: " + source_.element(i) + " <= " +
                    source_.element(j) + " but images are unrelated");
}

Bits SpectralMapFin::image() const {
  Bits r(target_.size());
  for (auto t : map_) r.set(t);
  return r;
}

Bits SpectralMapFin::preimage(const Bits& s) const {
  if (s.universe() != target_.size()) throw Error("preimage: subset not in target");
  Bits r(source_.size());
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (s.test(map_[i])) r.set(i);
  return r;
}

}  // namespace patchtop
