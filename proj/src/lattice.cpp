#include "patchtop/lattice.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace patchtop {

namespace {

std::vector<std::string> check_carrier(std::vector<std::string> carrier) {
  std::unordered_set<std::string> seen;
  for (const auto& id : carrier)
    if (!seen.insert(id).second) throw Error("duplicate carrier id '" + id + "'");
  return carrier;
}

// Least lattice element containing carrier point x (its principal prime
// filter has this as minimum).
Bits least_containing(const SetLattice& l, std::size_t x) {
  Bits m = Bits::full(l.carrier_size());
  for (const auto& a : l.elements())
    if (a.test(x)) m &= a;
  return m;
}

std::string join_name(const SetLattice& l, const Bits& s) {
  std::string name;
  for (auto i : s.members()) {
    if (!name.empty()) name += '+';
    name += l.carrier_id(i);
  }
  return name.empty() ? std::string("{}") : name;
}

// Join-irreducibles of L in canonical order: non-empty elements that are not
// the union of the lattice elements strictly below them.
std::vector<Bits> irreducible_list(const SetLattice& l) {
  std::vector<Bits> irr;
  for (const auto& e : l.elements()) {
    if (e.empty()) continue;
    Bits below(l.carrier_size());
    for (const auto& a : l.elements())
      if (a != e && e.contains(a)) below |= a;
    if (below != e) irr.push_back(e);
  }
  std::sort(irr.begin(), irr.end(), Bits::canonical_less);
  return irr;
}

}  // namespace

SetLattice SetLattice::generate(std::vector<std::string> carrier,
                                const std::vector<std::vector<std::string>>& generators) {
  SetLattice l;
  l.carrier_ = check_carrier(std::move(carrier));
  const std::size_t n = l.carrier_.size();

  std::unordered_set<Bits, Bits::Hash> fam;
  fam.insert(Bits(n));
  fam.insert(Bits::full(n));
  for (const auto& g : generators) fam.insert(l.subset(g));

  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Bits> snapshot(fam.begin(), fam.end());
    for (std::size_t a = 0; a < snapshot.size(); ++a)
      for (std::size_t b = a + 1; b < snapshot.size(); ++b) {
        if (fam.insert(snapshot[a] & snapshot[b]).second) grew = true;
        if (fam.insert(snapshot[a] | snapshot[b]).second) grew = true;
      }
  }

  l.elements_.assign(fam.begin(), fam.end());
  std::sort(l.elements_.begin(), l.elements_.end(), Bits::canonical_less);
  return l;
}

SetLattice SetLattice::from_sets(std::vector<std::string> carrier, std::vector<Bits> sets) {
  SetLattice l;
  l.carrier_ = check_carrier(std::move(carrier));
  const std::size_t n = l.carrier_.size();

  std::unordered_set<Bits, Bits::Hash> fam(sets.begin(), sets.end());
  fam.insert(Bits(n));
  fam.insert(Bits::full(n));
  for (const auto& a : fam) {
    if (a.universe() != n) throw Error("lattice element not a subset of the carrier");
    for (const auto& b : fam)
      if (!fam.count(a & b) || !fam.count(a | b))
        throw Error("family is not closed under intersection and union");
  }
  l.elements_.assign(fam.begin(), fam.end());
  std::sort(l.elements_.begin(), l.elements_.end(), Bits::canonical_less);
  return l;
}

std::size_t SetLattice::carrier_index(const std::string& id) const {
  for (std::size_t i = 0; i < carrier_.size(); ++i)
    if (carrier_[i] == id) return i;
  throw Error("unknown carrier id '" + id + "'");
}

bool SetLattice::contains(const Bits& s) const {
  return std::find(elements_.begin(), elements_.end(), s) != elements_.end();
}

Bits SetLattice::subset(const std::vector<std::string>& ids) const {
  Bits s(carrier_.size());
  for (const auto& id : ids) s.set(carrier_index(id));
  return s;
}

std::vector<std::string> SetLattice::ids(const Bits& s) const {
  if (s.universe() != carrier_.size()) throw Error("subset not over this carrier");
  std::vector<std::string> r;
  for (auto i : s.members()) r.push_back(carrier_[i]);
  return r;
}

bool SetLattice::separates_points() const {
  const std::size_t n = carrier_.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool separated = false;
      for (const auto& a : elements_)
        if (a.test(x) != a.test(y)) {
          separated = true;
          break;
        }
      if (!separated) return false;
    }
  return true;
}

FinPoset join_irreducibles(const SetLattice& l) {
  std::vector<Bits> irr = irreducible_list(l);
  const std::size_t m = irr.size();
  std::vector<std::string> names;
  names.reserve(m);
  for (const auto& j : irr) names.push_back(join_name(l, j));
  std::vector<Bits> up(m, Bits(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (irr[b].contains(irr[a])) up[a].set(b);
  return FinPoset(std::move(names), std::move(up));
}

ClosureResult spectral_closure(const SetLattice& l) {
  ClosureResult r;
  r.space = join_irreducibles(l);
  std::vector<Bits> irr = irreducible_list(l);

  r.unit.resize(l.carrier_size());
  Bits hit(irr.size());
  for (std::size_t x = 0; x < l.carrier_size(); ++x) {
    Bits m = least_containing(l, x);
    auto it = std::find(irr.begin(), irr.end(), m);
    if (it == irr.end())
      throw Error("internal: least element of a principal filter is not join-irreducible");
    r.unit[x] = static_cast<std::size_t>(it - irr.begin());
    hit.set(r.unit[x]);
  }
  if (hit.count() != irr.size())
    throw Error("internal: closure unit is not surjective");
  return r;
}

ClosureResult closure_via_evaluation(const SetLattice& l) {
  const auto& elems = l.elements();
  const std::size_t m = elems.size();

  // ev(x) has coordinate 0 at U iff x ∈ U; we keep the membership signature
  // mem(x) = { U : x ∈ U } instead, so ev(x) <= ev(y) iff mem(y) ⊆ mem(x).
  std::vector<Bits> sigs;
  std::vector<std::size_t> unit(l.carrier_size());
  for (std::size_t x = 0; x < l.carrier_size(); ++x) {
    Bits sig(m);
    for (std::size_t u = 0; u < m; ++u)
      if (elems[u].test(x)) sig.set(u);
    auto it = std::find(sigs.begin(), sigs.end(), sig);
    if (it == sigs.end()) {
      sigs.push_back(sig);
      unit[x] = sigs.size() - 1;
    } else {
      unit[x] = static_cast<std::size_t>(it - sigs.begin());
    }
  }

  // Canonical point order, for deterministic output.
  std::vector<std::size_t> order(sigs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return Bits::canonical_less(sigs[a], sigs[b]);
  });
  std::vector<std::size_t> rank(sigs.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::vector<std::string> names(sigs.size());
  std::vector<Bits> up(sigs.size(), Bits(sigs.size()));
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    std::string name = "v";
    for (std::size_t u = 0; u < m; ++u) name += sigs[order[i]].test(u) ? '0' : '1';
    names[i] = name;
  }
  for (std::size_t a = 0; a < sigs.size(); ++a)
    for (std::size_t b = 0; b < sigs.size(); ++b)
      if (sigs[order[a]].contains(sigs[order[b]]))  // mem(b) ⊆ mem(a): a <= b
        up[a].set(b);

  ClosureResult r;
  r.space = FinPoset(std::move(names), std::move(up));
  r.unit.resize(unit.size());
  for (std::size_t x = 0; x < unit.size(); ++x) r.unit[x] = rank[unit[x]];
  return r;
}

bool verify_unit_star(const SetLattice& l, const ClosureResult& c) {
  std::vector<Bits> pulled;
  for (const auto& o : c.space.open_sets()) {
    Bits p(l.carrier_size());
    for (std::size_t x = 0; x < l.carrier_size(); ++x)
      if (o.test(c.unit[x])) p.set(x);
    pulled.push_back(p);
  }
  std::sort(pulled.begin(), pulled.end(), Bits::canonical_less);
  if (pulled.size() != l.elements().size()) return false;
  // Injective and onto L (elements() is canonically sorted and duplicate-free).
  for (std::size_t i = 0; i + 1 < pulled.size(); ++i)
    if (pulled[i] == pulled[i + 1]) return false;
  return pulled == l.elements();
}

std::optional<std::vector<std::size_t>> commuting_iso(const ClosureResult& a,
                                                      const ClosureResult& b) {
  if (a.unit.size() != b.unit.size()) return std::nullopt;
  // Units are surjective, so the iso is forced: a.unit[x] -> b.unit[x].
  return forced_iso(a, b.space, b.unit);
}

std::optional<std::vector<std::size_t>> forced_iso(
    const ClosureResult& c, const FinPoset& target,
    const std::vector<std::size_t>& target_of_carrier) {
  const std::size_t n = c.space.size();
  if (n != target.size()) return std::nullopt;
  std::vector<std::size_t> phi(n, n);
  for (std::size_t d = 0; d < target_of_carrier.size(); ++d) {
    std::size_t p = c.unit[d], q = target_of_carrier[d];
    if (phi[p] == n)
      phi[p] = q;
    else if (phi[p] != q)
      return std::nullopt;  // not well-defined
  }
  Bits hit(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (phi[p] == n) return std::nullopt;  // unit misses a point
    hit.set(phi[p]);
  }
  if (hit.count() != n) return std::nullopt;  // not bijective
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (c.space.leq(p, q) != target.leq(phi[p], phi[q])) return std::nullopt;
  return phi;
}

SetLattice restricted_lattice(const SetMap& i, const FinPoset& x) {
  if (i.domain.size() != i.image.size())
    throw Error("restricted_lattice: domain and image lists differ in length");
  std::vector<std::size_t> img(i.domain.size());
  for (std::size_t k = 0; k < i.image.size(); ++k) img[k] = x.index_of(i.image[k]);

  std::vector<Bits> sets;
  std::unordered_set<Bits, Bits::Hash> seen;
  for (const auto& u : x.open_sets()) {
    Bits p(i.domain.size());
    for (std::size_t k = 0; k < img.size(); ++k)
      if (u.test(img[k])) p.set(k);
    if (seen.insert(p).second) sets.push_back(p);
  }
  return SetLattice::from_sets(i.domain, std::move(sets));
}

Realization realize_in_ambient(const SetMap& i, const FinPoset& x) {
  if (i.domain.size() != i.image.size())
    throw Error("realize_in_ambient: domain and image lists differ in length");

  Realization r;

  // Image subspace of X, induced order, in X's element order.
  std::vector<std::size_t> img(i.domain.size());
  Bits img_set(x.size());
  for (std::size_t k = 0; k < i.image.size(); ++k) {
    img[k] = x.index_of(i.image[k]);
    img_set.set(img[k]);
  }
  std::vector<std::size_t> pts = img_set.members();
  std::vector<std::size_t> pos(x.size(), x.size());
  for (std::size_t t = 0; t < pts.size(); ++t) pos[pts[t]] = t;
  std::vector<std::string> names;
  names.reserve(pts.size());
  for (auto p : pts) names.push_back(x.element(p));
  std::vector<Bits> up(pts.size(), Bits(pts.size()));
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b)
      if (x.leq(pts[a], pts[b])) up[a].set(b);
  r.subspace = FinPoset(std::move(names), std::move(up));
  r.corestriction.resize(img.size());
  for (std::size_t k = 0; k < img.size(); ++k) r.corestriction[k] = pos[img[k]];

  r.closure = spectral_closure(restricted_lattice(i, x));

  // Canonical map: the closure point unit(d) goes to i(d).  Well-definedness,
  // bijectivity and order-compatibility are verified; failure would falsify
  // the realization and is reported loudly.
  auto phi = forced_iso(r.closure, r.subspace, r.corestriction);
  if (!phi)
    throw Error("realization failed: the canonical map to the image subspace is "
                "not an isomorphism");
  r.iso = std::move(*phi);
  return r;
}

SpectralMapFin induced_closure_map(const SetLattice& l, const SetLattice& l2,
                                   const SetMap& f, const ClosureResult& ca,
                                   const ClosureResult& cb) {
  if (f.domain.size() != f.image.size())
    throw Error("induced_closure_map: domain and image lists differ in length");
  if (f.domain.size() != l.carrier_size())
    throw Error("induced_closure_map: map does not cover the carrier");

  std::vector<std::size_t> fi(l.carrier_size());
  for (std::size_t k = 0; k < f.domain.size(); ++k)
    fi[l.carrier_index(f.domain[k])] = l2.carrier_index(f.image[k]);

  // Morphism of pairs: preimages of L2-sets must land in L.
  for (const auto& a2 : l2.elements()) {
    Bits pre(l.carrier_size());
    for (std::size_t xx = 0; xx < l.carrier_size(); ++xx)
      if (a2.test(fi[xx])) pre.set(xx);
    if (!l.contains(pre))
      throw Error("not a morphism of pairs: a preimage leaves the source lattice");
  }

  // Point map on closures: unit(x) -> unit'(f(x)); checked well-defined.
  const std::size_t n = ca.space.size();
  std::vector<std::size_t> phi(n, cb.space.size());
  for (std::size_t xx = 0; xx < l.carrier_size(); ++xx) {
    std::size_t p = ca.unit[xx], q = cb.unit[fi[xx]];
    if (phi[p] == cb.space.size())
      phi[p] = q;
    else if (phi[p] != q)
      throw Error("internal: induced closure map is not well-defined");
  }
  std::vector<std::string> images;
  images.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (phi[p] == cb.space.size())
      throw Error("internal: closure unit not surjective");
    images.push_back(cb.space.element(phi[p]));
  }
  return SpectralMapFin(ca.space, cb.space, images);
}

}  // namespace patchtop
