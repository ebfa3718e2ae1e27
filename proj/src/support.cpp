#include "patchtop/support.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace patchtop {

// ---------------------------------------------------------------------------
// ObjectTerm

ObjectTerm ObjectTerm::zero() { return ObjectTerm(Kind::Zero); }
ObjectTerm ObjectTerm::one() { return ObjectTerm(Kind::One); }

ObjectTerm ObjectTerm::gen(std::string label) {
  ObjectTerm t(Kind::Gen);
  t.label_ = std::move(label);
  return t;
}

ObjectTerm ObjectTerm::tensor(ObjectTerm a, ObjectTerm b) {
  ObjectTerm t(Kind::Tensor);
  t.kids_.push_back(std::move(a));
  t.kids_.push_back(std::move(b));
  return t;
}

ObjectTerm ObjectTerm::sum(ObjectTerm a, ObjectTerm b) {
  ObjectTerm t(Kind::Sum);
  t.kids_.push_back(std::move(a));
  t.kids_.push_back(std::move(b));
  return t;
}

ObjectTerm ObjectTerm::susp(ObjectTerm a) {
  ObjectTerm t(Kind::Susp);
  t.kids_.push_back(std::move(a));
  return t;
}

int ObjectTerm::size() const {
  int s = 1;
  for (const auto& k : kids_) s += k.size();
  return s;
}

std::string ObjectTerm::text() const {
  switch (kind_) {
    case Kind::Zero:
      return "0";
    case Kind::One:
      return "1";
    case Kind::Gen:
      return label_;
    case Kind::Tensor:
      return "(" + kids_[0].text() + "*" + kids_[1].text() + ")";
    case Kind::Sum:
      return "(" + kids_[0].text() + "+" + kids_[1].text() + ")";
    case Kind::Susp:
      return "S(" + kids_[0].text() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SupportDatum

SupportDatum SupportDatum::finite(FinPoset space,
                                  std::vector<std::pair<std::string, Bits>> generators) {
  SupportDatum d;
  for (auto& [label, s] : generators) {
    if (!is_thomason(space, s))
      throw Error("support of generator '" + label + "' is not a Thomason subset");
    if (!d.assign_.emplace(label, s).second)
      throw Error("duplicate generator label '" + label + "'");
    d.labels_.push_back(label);
  }
  d.fin_ = std::move(space);
  return d;
}

SupportDatum SupportDatum::pro(ProSpace space,
                               std::vector<std::pair<std::string, LevelSet>> generators) {
  SupportDatum d;
  int pres = 0;
  for (const auto& [label, ls] : generators) {
    if (ls.level > space.working_depth())
      throw Error("support of generator '" + label + "' is presented beyond the working depth");
    if (!is_thomason(space.level(ls.level), ls.members))
      throw Error("support of generator '" + label + "' is not Thomason at its level");
    pres = std::max(pres, ls.level);
  }
  // Normalize every support to one common presentation level; preimages of
  // up-sets stay up-sets, so the Thomason property is preserved.
  for (const auto& [label, ls] : generators) {
    Bits lifted = lift(space, ls, pres).members;
    if (!d.assign_.emplace(label, lifted).second)
      throw Error("duplicate generator label '" + label + "'");
    d.labels_.push_back(label);
    d.orig_.emplace(label, ls);
  }
  d.pres_level_ = pres;
  d.pro_ = std::move(space);
  return d;
}

const FinPoset& SupportDatum::fin_space() const {
  if (!fin_) throw Error("not a finite-space support datum");
  return *fin_;
}

const ProSpace& SupportDatum::pro_space() const {
  if (!pro_) throw Error("not a pro-space support datum");
  return *pro_;
}

const FinPoset& SupportDatum::arena() const {
  return fin_ ? *fin_ : pro_->level(pres_level_);
}

const Bits& SupportDatum::generator_support(const std::string& label) const {
  auto it = assign_.find(label);
  if (it == assign_.end()) throw Error("unassigned generator '" + label + "'");
  return it->second;
}

const LevelSet& SupportDatum::generator_level_set(const std::string& label) const {
  auto it = orig_.find(label);
  if (it == orig_.end()) throw Error("generator '" + label + "' has no level presentation");
  return it->second;
}

// ---------------------------------------------------------------------------
// supp and the term bank

Bits supp(const SupportDatum& d, const ObjectTerm& t) {
  const FinPoset& a = d.arena();
  switch (t.kind()) {
    case ObjectTerm::Kind::Zero:
      return a.empty_set();
    case ObjectTerm::Kind::One:
      return a.full_set();
    case ObjectTerm::Kind::Gen:
      return d.generator_support(t.label());
    case ObjectTerm::Kind::Tensor:
      return supp(d, t.children()[0]) & supp(d, t.children()[1]);
    case ObjectTerm::Kind::Sum:
      return supp(d, t.children()[0]) | supp(d, t.children()[1]);
    case ObjectTerm::Kind::Susp:
      return supp(d, t.children()[0]);
  }
  throw Error("internal: unreachable");
}

Bits basic_constructible(const SupportDatum& d, const ObjectTerm& k, const ObjectTerm& l) {
  return supp(d, k).minus(supp(d, l));
}

TermBank enumerate_supports(const SupportDatum& d, int bound) {
  if (bound < 1) throw Error("term size bound must be at least 1");
  TermBank bank;
  std::map<Bits, std::size_t> seen;
  std::vector<int> sizes;

  auto add = [&](const Bits& s, const ObjectTerm& t, int size) {
    if (seen.count(s)) return;
    seen.emplace(s, bank.supports.size());
    bank.supports.push_back(s);
    bank.reps.push_back(t);
    sizes.push_back(size);
  };

  const FinPoset& a = d.arena();
  add(a.empty_set(), ObjectTerm::zero(), 1);
  add(a.full_set(), ObjectTerm::one(), 1);
  for (const auto& g : d.generator_labels())
    add(d.generator_support(g), ObjectTerm::gen(g), 1);

  // Grow by total term size; suspension never changes a support, so only
  // tensor (intersection) and sum (union) can contribute new ones.
  for (int size = 3; size <= bound; ++size) {
    std::size_t known = bank.supports.size();
    for (std::size_t i = 0; i < known; ++i) {
      for (std::size_t j = i; j < known; ++j) {
        if (sizes[i] + sizes[j] + 1 != size) continue;
        add(bank.supports[i] & bank.supports[j],
            ObjectTerm::tensor(bank.reps[i], bank.reps[j]), size);
        add(bank.supports[i] | bank.supports[j],
            ObjectTerm::sum(bank.reps[i], bank.reps[j]), size);
      }
    }
  }

  bank.saturated = true;
  for (std::size_t i = 0; i < bank.supports.size() && bank.saturated; ++i)
    for (std::size_t j = i; j < bank.supports.size() && bank.saturated; ++j)
      if (!seen.count(bank.supports[i] & bank.supports[j]) ||
          !seen.count(bank.supports[i] | bank.supports[j]))
        bank.saturated = false;
  return bank;
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

// All up-sets of a poset (the Thomason subsets in the finite case).
std::vector<Bits> all_up_sets(const FinPoset& x) {
  std::vector<Bits> r;
  for (const auto& u : x.open_sets()) r.push_back(u.complement());
  std::sort(r.begin(), r.end(), Bits::canonical_less);
  return r;
}

// Closure of the generator supports under intersection and union (with the
// bounds), independent of any term size bound.
std::vector<Bits> true_realizable(const SupportDatum& d) {
  const FinPoset& a = d.arena();
  std::vector<Bits> work;
  std::map<Bits, bool> seen;
  auto add = [&](const Bits& s) {
    if (!seen.emplace(s, true).second) return false;
    work.push_back(s);
    return true;
  };
  add(a.empty_set());
  add(a.full_set());
  for (const auto& g : d.generator_labels()) add(d.generator_support(g));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Bits> snapshot = work;
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        if (add(snapshot[i] & snapshot[j])) grew = true;
        if (add(snapshot[i] | snapshot[j])) grew = true;
      }
  }
  std::sort(work.begin(), work.end(), Bits::canonical_less);
  return work;
}

bool generators_generate(const SupportDatum& d) {
  return true_realizable(d) == all_up_sets(d.arena());
}

// Trace of a pro family on the arena level: the elements hit by resolving
// the family's points (section images scanned up to scan_depth).
Bits family_trace(const SupportDatum& d, const DenseFamily& f, int scan_depth) {
  const ProSpace& x = d.pro_space();
  const int pres = d.presentation_level();
  Bits trace(x.level(pres).size());
  auto excluded = [&](const ProPoint& p) {
    for (const auto& q : f.excluded)
      if (same_point_up_to(p, q, scan_depth)) return true;
    return false;
  };
  for (const auto& p : f.points)
    if (!excluded(p)) trace.set(p.resolve(pres));
  if (f.sections) {
    for (int m = 0; m <= scan_depth; ++m) {
      const FinPoset& lm = x.level(m);
      for (std::size_t y = 0; y < lm.size(); ++y) {
        ProPoint sp = ProPoint::section(*f.sections, m, lm.element(y));
        if (!excluded(sp)) trace.set(sp.resolve(pres));
      }
    }
  }
  return trace;
}

}  // namespace

// ---------------------------------------------------------------------------
// Distinguishing supports

DistinguishReport distinguishes_supports(const SupportDatum& d, const MapFamily& fam,
                                         int bound, int depth) {
  DistinguishReport r;
  r.bound = bound;
  r.depth = depth;
  TermBank bank = enumerate_supports(d, bound);
  r.saturated = bank.saturated;
  r.generators_generate_opens = generators_generate(d);
  const FinPoset& a = d.arena();

  // Per-map preimage functions and the union of images, on the arena.
  std::vector<std::vector<std::size_t>> resolutions;  // map index -> arena index per point
  Bits image_union(a.size());
  if (!d.is_pro()) {
    for (const auto& m : fam.finite_maps) {
      if (!same_poset(m.target(), a))
        throw Error("map family: a map does not land in the datum's space");
      image_union |= m.image();
      std::vector<std::size_t> res;
      res.reserve(m.source().size());
      for (std::size_t i = 0; i < m.source().size(); ++i) res.push_back(m.apply(i));
      resolutions.push_back(std::move(res));
    }
    r.full_patch_density = patch_dense_fin(a, image_union);
  } else {
    if (!fam.pro_family) throw Error("pro support datum needs a pro map family");
    const ProSpace& x = d.pro_space();
    const int pres = d.presentation_level();
    const int vd = std::max(depth, pres);
    if (vd > x.working_depth())
      throw Error("distinguishing needs the presentation level within the working depth");
    if (fam.pro_family->sections) {
      for (int i = 0; i <= depth; ++i) {
        const FinPoset& li = x.level(i);
        std::vector<std::size_t> res;
        res.reserve(li.size());
        for (std::size_t y = 0; y < li.size(); ++y)
          res.push_back(ProPoint::section(*fam.pro_family->sections, i, li.element(y)).resolve(pres));
        resolutions.push_back(std::move(res));
      }
    }
    for (const auto& p : fam.pro_family->points)
      resolutions.push_back({p.resolve(pres)});
    for (const auto& res : resolutions)
      for (auto e : res) image_union.set(e);
    auto density = patch_dense_pro(x, *fam.pro_family, depth);
    r.full_patch_density = density.verdict != ProDensity::NotDense;
  }

  auto preimage = [&](const std::vector<std::size_t>& res, const Bits& s) {
    Bits p(res.size());
    for (std::size_t i = 0; i < res.size(); ++i)
      if (s.test(res[i])) p.set(i);
    return p;
  };

  // (A) the displayed implication: bank supports are pairwise distinct, so a
  // pair with equal preimages everywhere is a violation outright.
  r.implication_holds = true;
  for (std::size_t i = 0; i < bank.supports.size() && r.implication_holds; ++i)
    for (std::size_t j = i + 1; j < bank.supports.size(); ++j) {
      bool premise = true;
      for (const auto& res : resolutions)
        if (preimage(res, bank.supports[i]) != preimage(res, bank.supports[j])) {
          premise = false;
          break;
        }
      if (premise) {
        r.implication_holds = false;
        r.implication_witness = std::make_pair(bank.reps[i], bank.reps[j]);
        break;
      }
    }

  // (B) the image union meets every non-empty basic constructible C(k,l).
  Bits verified = d.is_pro()
                      ? d.pro_space().verified_image(d.presentation_level(),
                                                     std::max(depth, d.presentation_level()))
                      : a.full_set();
  r.basis_density_holds = true;
  for (std::size_t i = 0; i < bank.supports.size() && r.basis_density_holds; ++i)
    for (std::size_t j = 0; j < bank.supports.size(); ++j) {
      if (i == j) continue;
      Bits c = bank.supports[i].minus(bank.supports[j]);
      if (!c.intersects(verified)) continue;  // nothing verified to meet
      if (!c.intersects(image_union)) {
        r.basis_density_holds = false;
        r.basis_witness = std::make_pair(bank.reps[i], bank.reps[j]);
        break;
      }
    }

  return r;
}

// ---------------------------------------------------------------------------
// Ideal shadows

IdealShadow ideal_of_thomason(const SupportDatum& d, const Bits& t, int bound) {
  const FinPoset& a = d.arena();
  if (!is_thomason(a, t)) throw Error("ideal_of_thomason: the set is not Thomason");
  IdealShadow shadow;
  shadow.thomason = t;
  shadow.supp_union = a.empty_set();
  TermBank bank = enumerate_supports(d, bound);
  for (std::size_t i = 0; i < bank.supports.size(); ++i) {
    if (t.contains(bank.supports[i])) {
      shadow.members.push_back(bank.reps[i]);
      shadow.supp_union |= bank.supports[i];
    }
  }
  shadow.exact = shadow.supp_union == t;
  return shadow;
}

Bits supp_of_ideal(const IdealShadow& shadow) { return shadow.supp_union; }

// ---------------------------------------------------------------------------
// Injectivity on a dense subset

namespace {

InjectivityReport injectivity_core(const SupportDatum& d, const Bits& trace, int bound) {
  InjectivityReport r;
  r.bound = bound;
  TermBank bank = enumerate_supports(d, bound);
  r.saturated = bank.saturated;
  r.generators_generate_opens = generators_generate(d);

  // Realizable Thomason subsets: unions of bank supports (ideal shadows are
  // determined by these).  Track a representative term per set.
  std::vector<Bits> thom = bank.supports;
  std::vector<ObjectTerm> reps = bank.reps;
  std::map<Bits, std::size_t> seen;
  for (std::size_t i = 0; i < thom.size(); ++i) seen.emplace(thom[i], i);
  for (std::size_t i = 0; i < thom.size(); ++i)
    for (std::size_t j = 0; j < thom.size(); ++j) {
      Bits u = thom[i] | thom[j];
      if (!seen.count(u)) {
        seen.emplace(u, thom.size());
        thom.push_back(u);
        reps.push_back(ObjectTerm::sum(reps[i], reps[j]));
      }
    }

  r.injective = true;
  for (std::size_t i = 0; i < thom.size() && r.injective; ++i)
    for (std::size_t j = i + 1; j < thom.size(); ++j)
      if ((thom[i] & trace) == (thom[j] & trace)) {
        r.injective = false;
        r.collision = std::make_pair(reps[i], reps[j]);
        break;
      }
  return r;
}

}  // namespace

InjectivityReport dense_injectivity_check(const SupportDatum& d, const Bits& dense_set,
                                          int bound) {
  if (d.is_pro()) throw Error("use dense_injectivity_check_pro for pro data");
  InjectivityReport r = injectivity_core(d, dense_set, bound);
  r.patch_dense = patch_dense_fin(d.fin_space(), dense_set);
  return r;
}

InjectivityReport dense_injectivity_check_pro(const SupportDatum& d, const DenseFamily& dense,
                                              int bound, int depth) {
  if (!d.is_pro()) throw Error("use dense_injectivity_check for finite data");
  const ProSpace& x = d.pro_space();
  const int vd = std::max(depth, d.presentation_level());
  if (vd > x.working_depth())
    throw Error("injectivity check needs the presentation level within the working depth");
  Bits trace = family_trace(d, dense, vd);
  InjectivityReport r = injectivity_core(d, trace, bound);
  r.depth = depth;
  r.patch_dense = patch_dense_pro(x, dense, depth).verdict != ProDensity::NotDense;
  return r;
}

// ---------------------------------------------------------------------------
// Reconstruction

ReconstructionReport reconstruct_from_dense(const SupportDatum& d, const Bits& dense_set,
                                            int bound) {
  if (d.is_pro()) throw Error("use reconstruct_from_dense_pro for pro data");
  ReconstructionReport r;
  r.bound = bound;
  const FinPoset& x = d.fin_space();

  if (!patch_dense_fin(x, dense_set)) {
    r.diagnostic = "refused: the chosen subset is not patch-dense";
    return r;
  }
  if (!generators_generate(d)) {
    r.diagnostic = "refused: generator supports do not generate the quasi-compact opens";
    return r;
  }

  // Restricted lattice { D ∩ supp(k)^c }, closed under intersection/union.
  TermBank bank = enumerate_supports(d, bound);
  std::vector<std::string> carrier = x.ids(dense_set);
  std::vector<std::size_t> carrier_pts = dense_set.members();
  std::vector<std::vector<std::string>> gens;
  for (const auto& s : bank.supports) {
    Bits restricted = dense_set.minus(s);
    std::vector<std::string> ids;
    for (auto p : restricted.members()) ids.push_back(x.element(p));
    gens.push_back(std::move(ids));
  }
  SetLattice l = SetLattice::generate(carrier, gens);
  ClosureResult closure = spectral_closure(l);

  auto phi = forced_iso(closure, x, carrier_pts);
  if (!phi) {
    r.diagnostic = "reconstruction mismatch: canonical map is not an isomorphism";
    r.closure = std::move(closure);
    return r;
  }
  r.ok = true;
  r.closure = std::move(closure);
  r.iso = std::move(*phi);
  return r;
}

ProReconstructionReport reconstruct_from_dense_pro(const SupportDatum& d,
                                                   const DenseFamily& dense, int bound,
                                                   int depth) {
  if (!d.is_pro()) throw Error("use reconstruct_from_dense for finite data");
  ProReconstructionReport r;
  r.bound = bound;
  r.depth = depth;
  const ProSpace& x = d.pro_space();
  if (depth + 1 > x.working_depth()) {
    r.diagnostic = "refused: level-wise reconstruction needs depth+1 within the working depth";
    return r;
  }

  auto density = patch_dense_pro(x, dense, depth);
  if (density.verdict == ProDensity::NotDense) {
    r.diagnostic = "refused: the family is not patch-dense";
    return r;
  }

  r.ok = true;
  for (int n = 0; n <= depth; ++n) {
    // Recover level(n) from the trace of the family at level n+1: the
    // lattice of restricted support complements presentable up to n+1
    // separates exactly the points that level(n) separates.
    ProLevelRecon lr;
    lr.level = n;
    const int m = n + 1;
    const FinPoset& lm = x.level(m);
    const FinPoset& ln = x.level(n);

    Bits trace(lm.size());
    {
      // The family's resolutions at level m; sections alone cover it.
      DenseFamily scan = dense;
      auto excluded = [&](const ProPoint& p) {
        for (const auto& q : scan.excluded)
          if (same_point_up_to(p, q, depth)) return true;
        return false;
      };
      for (const auto& p : scan.points)
        if (!excluded(p)) trace.set(p.resolve(m));
      if (scan.sections) {
        for (int j = 0; j <= std::max(depth, m); ++j) {
          const FinPoset& lj = x.level(j);
          for (std::size_t y = 0; y < lj.size(); ++y) {
            ProPoint sp = ProPoint::section(*scan.sections, j, lj.element(y));
            if (!excluded(sp)) trace.set(sp.resolve(m));
          }
        }
      }
    }
    if (trace != Bits::full(lm.size())) {
      lr.diagnostic = "family trace does not cover the level";
      r.ok = false;
      r.levels.push_back(std::move(lr));
      continue;
    }

    std::vector<std::vector<std::string>> gens;
    for (const auto& label : d.generator_labels()) {
      const LevelSet& orig = d.generator_level_set(label);
      if (orig.level > m) continue;  // not presentable this low
      Bits s = lift(x, orig, m).members;
      gens.push_back(lm.ids(s.complement()));
    }
    SetLattice l = SetLattice::generate(lm.elements(), gens);
    ClosureResult closure = spectral_closure(l);

    std::vector<std::size_t> proj(lm.size());
    for (std::size_t i = 0; i < lm.size(); ++i) proj[i] = x.project(m, n, i);
    auto phi = forced_iso(closure, ln, proj);
    if (!phi) {
      lr.diagnostic = "canonical map to the level is not an isomorphism";
      r.ok = false;
    } else {
      lr.ok = true;
    }
    r.levels.push_back(std::move(lr));
  }
  if (!r.ok && r.diagnostic.empty())
    r.diagnostic = "one or more levels failed to reconstruct";
  return r;
}

SupportDatum chromatic_support(const ProSpace& x, int count) {
  std::vector<std::pair<std::string, LevelSet>> gens;
  for (int k = 1; k <= count; ++k) {
    const FinPoset& lk = x.level(k);
    Bits up = lk.up_of(lk.index_of("C" + std::to_string(k)));
    gens.emplace_back("g" + std::to_string(k), LevelSet{k, up});
  }
  return SupportDatum::pro(x, std::move(gens));
}

}  // namespace patchtop
