#include "patchtop/prospace.hpp"

#include <mutex>

namespace patchtop {

namespace {

FinPoset make_chain_level(int n) {
  // C1 < C2 < ... < Cn < Cinf, with Cinf the most specialized point.
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) names.push_back("C" + std::to_string(k));
  names.push_back("Cinf");
  std::vector<std::pair<std::string, std::string>> le;
  for (std::size_t i = 0; i + 1 < names.size(); ++i) le.emplace_back(names[i], names[i + 1]);
  return FinPoset(std::move(names), le);
}

void check_monotone_transition(const FinPoset& from, const FinPoset& to,
                               const std::vector<std::size_t>& t, int n) {
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < from.size(); ++j)
      if (from.leq(i, j) && !to.leq(t[i], t[j]))
        throw Error("transition from level " + std::to_string(n + 1) + " to level " +
                    std::to_string(n) + " is not monotone at '" + from.element(i) + "'");
}

}  // namespace

struct ProSpace::Impl {
  enum class Kind { Constant, ChainGrowth, Table } kind;
  int working_depth = 32;
  FinPoset base;  // Constant

  mutable std::mutex mu;
  mutable std::vector<std::unique_ptr<FinPoset>> levels;
  mutable std::vector<std::vector<std::size_t>> transitions;  // [n]: level n+1 -> n

  const FinPoset& level(int n) const {
    if (n < 0 || n > working_depth)
      throw Error("level " + std::to_string(n) + " is beyond the working depth " +
                  std::to_string(working_depth));
    std::lock_guard<std::mutex> lock(mu);
    if (levels.size() <= static_cast<std::size_t>(n))
      levels.resize(static_cast<std::size_t>(n) + 1);
    if (!levels[n]) {
      switch (kind) {
        case Kind::Constant:
          levels[n] = std::make_unique<FinPoset>(base);
          break;
        case Kind::ChainGrowth:
          levels[n] = std::make_unique<FinPoset>(make_chain_level(n));
          break;
        case Kind::Table:
          throw Error("internal: table levels must be prefilled");
      }
    }
    return *levels[n];
  }

  std::size_t step(int n, std::size_t idx) const {
    if (n < 0 || n + 1 > working_depth)
      throw Error("transition p_" + std::to_string(n) + " is beyond the working depth");
    const FinPoset& hi = level(n + 1);
    if (idx >= hi.size()) throw Error("transition applied to an invalid element index");
    std::lock_guard<std::mutex> lock(mu);
    if (transitions.size() <= static_cast<std::size_t>(n))
      transitions.resize(static_cast<std::size_t>(n) + 1);
    if (transitions[n].empty()) {
      std::vector<std::size_t> t(hi.size());
      switch (kind) {
        case Kind::Constant:
          for (std::size_t i = 0; i < hi.size(); ++i) t[i] = i;
          break;
        case Kind::ChainGrowth:
          // C_k -> C_k for k <= n, C_{n+1} and Cinf -> Cinf.
          for (std::size_t i = 0; i < hi.size(); ++i)
            t[i] = std::min(i, static_cast<std::size_t>(n));
          break;
        case Kind::Table:
          throw Error("internal: table transitions must be prefilled");
      }
      transitions[n] = std::move(t);
    }
    return transitions[n][idx];
  }
};

ProSpace ProSpace::constant(FinPoset base, int working_depth) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::Constant;
  impl->working_depth = working_depth;
  impl->base = std::move(base);
  return ProSpace(std::move(impl));
}

ProSpace ProSpace::chain_growth(int working_depth) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::ChainGrowth;
  impl->working_depth = working_depth;
  return ProSpace(std::move(impl));
}

ProSpace ProSpace::table(std::vector<FinPoset> levels,
                         std::vector<std::vector<std::string>> transition_images) {
  if (levels.empty()) throw Error("table prospace needs at least level 0");
  if (transition_images.size() + 1 != levels.size())
    throw Error("table prospace needs one transition per consecutive level pair");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::Table;
  impl->working_depth = static_cast<int>(levels.size()) - 1;
  for (std::size_t n = 0; n < transition_images.size(); ++n) {
    const FinPoset& hi = levels[n + 1];
    const FinPoset& lo = levels[n];
    if (transition_images[n].size() != hi.size())
      throw Error("transition " + std::to_string(n) + " does not cover level " +
                  std::to_string(n + 1));
    std::vector<std::size_t> t(hi.size());
    for (std::size_t i = 0; i < hi.size(); ++i) t[i] = lo.index_of(transition_images[n][i]);
    check_monotone_transition(hi, lo, t, static_cast<int>(n));
    impl->transitions.push_back(std::move(t));
  }
  for (auto& l : levels) impl->levels.push_back(std::make_unique<FinPoset>(std::move(l)));
  return ProSpace(std::move(impl));
}

int ProSpace::working_depth() const { return impl_->working_depth; }
bool ProSpace::bounded() const { return impl_->kind == Impl::Kind::Table; }
const FinPoset& ProSpace::level(int n) const { return impl_->level(n); }
std::size_t ProSpace::step_down(int n, std::size_t idx) const { return impl_->step(n, idx); }

std::size_t ProSpace::project(int m, int n, std::size_t idx) const {
  if (m < n) throw Error("project: source level below target level");
  for (int k = m - 1; k >= n; --k) idx = step_down(k, idx);
  return idx;
}

Bits ProSpace::preimage_at(int m, int n, const Bits& s) const {
  if (s.universe() != level(n).size()) throw Error("preimage_at: subset not at level");
  Bits r(level(m).size());
  for (std::size_t i = 0; i < r.universe(); ++i)
    if (s.test(project(m, n, i))) r.set(i);
  return r;
}

Bits ProSpace::verified_image(int n, int from) const {
  if (from < n) throw Error("verified_image: checking depth below level");
  Bits r(level(n).size());
  for (std::size_t i = 0; i < level(from).size(); ++i) r.set(project(from, n, i));
  return r;
}

std::optional<SectionFamily> ProSpace::canonical_sections() const {
  if (impl_->kind == Impl::Kind::Table) return std::nullopt;
  return SectionFamily::from_rule(*this);
}

// ---------------------------------------------------------------------------
// LevelSet

LevelSet lift(const ProSpace& x, const LevelSet& c, int m) {
  if (m < c.level) throw Error("lift: target level below the set's level");
  return LevelSet{m, x.preimage_at(m, c.level, c.members)};
}

bool levelset_equal(const ProSpace& x, const LevelSet& a, const LevelSet& b) {
  int m = std::max(a.level, b.level);
  return lift(x, a, m).members == lift(x, b, m).members;
}

LevelSet levelset_meet(const ProSpace& x, const LevelSet& a, const LevelSet& b) {
  int m = std::max(a.level, b.level);
  return LevelSet{m, lift(x, a, m).members & lift(x, b, m).members};
}

LevelSet levelset_join(const ProSpace& x, const LevelSet& a, const LevelSet& b) {
  int m = std::max(a.level, b.level);
  return LevelSet{m, lift(x, a, m).members | lift(x, b, m).members};
}

LevelSet levelset_minus(const ProSpace& x, const LevelSet& a, const LevelSet& b) {
  int m = std::max(a.level, b.level);
  return LevelSet{m, lift(x, a, m).members.minus(lift(x, b, m).members)};
}

bool levelset_nonempty_verified(const ProSpace& x, const LevelSet& c, int depth) {
  if (depth < c.level) throw Error("nonempty check needs depth >= the set's level");
  return c.members.intersects(x.verified_image(c.level, depth));
}

// ---------------------------------------------------------------------------
// SectionFamily

SectionFamily::SectionFamily(ProSpace x, bool rule, std::vector<std::vector<std::size_t>> table)
    : space_(std::move(x)), rule_backed_(rule), table_(std::move(table)) {
  validate();
}

SectionFamily SectionFamily::from_table(const ProSpace& x,
                                        std::vector<std::vector<std::string>> images) {
  const int top = x.working_depth();
  if (static_cast<int>(images.size()) != top)
    throw Error("section family needs one section per level 0.." + std::to_string(top - 1));
  std::vector<std::vector<std::size_t>> table;
  for (int n = 0; n < top; ++n) {
    const FinPoset& lo = x.level(n);
    const FinPoset& hi = x.level(n + 1);
    if (images[n].size() != lo.size())
      throw Error("section " + std::to_string(n) + " does not cover level " + std::to_string(n));
    std::vector<std::size_t> s(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) s[i] = hi.index_of(images[n][i]);
    table.push_back(std::move(s));
  }
  return SectionFamily(x, false, std::move(table));
}

SectionFamily SectionFamily::from_rule(const ProSpace& x) {
  if (x.bounded()) throw Error("table prospaces have no rule-provided sections");
  return SectionFamily(x, true, {});
}

std::size_t SectionFamily::apply(int n, std::size_t idx) const {
  if (rule_backed_) {
    // Constant: identity.  Growing chain: C_k -> C_k and Cinf -> C_{n+1},
    // which is the index identity into the next level.
    if (idx >= space_.level(n).size()) throw Error("section applied to an invalid element");
    return idx;
  }
  if (n < 0 || n >= static_cast<int>(table_.size()))
    throw Error("no section available at level " + std::to_string(n));
  return table_[n][idx];
}

int SectionFamily::max_section_level() const {
  return rule_backed_ ? space_.working_depth() - 1 : static_cast<int>(table_.size()) - 1;
}

void SectionFamily::validate() const {
  const int top = max_section_level();
  for (int n = 0; n <= top; ++n) {
    const FinPoset& lo = space_.level(n);
    const FinPoset& hi = space_.level(n + 1);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      std::size_t si = apply(n, i);
      if (si >= hi.size()) throw Error("section image out of range");
      if (space_.step_down(n, si) != i)
        throw Error("not a section of the transitions: element '" + lo.element(i) +
                    "' at level " + std::to_string(n) + " is not recovered by projecting");
    }
    for (std::size_t i = 0; i < lo.size(); ++i)
      for (std::size_t j = 0; j < lo.size(); ++j)
        if (lo.leq(i, j) && !hi.leq(apply(n, i), apply(n, j)))
          throw Error("section at level " + std::to_string(n) + " is not monotone at '" +
                      lo.element(i) + "'");
  }
}

// ---------------------------------------------------------------------------
// ProPoint

ProPoint ProPoint::section(const SectionFamily& s, int level, const std::string& elem) {
  ProPoint p(s.space(), Kind::Section);
  p.sections_ = std::make_shared<SectionFamily>(s);
  p.base_level_ = level;
  p.base_elem_ = s.space().level(level).index_of(elem);
  p.label_ = "sec(" + std::to_string(level) + "," + elem + ")";
  p.validate();
  return p;
}

ProPoint ProPoint::named_thread(const ProSpace& x, std::string name) {
  ProPoint p(x, Kind::Named);
  p.name_ = std::move(name);
  p.label_ = p.name_;
  p.validate();
  return p;
}

ProPoint ProPoint::table_thread(const ProSpace& x, std::vector<std::string> ids) {
  ProPoint p(x, Kind::Table);
  if (static_cast<int>(ids.size()) != x.working_depth() + 1)
    throw Error("explicit thread must list one element per level 0.." +
                std::to_string(x.working_depth()));
  p.thread_.reserve(ids.size());
  for (std::size_t n = 0; n < ids.size(); ++n)
    p.thread_.push_back(x.level(static_cast<int>(n)).index_of(ids[n]));
  p.label_ = "thread(" + ids.back() + ")";
  p.validate();
  return p;
}

std::size_t ProPoint::resolve(int n) const {
  switch (kind_) {
    case Kind::Section: {
      if (n <= base_level_) return space_.project(base_level_, n, base_elem_);
      std::size_t e = base_elem_;
      for (int m = base_level_; m < n; ++m) e = sections_->apply(m, e);
      return e;
    }
    case Kind::Named:
      return space_.level(n).index_of(name_);
    case Kind::Table:
      if (n < 0 || n >= static_cast<int>(thread_.size()))
        throw Error("thread not resolvable at level " + std::to_string(n));
      return thread_[n];
  }
  throw Error("internal: unreachable");
}

void ProPoint::validate() const {
  for (int n = 0; n < space_.working_depth(); ++n)
    if (space_.step_down(n, resolve(n + 1)) != resolve(n))
      throw Error("invalid point '" + label_ + "': resolver incompatible with the transition at level " +
                  std::to_string(n));
}

bool member(const ProPoint& p, const LevelSet& c) {
  if (c.members.universe() != p.space().level(c.level).size())
    throw Error("member: level set does not match its level");
  return c.members.test(p.resolve(c.level));
}

bool same_point_up_to(const ProPoint& p, const ProPoint& q, int depth) {
  if (!p.space().same_object(q.space())) return false;
  for (int n = 0; n <= depth; ++n)
    if (p.resolve(n) != q.resolve(n)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Density

DenseFamily retractable_limit(const ProSpace& x, const SectionFamily& sections) {
  if (!sections.space().same_object(x))
    throw Error("retractable_limit: sections belong to a different prospace");
  DenseFamily f;
  f.sections = sections;
  return f;
}

namespace {

bool excluded_point(const DenseFamily& f, const ProPoint& p, int depth) {
  for (const auto& q : f.excluded)
    if (same_point_up_to(p, q, depth)) return true;
  return false;
}

// Elements of level(n) hit by resolutions of the family, scanning section
// images at levels n..depth.
Bits covered_at(const ProSpace& x, const DenseFamily& f, int n, int depth) {
  Bits covered(x.level(n).size());
  for (const auto& p : f.points)
    if (!excluded_point(f, p, depth)) covered.set(p.resolve(n));
  if (f.sections) {
    if (f.excluded.empty()) {
      // sigma_n(y) resolves to y, so the section images cover the level.
      return Bits::full(x.level(n).size());
    }
    for (int m = n; m <= depth; ++m) {
      const FinPoset& lm = x.level(m);
      for (std::size_t y = 0; y < lm.size(); ++y) {
        ProPoint sp = ProPoint::section(*f.sections, m, lm.element(y));
        if (!excluded_point(f, sp, depth)) covered.set(sp.resolve(n));
      }
    }
  }
  return covered;
}

}  // namespace

ProDensityReport patch_dense_pro(const ProSpace& x, const DenseFamily& f, int depth) {
  if (depth < 0 || depth > x.working_depth())
    throw Error("density check depth must lie within the working depth");
  ProDensityReport r;
  r.depth = depth;
  for (int n = 0; n <= depth; ++n) {
    Bits verified = x.verified_image(n, depth);
    Bits covered = covered_at(x, f, n, depth);
    Bits missed = verified.minus(covered);
    if (!missed.empty()) {
      r.verdict = ProDensity::NotDense;
      r.witness = LevelSet{n, Bits::singleton(verified.universe(), missed.first())};
      r.note = "a verified non-empty level set is missed by the family";
      return r;
    }
  }
  if (f.sections && f.excluded.empty()) {
    r.verdict = ProDensity::DenseProven;
    r.note = "full section family: sigma_n covers level n, at every level";
  } else {
    r.verdict = ProDensity::DenseUpToDepth;
    r.note = "every verified non-empty level set up to the depth is met";
  }
  return r;
}

namespace {

// First level m <= depth at which {p} is certified equal to the pullback of
// {p.resolve(m)}: every verified partial thread through that element agrees
// with p up to the checking depth.
int first_singleton_level(const ProSpace& x, const ProPoint& p, int depth) {
  for (int m = 0; m <= depth; ++m) {
    Bits pt = Bits::singleton(x.level(m).size(), p.resolve(m));
    bool ok = true;
    for (int m2 = m; m2 <= depth && ok; ++m2) {
      Bits fiber = x.preimage_at(m2, m, pt);
      fiber &= x.verified_image(m2, depth);
      if (fiber != Bits::singleton(fiber.universe(), p.resolve(m2))) ok = false;
    }
    if (ok) return m;
  }
  return -1;
}

}  // namespace

VisibilityReport weakly_visible_pro(const ProSpace& x, const ProPoint& p, int depth) {
  if (depth < 0 || depth > x.working_depth())
    throw Error("visibility search depth must lie within the working depth");
  VisibilityReport r;
  r.depth = depth;
  int m = first_singleton_level(x, p, depth);
  if (m < 0) return r;
  r.visible = true;
  r.witness_level = m;
  std::size_t e = p.resolve(m);
  r.v = LevelSet{m, x.level(m).up_of(e)};
  r.w = LevelSet{m, x.level(m).strict_up_of(e)};
  return r;
}

SingletonReport is_constructible_singleton(const ProSpace& x, const ProPoint& p, int depth) {
  if (depth < 0 || depth > x.working_depth())
    throw Error("singleton search depth must lie within the working depth");
  SingletonReport r;
  r.depth = depth;
  int m = first_singleton_level(x, p, depth);
  if (m >= 0) {
    r.constructible = true;
    r.witness_level = m;
    r.note = "level set (" + std::to_string(m) + ", {" + x.level(m).element(p.resolve(m)) +
             "}) pulls back to exactly this point";
  } else {
    r.note = "every level set containing the point also contains another verified thread";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Built-in demo space

ProSpace chromatic_chain(int working_depth) { return ProSpace::chain_growth(working_depth); }

ProPoint chromatic_point(const ProSpace& x, int k) {
  if (k < 1 || k > x.working_depth())
    throw Error("chromatic point index must lie in 1..working depth");
  auto sections = x.canonical_sections();
  if (!sections) throw Error("chromatic points need the rule sections");
  std::string name = "C" + std::to_string(k);
  return ProPoint::section(*sections, k, name).labeled(name);
}

ProPoint chromatic_infinity(const ProSpace& x) { return ProPoint::named_thread(x, "Cinf"); }

DenseFamily chromatic_finite_points(const ProSpace& x) {
  auto sections = x.canonical_sections();
  if (!sections) throw Error("chromatic family needs the rule sections");
  return retractable_limit(x, *sections);
}

}  // namespace patchtop
