#ifndef PATCHTOP_PROSPACE_HPP
#define PATCHTOP_PROSPACE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patchtop/finspace.hpp"

namespace patchtop {

class SectionFamily;

// A sequential inverse limit of finite posets along monotone transition maps
// p_n : level(n+1) -> level(n), produced by a finitely described rule.
//
// Built-in rules: `constant` (every level is one fixed poset, transitions are
// the identity), `chain-growth` (level n is the chain C1 < ... < Cn < Cinf;
// the transition collapses the two top points), and `table` (levels and
// transitions listed explicitly up to a maximum depth; queries beyond that
// depth are rejected).
//
// Levels are materialized on demand and memoized; the memo is the only
// mutable state and is filled idempotently under a lock, so a ProSpace handle
// can be shared across threads.
class ProSpace {
public:
  static ProSpace constant(FinPoset base, int working_depth = 32);
  static ProSpace chain_growth(int working_depth = 32);
  // transition_images[n][i]: id in level(n) of the image of element i of
  // level(n+1).  Non-monotone transitions are construction errors.
  static ProSpace table(std::vector<FinPoset> levels,
                        std::vector<std::vector<std::string>> transition_images);

  // Largest level index that may be queried.
  int working_depth() const;
  // True for table-backed spaces, whose limit is the top listed level.
  bool bounded() const;

  const FinPoset& level(int n) const;
  // p_n: index at level n+1 -> index at level n.
  std::size_t step_down(int n, std::size_t idx) const;
  // Composite p_{m,n}: index at level m -> index at level n (m >= n).
  std::size_t project(int m, int n, std::size_t idx) const;
  // p_{m,n}^{-1}(s) for s ⊆ level(n), as a subset of level(m).
  Bits preimage_at(int m, int n, const Bits& s) const;
  // p_{from,n}(level(from)): every element of level(n) verified to extend to
  // a thread of length `from`.
  Bits verified_image(int n, int from) const;

  // Identity sections for constant spaces; for the growing chain, the shift
  // sections C_k -> C_k, Cinf -> C_{n+1} (whose images are the finite
  // points).  Table spaces have no canonical sections.
  std::optional<SectionFamily> canonical_sections() const;

  bool same_object(const ProSpace& o) const { return impl_ == o.impl_; }

private:
  struct Impl;
  explicit ProSpace(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
  friend class SectionFamily;
};

// A constructible subset of the limit, recorded as the preimage of a subset
// of a finite level.
struct LevelSet {
  int level = 0;
  Bits members;
};

// Same subset of the limit, re-presented at level m >= c.level.
LevelSet lift(const ProSpace& x, const LevelSet& c, int m);
// Comparison at a common level.
bool levelset_equal(const ProSpace& x, const LevelSet& a, const LevelSet& b);
LevelSet levelset_meet(const ProSpace& x, const LevelSet& a, const LevelSet& b);
LevelSet levelset_join(const ProSpace& x, const LevelSet& a, const LevelSet& b);
LevelSet levelset_minus(const ProSpace& x, const LevelSet& a, const LevelSet& b);
// Some member extends to a thread reaching `depth`.
bool levelset_nonempty_verified(const ProSpace& x, const LevelSet& c, int depth);

// Per-level sections s_n : level(n) -> level(n+1) of the transitions, i.e.
// monotone maps with p_n ∘ s_n = id.  They assemble into maps from each
// level into the limit.
class SectionFamily {
public:
  // images[n][i]: id in level(n+1) of the image of element i of level(n).
  // Validation failures name the offending level and element.
  static SectionFamily from_table(const ProSpace& x,
                                  std::vector<std::vector<std::string>> images);
  // The rule-provided sections (constant: identity; chain-growth: shift).
  static SectionFamily from_rule(const ProSpace& x);

  const ProSpace& space() const { return space_; }
  std::size_t apply(int n, std::size_t idx) const;
  // Highest n for which s_n is available.
  int max_section_level() const;

private:
  SectionFamily(ProSpace x, bool rule, std::vector<std::vector<std::size_t>> table);
  void validate() const;
  ProSpace space_;
  bool rule_backed_ = false;
  std::vector<std::vector<std::size_t>> table_;
  friend class ProPoint;
};

// A point of the limit, described by a resolver assigning an element of
// level(n) to every queryable n.  Compatibility with the transitions is
// checked up to the working depth at construction.
class ProPoint {
public:
  // sigma_m(y): resolve below m by projecting, above m via the sections.
  static ProPoint section(const SectionFamily& s, int level, const std::string& elem);
  // The element with this id at every level (e.g. the top point Cinf of the
  // growing chain).
  static ProPoint named_thread(const ProSpace& x, std::string name);
  // Explicit thread for a table space: one id per level, 0..working_depth.
  static ProPoint table_thread(const ProSpace& x, std::vector<std::string> ids);

  const ProSpace& space() const { return space_; }
  std::size_t resolve(int n) const;
  const std::string& label() const { return label_; }
  ProPoint labeled(std::string name) const {
    ProPoint p(*this);
    p.label_ = std::move(name);
    return p;
  }

private:
  enum class Kind { Section, Named, Table };
  ProPoint(ProSpace x, Kind k) : space_(std::move(x)), kind_(k) {}
  void validate() const;

  ProSpace space_;
  Kind kind_;
  std::string label_;
  // Section
  std::shared_ptr<const SectionFamily> sections_;
  int base_level_ = 0;
  std::size_t base_elem_ = 0;
  // Named
  std::string name_;
  // Table
  std::vector<std::size_t> thread_;
};

bool member(const ProPoint& p, const LevelSet& c);
bool same_point_up_to(const ProPoint& p, const ProPoint& q, int depth);

// A family of points of the limit.  When `sections` is set the family is the
// full section family { sigma_n(x) : every level n, every x in level(n) },
// minus the explicitly excluded points; explicit points are added on top.
struct DenseFamily {
  std::optional<SectionFamily> sections;
  std::vector<ProPoint> points;
  std::vector<ProPoint> excluded;
};

// Validates the sections and returns the full section family, which
// patch_dense_pro certifies as DENSE_PROVEN.
DenseFamily retractable_limit(const ProSpace& x, const SectionFamily& sections);

enum class ProDensity { DenseProven, DenseUpToDepth, NotDense };

struct ProDensityReport {
  ProDensity verdict = ProDensity::NotDense;
  int depth = 0;
  std::optional<LevelSet> witness;  // a verified non-empty level set missed
  std::string note;
};

// Density of the family in the patch topology, decided on the level-pulled-
// back constructibles.  A full section family meets every non-empty level
// set at every level (sigma_n covers level(n)), which is a proof valid at
// all levels; everything else is bounded checking up to `depth`.
ProDensityReport patch_dense_pro(const ProSpace& x, const DenseFamily& f, int depth);

struct VisibilityReport {
  bool visible = false;
  int depth = 0;
  int witness_level = -1;
  std::optional<LevelSet> v;  // Thomason
  std::optional<LevelSet> w;  // Thomason; {p} = v ∩ w^c
};

// Searches for Thomason sets V, W presentable at levels <= depth with
// {p} = V ∩ W^c as subsets of the limit.
VisibilityReport weakly_visible_pro(const ProSpace& x, const ProPoint& p, int depth);

struct SingletonReport {
  bool constructible = false;
  int depth = 0;
  int witness_level = -1;
  std::string note;
};

// Does {p} equal some level-presented set at a level <= depth?
SingletonReport is_constructible_singleton(const ProSpace& x, const ProPoint& p, int depth);

// The growing chain of the built-in demo: C1 < C2 < ... < Cinf.
ProSpace chromatic_chain(int working_depth = 32);
ProPoint chromatic_point(const ProSpace& x, int k);
ProPoint chromatic_infinity(const ProSpace& x);
// The finite points { C_k }, realized as the full family of shift-section
// images.
DenseFamily chromatic_finite_points(const ProSpace& x);

}  // namespace patchtop

#endif
