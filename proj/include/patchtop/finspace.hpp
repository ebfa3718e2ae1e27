#ifndef PATCHTOP_FINSPACE_HPP
#define PATCHTOP_FINSPACE_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "patchtop/bits.hpp"

namespace patchtop {

// A finite spectral space, encoded by its specialization order.
//
// Convention: x <= y means y lies in the closure of {x} (x specializes to y).
// Closed sets are the up-sets, open sets are the down-sets, and every open is
// quasi-compact.  All values are immutable after construction.
class FinPoset {
public:
  FinPoset() = default;

  // From a list of element ids and a set of `a <= b` declarations.  The
  // reflexive-transitive closure is taken; an antisymmetry violation or a
  // duplicate id is a construction error.
  FinPoset(std::vector<std::string> elements,
           const std::vector<std::pair<std::string, std::string>>& le);

  // From explicit up-set rows: up_rows[i] = { j : i <= j }.  Validated.
  FinPoset(std::vector<std::string> elements, std::vector<Bits> up_rows);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element(std::size_t i) const { return elements_[i]; }

  bool has_element(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t index_of(const std::string& id) const;

  bool leq(std::size_t i, std::size_t j) const { return up_[i].test(j); }

  // Validates that every id names an element of this space.
  Bits subset(const std::vector<std::string>& ids) const;
  std::vector<std::string> ids(const Bits& s) const;

  Bits empty_set() const { return Bits(size()); }
  Bits full_set() const { return Bits::full(size()); }

  const Bits& up_of(std::size_t i) const { return up_[i]; }
  const Bits& down_of(std::size_t i) const { return down_[i]; }
  Bits strict_up_of(std::size_t i) const;

  Bits up_closure(const Bits& s) const;
  Bits down_closure(const Bits& s) const;
  bool is_up_set(const Bits& s) const { return up_closure(s) == s; }
  bool is_down_set(const Bits& s) const { return down_closure(s) == s; }

  // All open sets (= down-sets), in canonical order.
  std::vector<Bits> open_sets() const;

  // Elements of `within` maximal for the order, restricted to `within`.
  Bits maximal_points(const Bits& within) const;

private:
  void validate_subset(const Bits& s) const;
  void finish_from_up_rows();

  std::vector<std::string> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

// Identical element ids (in order) and identical order relation.
bool same_poset(const FinPoset& a, const FinPoset& b);

// Up-closure of S: the smallest closed superset.
Bits closure(const FinPoset& x, const Bits& s);

// Same points, reversed specialization order.  Opens of the result are
// exactly the Thomason subsets of the input.
FinPoset hochster_dual(const FinPoset& x);

// In the finite case, Thomason = specialization-closed = up-set.
bool is_thomason(const FinPoset& x, const Bits& s);

// All constructible subsets, materialized.  Computed by closing the
// quasi-compact opens and their complements under finite intersection and
// union; the result is checked to be the full power set.  Only available for
// spaces with at most 16 points; membership-style queries on larger spaces
// go through the basis (see patch_dense_fin).
std::vector<Bits> constructible_sets(const FinPoset& x);

// D is patch-dense iff it meets every non-empty constructible subset.
bool patch_dense_fin(const FinPoset& x, const Bits& d);

// A non-empty constructible missed by D, when D is not patch-dense.
std::optional<Bits> patch_density_witness(const FinPoset& x, const Bits& d);

// Points x with {x} = open ∩ closed; the smallest patch-dense subset.
Bits locally_closed_points(const FinPoset& x);

// Points x with {x} = V ∩ W^c for Thomason subsets V, W.
Bits weakly_visible_points_fin(const FinPoset& x);

// Closed points are dense in every closed subset.
bool is_jacobson(const FinPoset& x);

// A function from an abstract finite index set into a space, given by the
// list of image element ids (the index set is the list positions).
struct DenseEpiResult {
  bool dense = false;            // (i)  the image is patch-dense
  bool opens_separated = false;  // (ii) i^-1(U) ⊆ i^-1(V) forces U ⊆ V
  bool sierpinski_epi = false;   // (iii), reduced to Sierpinski-valued maps
  std::optional<Bits> missed_constructible;
  std::optional<std::pair<Bits, Bits>> opens_witness;
  std::optional<std::pair<Bits, Bits>> epi_witness;
  bool all_equal() const { return dense == opens_separated && dense == sierpinski_epi; }
};

// Evaluates the three conditions independently; callers may assert that all
// three agree.
DenseEpiResult lemma_dense_epi(const FinPoset& x, const std::vector<std::string>& images);

// A set-function between named finite sets (domain ids -> image ids).
struct SetMap {
  std::vector<std::string> domain;
  std::vector<std::string> image;
};

// A monotone (= continuous spectral) map between finite spectral spaces.
class SpectralMapFin {
public:
  // images[i] is the id in `target` assigned to source element i.
  SpectralMapFin(FinPoset source, FinPoset target, const std::vector<std::string>& images);

  const FinPoset& source() const { return source_; }
  const FinPoset& target() const { return target_; }
  std::size_t apply(std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& table() const { return map_; }

  Bits image() const;
  Bits preimage(const Bits& s) const;

private:
  FinPoset source_;
  FinPoset target_;
  std::vector<std::size_t> map_;
};

}  // namespace patchtop

#endif
