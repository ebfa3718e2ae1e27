#ifndef PATCHTOP_LATTICE_HPP
#define PATCHTOP_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "patchtop/finspace.hpp"

namespace patchtop {

// A bounded distributive lattice of subsets of a finite carrier: contains
// the empty set and the carrier, and is closed under pairwise intersection
// and union.
class SetLattice {
public:
  // Smallest family containing the generators plus {∅, carrier}, closed
  // under finite intersections and unions.
  static SetLattice generate(std::vector<std::string> carrier,
                             const std::vector<std::vector<std::string>>& generators);

  // From an already-closed family (validated).
  static SetLattice from_sets(std::vector<std::string> carrier, std::vector<Bits> sets);

  const std::vector<std::string>& carrier() const { return carrier_; }
  std::size_t carrier_size() const { return carrier_.size(); }
  const std::string& carrier_id(std::size_t i) const { return carrier_[i]; }
  std::size_t carrier_index(const std::string& id) const;

  // Elements in canonical order (cardinality, then lexicographic members).
  const std::vector<Bits>& elements() const { return elements_; }
  bool contains(const Bits& s) const;

  Bits subset(const std::vector<std::string>& ids) const;
  std::vector<std::string> ids(const Bits& s) const;

  // Some set of the lattice contains exactly one of any two distinct
  // carrier points.
  bool separates_points() const;

private:
  SetLattice() = default;
  std::vector<std::string> carrier_;
  std::vector<Bits> elements_;
};

// The poset of join-irreducible elements of L, ordered by inclusion (taken
// as the specialization order).  Its open-set lattice is isomorphic to L.
FinPoset join_irreducibles(const SetLattice& l);

// The spectral closure of a pair (carrier, L): a finite spectral space
// together with the unit map from the carrier.  Pulling opens back along the
// unit is a bijection onto L.
struct ClosureResult {
  FinPoset space;
  std::vector<std::size_t> unit;  // carrier index -> space point index
};

// Via Birkhoff duality: points are the join-irreducibles of L, and the unit
// sends x to the least lattice element containing x.
ClosureResult spectral_closure(const SetLattice& l);

// Via the evaluation map into a product of Sierpinski spaces indexed by L:
// the image of the evaluation, with the componentwise order.
ClosureResult closure_via_evaluation(const SetLattice& l);

// Check the defining bijection: { unit^-1(O) : O open in space } = L.
bool verify_unit_star(const SetLattice& l, const ClosureResult& c);

// The unique isomorphism a.space -> b.space commuting with the two units,
// if one exists.  Units of finite closures are surjective, which pins the
// map down; all structure is then verified.
std::optional<std::vector<std::size_t>> commuting_iso(const ClosureResult& a,
                                                      const ClosureResult& b);

// The unit-forced point map from a closure onto a target poset: carrier
// position d must land on target_of_carrier[d].  Empty when the forced map
// fails to be a well-defined order isomorphism.
std::optional<std::vector<std::size_t>> forced_iso(
    const ClosureResult& c, const FinPoset& target,
    const std::vector<std::size_t>& target_of_carrier);

// Carrier = domain of i; elements = preimages of the opens of X.
SetLattice restricted_lattice(const SetMap& i, const FinPoset& x);

// Realization of the spectral closure of the restricted lattice inside the
// ambient space: the image of i as a spectral subspace, plus the canonical
// isomorphism from the closure.
struct Realization {
  FinPoset subspace;                 // image of i, induced order
  std::vector<std::size_t> corestriction;  // domain index -> subspace point
  ClosureResult closure;             // closure of the restricted lattice
  std::vector<std::size_t> iso;      // closure.space point -> subspace point
};

// Throws if the canonical map fails to be an isomorphism (which would
// falsify the realization theorem; used as a test hook).
Realization realize_in_ambient(const SetMap& i, const FinPoset& x);

// A morphism of pairs (carrier,L) -> (carrier',L') is a function pulling
// L'-sets back to L-sets; it induces a spectral map between closures.
SpectralMapFin induced_closure_map(const SetLattice& l, const SetLattice& l2,
                                   const SetMap& f, const ClosureResult& ca,
                                   const ClosureResult& cb);

}  // namespace patchtop

#endif
