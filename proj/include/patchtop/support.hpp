#ifndef PATCHTOP_SUPPORT_HPP
#define PATCHTOP_SUPPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patchtop/lattice.hpp"
#include "patchtop/prospace.hpp"

namespace patchtop {

// A formal object: a term over generator labels with tensor, sum, suspension
// and the constants zero and one.  Cones are deliberately not part of the
// language: the support of a cone is not a function of the supports of its
// endpoints, so no sound structural rule exists for them.
class ObjectTerm {
public:
  enum class Kind { Zero, One, Gen, Tensor, Sum, Susp };

  static ObjectTerm zero();
  static ObjectTerm one();
  static ObjectTerm gen(std::string label);
  static ObjectTerm tensor(ObjectTerm a, ObjectTerm b);
  static ObjectTerm sum(ObjectTerm a, ObjectTerm b);
  static ObjectTerm susp(ObjectTerm a);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const std::vector<ObjectTerm>& children() const { return kids_; }

  int size() const;          // node count
  std::string text() const;  // deterministic rendering: *, +, S, 0, 1

private:
  explicit ObjectTerm(Kind k) : kind_(k) {}
  Kind kind_;
  std::string label_;
  std::vector<ObjectTerm> kids_;
};

// Generator labels mapped to Thomason subsets of a finite spectral space or
// of a pro-space (as level-presented sets).  Every assigned set is validated
// to be Thomason; the constants are built in: one covers the whole space,
// zero is empty.
class SupportDatum {
public:
  static SupportDatum finite(FinPoset space,
                             std::vector<std::pair<std::string, Bits>> generators);
  static SupportDatum pro(ProSpace space,
                          std::vector<std::pair<std::string, LevelSet>> generators);

  bool is_pro() const { return pro_.has_value(); }
  const FinPoset& fin_space() const;
  const ProSpace& pro_space() const;
  const std::vector<std::string>& generator_labels() const { return labels_; }

  // For a pro datum all supports are normalized to one common presentation
  // level (the highest generator level); the algebra of level sets at that
  // level is then an ordinary algebra of subsets of the level poset.
  int presentation_level() const { return pres_level_; }
  // The finite poset the supports live on: the space itself, or the
  // presentation level of the pro-space.
  const FinPoset& arena() const;

  // Generator support as a subset of the arena.
  const Bits& generator_support(const std::string& label) const;
  // Pro data only: the support as originally presented (lowest level).
  const LevelSet& generator_level_set(const std::string& label) const;

private:
  SupportDatum() = default;
  std::optional<FinPoset> fin_;
  std::optional<ProSpace> pro_;
  int pres_level_ = 0;
  std::vector<std::string> labels_;
  std::map<std::string, Bits> assign_;
  std::map<std::string, LevelSet> orig_;
};

// Structural recursion: tensor intersects, sum unites, suspension preserves,
// zero is empty, one is the whole space.  Unassigned generators are errors.
// The result is a subset of the arena (for pro data: a level set presented
// at the presentation level).
Bits supp(const SupportDatum& d, const ObjectTerm& t);

// supp(k) ∩ supp(l)^c, the basic constructible.
Bits basic_constructible(const SupportDatum& d, const ObjectTerm& k, const ObjectTerm& l);

// All supports realizable by terms of size <= bound, deduplicated by the
// evaluated support, with a smallest representative term each.
struct TermBank {
  std::vector<Bits> supports;
  std::vector<ObjectTerm> reps;
  bool saturated = false;  // closed under intersection and union
};
TermBank enumerate_supports(const SupportDatum& d, int bound);

// A family of test maps into the datum's space.  Finite case: spectral maps;
// pro case: the maps from the levels into the limit given by a section
// family (their images are the section-image points).
struct MapFamily {
  std::vector<SpectralMapFin> finite_maps;
  std::optional<DenseFamily> pro_family;
};

struct DistinguishReport {
  bool implication_holds = false;  // (A): equal preimages force equal supports
  std::optional<std::pair<ObjectTerm, ObjectTerm>> implication_witness;
  bool basis_density_holds = false;  // (B): the image meets every non-empty C(k,l)
  std::optional<std::pair<ObjectTerm, ObjectTerm>> basis_witness;
  bool full_patch_density = false;  // honest density of the union of images
  bool generators_generate_opens = false;
  bool saturated = false;
  int bound = 0;
  int depth = 0;  // pro case only
};

// Evaluates both characterizations independently over the term bank, plus
// the full-space patch-density verdict.  When the generator supports
// generate all quasi-compact opens, (B) over the basis equals true
// patch-density; otherwise both verdicts are relative to the realizable
// sublattice (reported via the flags).
DistinguishReport distinguishes_supports(const SupportDatum& d, const MapFamily& fam,
                                         int bound, int depth = 0);

// The tt-ideal shadow classified by a Thomason subset: all terms (up to the
// bound) whose support lies inside it.
struct IdealShadow {
  Bits thomason;
  std::vector<ObjectTerm> members;
  Bits supp_union;
  bool exact = false;  // supp_of_ideal(shadow) == thomason
};

IdealShadow ideal_of_thomason(const SupportDatum& d, const Bits& t, int bound);
Bits supp_of_ideal(const IdealShadow& shadow);

struct InjectivityReport {
  bool injective = false;
  std::optional<std::pair<ObjectTerm, ObjectTerm>> collision;
  bool patch_dense = false;
  bool generators_generate_opens = false;
  bool saturated = false;
  int bound = 0;
  int depth = 0;
};

// Injectivity of (ideal shadow) -> (its trace on D), against the
// independently evaluated patch-density of D.  Finite case.
InjectivityReport dense_injectivity_check(const SupportDatum& d, const Bits& dense_set,
                                          int bound);
// Pro case: D is a family of points of the limit.
InjectivityReport dense_injectivity_check_pro(const SupportDatum& d, const DenseFamily& dense,
                                              int bound, int depth);

struct ReconstructionReport {
  bool ok = false;
  std::string diagnostic;
  std::optional<ClosureResult> closure;
  std::optional<std::vector<std::size_t>> iso;  // closure point -> space point
  int bound = 0;
};

// Rebuilds the space from the restricted support theory on a patch-dense D:
// the lattice generated by { D ∩ supp(k)^c } is closed and its spectral
// closure is matched against the space by the canonical map.  Preconditions
// (D patch-dense; generator supports generate the quasi-compact opens) are
// verified first; on failure no reconstruction is attempted.
ReconstructionReport reconstruct_from_dense(const SupportDatum& d, const Bits& dense_set,
                                            int bound);

struct ProLevelRecon {
  int level = 0;
  bool ok = false;
  std::string diagnostic;
};

struct ProReconstructionReport {
  bool ok = false;
  std::string diagnostic;
  std::vector<ProLevelRecon> levels;
  int bound = 0;
  int depth = 0;
};

// Level-wise recovery: for each n <= depth the closure of the restriction to
// the level-(n+1) trace of D is matched against level(n).
ProReconstructionReport reconstruct_from_dense_pro(const SupportDatum& d,
                                                   const DenseFamily& dense, int bound,
                                                   int depth);

// The built-in support datum on the growing chain: generator g_k carries the
// up-set of C_k, presented at level k, for k = 1..count.
SupportDatum chromatic_support(const ProSpace& x, int count);

}  // namespace patchtop

#endif
