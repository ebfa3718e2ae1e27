#include "patchtop/lattice.hpp"

#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"

using namespace patchtop;

namespace {

SetLattice make_lattice(std::vector<std::string> carrier,
                        std::vector<std::vector<std::string>> gens) {
  return SetLattice::generate(std::move(carrier), gens);
}

// Random lattice on a small carrier.
SetLattice random_lattice(oracles::Rng& rng, int max_carrier = 6, int max_gens = 4) {
  int n = 1 + int(rng() % max_carrier);
  std::vector<std::string> carrier;
  for (int i = 0; i < n; ++i) carrier.push_back("c" + std::to_string(i));
  int g = int(rng() % (max_gens + 1));
  std::vector<std::vector<std::string>> gens;
  for (int k = 0; k < g; ++k) {
    std::vector<std::string> s;
    for (int i = 0; i < n; ++i)
      if (rng() % 2) s.push_back(carrier[i]);
    gens.push_back(std::move(s));
  }
  return SetLattice::generate(carrier, gens);
}

}  // namespace

TEST_CASE("generate: frozen closures") {
  auto l1 = make_lattice({"a", "b"}, {{"a"}});
  REQUIRE(l1.elements().size() == 3);
  CHECK(l1.contains(l1.subset({})));
  CHECK(l1.contains(l1.subset({"a"})));
  CHECK(l1.contains(l1.subset({"a", "b"})));

  auto l2 = make_lattice({"a", "b", "c"}, {{"a"}, {"b"}});
  REQUIRE(l2.elements().size() == 5);
  CHECK(l2.contains(l2.subset({"a", "b"})));
  CHECK_FALSE(l2.contains(l2.subset({"c"})));

  auto l3 = make_lattice({"a", "b"}, {});
  CHECK(l3.elements().size() == 2);

  CHECK_THROWS_AS(make_lattice({"a"}, {{"zz"}}), Error);
}

TEST_CASE("generate matches the brute-force closure oracle") {
  oracles::Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    SetLattice l = random_lattice(rng);
    // Reconstruct the generating data from the lattice elements themselves:
    // closure of the closure is the closure.
    auto brute = oracles::brute_force_lattice(l.carrier_size(), l.elements());
    CHECK(brute == l.elements());
  }
}

TEST_CASE("join irreducibles: frozen examples") {
  auto l1 = make_lattice({"a", "b"}, {{"a"}});  // {∅, {a}, {a,b}}
  FinPoset j1 = join_irreducibles(l1);
  REQUIRE(j1.size() == 2);
  CHECK(j1.leq(j1.index_of("a"), j1.index_of("a+b")));

  auto l2 = make_lattice({"a", "b"}, {{"a"}, {"b"}});  // full power set
  FinPoset j2 = join_irreducibles(l2);
  REQUIRE(j2.size() == 2);
  CHECK_FALSE(j2.leq(j2.index_of("a"), j2.index_of("b")));
  CHECK_FALSE(j2.leq(j2.index_of("b"), j2.index_of("a")));

  auto l3 = make_lattice({"a", "b", "c"}, {});  // {∅, X}
  CHECK(join_irreducibles(l3).size() == 1);
}

TEST_CASE("spectral closure: frozen example and unit") {
  auto l = make_lattice({"a", "b"}, {{"a"}});
  ClosureResult c = spectral_closure(l);
  REQUIRE(c.space.size() == 2);
  std::size_t pa = c.unit[l.carrier_index("a")];
  std::size_t pb = c.unit[l.carrier_index("b")];
  CHECK(pa != pb);
  CHECK(c.space.leq(pa, pb));  // a lands on the generic point, b on the closed one
  CHECK(verify_unit_star(l, c));
}

TEST_CASE("spectral closure of the full power set is discrete") {
  auto l = make_lattice({"a", "b"}, {{"a"}, {"b"}});
  ClosureResult c = spectral_closure(l);
  REQUIRE(c.space.size() == 2);
  CHECK(c.unit[0] != c.unit[1]);
  CHECK_FALSE(c.space.leq(0, 1));
  CHECK_FALSE(c.space.leq(1, 0));
}

TEST_CASE("unit star bijection and unit-image density, randomized") {
  oracles::Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    SetLattice l = random_lattice(rng);
    ClosureResult c = spectral_closure(l);
    CHECK(verify_unit_star(l, c));
    Bits image(c.space.size());
    for (auto p : c.unit) image.set(p);
    CHECK(patch_dense_fin(c.space, image));
  }
}

TEST_CASE("closure via evaluation: frozen examples") {
  auto l1 = make_lattice({"a"}, {});
  CHECK(closure_via_evaluation(l1).space.size() == 1);

  auto l2 = make_lattice({"a", "b"}, {{"a"}});
  ClosureResult c = closure_via_evaluation(l2);
  REQUIRE(c.space.size() == 2);
  std::size_t pa = c.unit[l2.carrier_index("a")];
  std::size_t pb = c.unit[l2.carrier_index("b")];
  CHECK(c.space.leq(pa, pb));
  CHECK(verify_unit_star(l2, c));
}

TEST_CASE("the two closure algorithms agree, randomized") {
  oracles::Rng rng(123);
  for (int trial = 0; trial < 300; ++trial) {
    SetLattice l = random_lattice(rng);
    ClosureResult a = spectral_closure(l);
    ClosureResult b = closure_via_evaluation(l);
    auto iso = commuting_iso(a, b);
    REQUIRE(iso.has_value());
  }
}

TEST_CASE("unit injectivity iff the lattice separates points") {
  // Constructed cases, both ways.
  auto sep = make_lattice({"a", "b"}, {{"a"}});
  CHECK(sep.separates_points());
  auto csep = spectral_closure(sep);
  CHECK(csep.unit[0] != csep.unit[1]);

  auto glued = make_lattice({"a", "b"}, {});
  CHECK_FALSE(glued.separates_points());
  auto cglued = spectral_closure(glued);
  CHECK(cglued.unit[0] == cglued.unit[1]);

  oracles::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    SetLattice l = random_lattice(rng);
    ClosureResult c = spectral_closure(l);
    bool injective = true;
    for (std::size_t x = 0; x < l.carrier_size() && injective; ++x)
      for (std::size_t y = x + 1; y < l.carrier_size(); ++y)
        if (c.unit[x] == c.unit[y]) {
          injective = false;
          break;
        }
    CHECK(injective == l.separates_points());
  }
}

TEST_CASE("restricted lattice: frozen examples") {
  FinPoset z({"0", "1"}, {{"0", "1"}});

  SetLattice full = restricted_lattice(SetMap{{"0", "1"}, {"0", "1"}}, z);
  CHECK(full.elements().size() == 3);  // the three down-sets of the chain

  SetLattice half = restricted_lattice(SetMap{{"0"}, {"0"}}, z);
  REQUIRE(half.elements().size() == 2);
  CHECK(half.contains(half.subset({})));
  CHECK(half.contains(half.subset({"0"})));

  CHECK(half.elements().size() <= z.open_sets().size());
}

TEST_CASE("realize in ambient: frozen examples") {
  FinPoset z({"0", "1"}, {{"0", "1"}});

  Realization ident = realize_in_ambient(SetMap{{"0", "1"}, {"0", "1"}}, z);
  CHECK(same_poset(ident.subspace, z));
  CHECK(ident.closure.space.size() == 2);

  Realization half = realize_in_ambient(SetMap{{"0"}, {"0"}}, z);
  CHECK(half.subspace.size() == 1);
  CHECK(half.closure.space.size() == 1);
}

TEST_CASE("realize in ambient: randomized") {
  oracles::Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    FinPoset x = oracles::random_poset(1 + int(rng() % 6), rng);
    std::size_t d = 1 + rng() % (x.size() + 2);
    SetMap i;
    for (std::size_t k = 0; k < d; ++k) {
      i.domain.push_back("d" + std::to_string(k));
      i.image.push_back(x.element(rng() % x.size()));
    }
    Realization real = realize_in_ambient(i, x);
    CHECK(real.iso.size() == real.subspace.size());
    // The canonical map commutes with the corestriction.
    for (std::size_t k = 0; k < d; ++k)
      CHECK(real.iso[real.closure.unit[k]] == real.corestriction[k]);
  }
}

TEST_CASE("functoriality of the closure") {
  auto l = make_lattice({"a", "b"}, {{"a"}});
  ClosureResult c = spectral_closure(l);
  SetMap ident{{"a", "b"}, {"a", "b"}};
  SpectralMapFin f = induced_closure_map(l, l, ident, c, c);
  for (std::size_t p = 0; p < c.space.size(); ++p) CHECK(f.apply(p) == p);

  // Randomized: any monotone-compatible carrier map that is a morphism of
  // pairs induces a map commuting with the units.
  oracles::Rng rng(31);
  int done = 0;
  while (done < 50) {
    SetLattice la = random_lattice(rng, 4, 3);
    SetLattice lb = random_lattice(rng, 4, 3);
    SetMap f2;
    for (std::size_t i = 0; i < la.carrier_size(); ++i) {
      f2.domain.push_back(la.carrier_id(i));
      f2.image.push_back(lb.carrier_id(rng() % lb.carrier_size()));
    }
    ClosureResult ca = spectral_closure(la);
    ClosureResult cb = spectral_closure(lb);
    try {
      SpectralMapFin g = induced_closure_map(la, lb, f2, ca, cb);
      for (std::size_t i = 0; i < la.carrier_size(); ++i) {
        std::size_t fi = lb.carrier_index(f2.image[i]);
        CHECK(g.apply(ca.unit[i]) == cb.unit[fi]);
      }
      ++done;
    } catch (const Error&) {
      // Not a morphism of pairs; draw again.
    }
  }
}
