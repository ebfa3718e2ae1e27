#include "patchtop/finspace.hpp"

#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"

using namespace patchtop;

namespace {

FinPoset chain2() { return FinPoset({"a", "b"}, {{"a", "b"}}); }
FinPoset sierpinski() { return FinPoset({"0", "1"}, {{"0", "1"}}); }
FinPoset antichain(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  return FinPoset(std::move(names), {});
}

}  // namespace

TEST_CASE("closure: up-closure of subsets") {
  FinPoset x = chain2();
  CHECK(closure(x, x.subset({"a"})) == x.subset({"a", "b"}));
  CHECK(closure(x, x.subset({})) == x.empty_set());

  FinPoset z = sierpinski();
  CHECK(closure(z, z.subset({"1"})) == z.subset({"1"}));

  CHECK_THROWS_AS(x.subset({"zz"}), Error);
}

TEST_CASE("construction rejects antisymmetry violations and duplicates") {
  CHECK_THROWS_AS(FinPoset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
  CHECK_THROWS_AS(FinPoset({"a", "a"}, {}), Error);
  // A cycle through three points dies too.
  CHECK_THROWS_AS(FinPoset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}), Error);
}

TEST_CASE("hochster dual: examples and involution") {
  FinPoset z = sierpinski();
  FinPoset zd = hochster_dual(z);
  CHECK(zd.leq(zd.index_of("1"), zd.index_of("0")));
  CHECK_FALSE(zd.leq(zd.index_of("0"), zd.index_of("1")));

  FinPoset a3 = antichain(3);
  CHECK(same_poset(hochster_dual(a3), a3));

  for (const auto& x : oracles::posets_up_to_iso_up_to(5))
    CHECK(same_poset(hochster_dual(hochster_dual(x)), x));
}

TEST_CASE("opens of the dual are the Thomason subsets") {
  for (const auto& x : oracles::posets_up_to_iso_up_to(4)) {
    FinPoset xd = hochster_dual(x);
    for (const auto& s : oracles::brute_force_up_sets(x)) CHECK(xd.is_down_set(s));
    std::size_t count = 0;
    for (const auto& o : xd.open_sets()) {
      CHECK(is_thomason(x, o));
      ++count;
    }
    CHECK(count == oracles::brute_force_up_sets(x).size());
  }
}

TEST_CASE("is_thomason: examples") {
  FinPoset x = chain2();
  CHECK(is_thomason(x, x.subset({"b"})));
  CHECK_FALSE(is_thomason(x, x.subset({"a"})));
  CHECK(is_thomason(x, x.full_set()));
}

TEST_CASE("constructible_sets: materialization is the full power set") {
  FinPoset pt({"p"}, {});
  auto cs1 = constructible_sets(pt);
  REQUIRE(cs1.size() == 2);
  CHECK(cs1[0] == pt.empty_set());
  CHECK(cs1[1] == pt.full_set());

  FinPoset z = sierpinski();
  auto cs = constructible_sets(z);
  REQUIRE(cs.size() == 4);  // every subset of the Sierpinski space

  for (const auto& x : oracles::posets_up_to_iso_up_to(5))
    CHECK(constructible_sets(x).size() == (std::size_t(1) << x.size()));
}

TEST_CASE("patch density: only the full subset is dense on a finite space") {
  FinPoset z = sierpinski();
  CHECK(patch_dense_fin(z, z.full_set()));
  CHECK_FALSE(patch_dense_fin(z, z.subset({"0"})));
  auto witness = patch_density_witness(z, z.subset({"0"}));
  REQUIRE(witness.has_value());
  CHECK(*witness == z.subset({"1"}));

  for (const auto& x : oracles::posets_up_to_iso_up_to(4)) {
    const std::size_t n = x.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      Bits d(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1ull) d.set(i);
      CHECK(patch_dense_fin(x, d) == (d == x.full_set()));
    }
  }
}

TEST_CASE("patch density is monotone in the subset") {
  oracles::Rng rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    FinPoset x = oracles::random_poset(1 + int(rng() % 6), rng);
    Bits d = oracles::random_subset(x.size(), rng);
    Bits d2 = d | oracles::random_subset(x.size(), rng);
    if (patch_dense_fin(x, d)) CHECK(patch_dense_fin(x, d2));
  }
}

TEST_CASE("locally closed points") {
  FinPoset pt({"p"}, {});
  CHECK(locally_closed_points(pt) == pt.full_set());

  for (const auto& x : oracles::posets_up_to_iso_up_to(4)) {
    Bits lc = locally_closed_points(x);
    // Independent check of the definition, point by point.
    for (std::size_t i = 0; i < x.size(); ++i) {
      Bits meet = x.down_of(i) & x.up_of(i);
      CHECK(lc.test(i) == (meet == Bits::singleton(x.size(), i)));
    }
    CHECK(lc == x.full_set());
    CHECK(patch_dense_fin(x, lc));
    // Contained in every patch-dense subset.
    const std::size_t n = x.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      Bits d(n);
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1ull) d.set(i);
      if (patch_dense_fin(x, d)) CHECK(d.contains(lc));
    }
  }
}

TEST_CASE("weakly visible points: enumeration oracle agrees") {
  FinPoset x = chain2();
  CHECK(weakly_visible_points_fin(x) == x.full_set());
  FinPoset pt({"p"}, {});
  CHECK(weakly_visible_points_fin(pt) == pt.full_set());

  for (const auto& p : oracles::posets_up_to_iso_up_to(4)) {
    Bits wv = weakly_visible_points_fin(p);
    // Oracle: enumerate all pairs of up-sets.
    auto ups = oracles::brute_force_up_sets(p);
    Bits oracle(p.size());
    for (const auto& v : ups)
      for (const auto& w : ups) {
        Bits cut = v.minus(w);
        if (cut.count() == 1) oracle.set(cut.first());
      }
    CHECK(wv == oracle);
    CHECK(wv.contains(locally_closed_points(p)));
    CHECK(patch_dense_fin(p, wv));
  }
}

TEST_CASE("jacobson spaces are exactly the antichains") {
  CHECK(is_jacobson(antichain(3)));
  CHECK_FALSE(is_jacobson(sierpinski()));
  CHECK(is_jacobson(FinPoset()));

  for (const auto& x : oracles::posets_up_to_iso_up_to(4)) {
    bool is_antichain = true;
    for (std::size_t i = 0; i < x.size() && is_antichain; ++i)
      if (x.up_of(i).count() != 1) is_antichain = false;
    CHECK(is_jacobson(x) == is_antichain);
  }
}

TEST_CASE("lemma dense-epi: frozen examples") {
  FinPoset z = sierpinski();

  auto ident = lemma_dense_epi(z, {"0", "1"});
  CHECK(ident.dense);
  CHECK(ident.opens_separated);
  CHECK(ident.sierpinski_epi);

  auto half = lemma_dense_epi(z, {"0"});
  CHECK_FALSE(half.dense);
  CHECK_FALSE(half.opens_separated);
  CHECK_FALSE(half.sierpinski_epi);
  REQUIRE(half.missed_constructible.has_value());
  CHECK(*half.missed_constructible == z.subset({"1"}));

  // Non-injective repeats behave like their image.
  auto doubled = lemma_dense_epi(z, {"0", "0"});
  CHECK_FALSE(doubled.dense);
  CHECK(doubled.all_equal());
}

TEST_CASE("lemma dense-epi: the three conditions agree") {
  // Exhaustively: every poset on <= 4 points, every subset inclusion.
  for (const auto& x : oracles::posets_up_to_iso_up_to(4)) {
    const std::size_t n = x.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<std::string> images;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1ull) images.push_back(x.element(i));
      auto res = lemma_dense_epi(x, images);
      CHECK(res.all_equal());
      CHECK(res.dense == (mask + 1 == (1ull << n)));
    }
  }
  // Randomized with arbitrary (possibly non-injective) index maps.
  oracles::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    FinPoset x = oracles::random_poset(1 + int(rng() % 8), rng);
    std::size_t d = rng() % (x.size() + 2);
    std::vector<std::string> images;
    for (std::size_t k = 0; k < d; ++k) images.push_back(x.element(rng() % x.size()));
    CHECK(lemma_dense_epi(x, images).all_equal());
  }
}

TEST_CASE("spectral maps must be monotone") {
  FinPoset z = sierpinski();
  FinPoset a2 = antichain(2);
  CHECK_THROWS_AS(SpectralMapFin(z, a2, {"p0", "p1"}), Error);
  SpectralMapFin ok(z, z, {"0", "1"});
  CHECK(ok.image() == z.full_set());
  CHECK(ok.preimage(z.subset({"1"})) == z.subset({"1"}));
}

TEST_CASE("poset enumeration oracle has the known class counts") {
  CHECK(oracles::posets_up_to_iso(1).size() == 1);
  CHECK(oracles::posets_up_to_iso(2).size() == 2);
  CHECK(oracles::posets_up_to_iso(3).size() == 5);
  CHECK(oracles::posets_up_to_iso(4).size() == 16);
  CHECK(oracles::posets_up_to_iso(5).size() == 63);
}
