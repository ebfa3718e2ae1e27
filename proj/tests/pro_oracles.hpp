// Random towers of finite posets with valid sections: each level refines the
// previous one by blowing points up into small chains (lexicographic order),
// the transition collapses each block to its base point, and any choice of
// block representatives is a monotone section.
#ifndef PATCHTOP_TESTS_PRO_ORACLES_HPP
#define PATCHTOP_TESTS_PRO_ORACLES_HPP

#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "patchtop/prospace.hpp"

namespace oracles {

using patchtop::ProSpace;
using patchtop::SectionFamily;

struct Tower {
  std::vector<FinPoset> levels;
  std::vector<std::vector<std::string>> transitions;  // per level n: images of level n+1
  std::vector<std::vector<std::string>> sections;     // per level n: images of level n
};

inline Tower random_tower(Rng& rng, int depth, int base_size = 3) {
  Tower t;
  t.levels.push_back(random_poset(1 + int(rng() % base_size), rng));
  for (int n = 0; n < depth; ++n) {
    const FinPoset& lo = t.levels.back();
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> le;
    std::vector<std::string> trans;
    std::vector<std::vector<std::string>> block(lo.size());
    for (std::size_t v = 0; v < lo.size(); ++v) {
      int copies = 1 + int(rng() % 2);
      for (int c = 0; c < copies; ++c) {
        std::string name = lo.element(v) + "." + std::to_string(c);
        names.push_back(name);
        trans.push_back(lo.element(v));
        block[v].push_back(name);
        if (c > 0) le.emplace_back(block[v][c - 1], name);  // chain inside the block
      }
    }
    for (std::size_t v = 0; v < lo.size(); ++v)
      for (std::size_t w = 0; w < lo.size(); ++w) {
        if (v == w || !lo.leq(v, w)) continue;
        for (const auto& a : block[v])
          for (const auto& b : block[w]) le.emplace_back(a, b);
      }
    FinPoset hi(names, le);
    // Reorder the transition images to hi's element order.
    std::vector<std::string> images(hi.size());
    for (std::size_t i = 0; i < names.size(); ++i) images[hi.index_of(names[i])] = trans[i];
    // Random block representative as the section.
    std::vector<std::string> sect(lo.size());
    for (std::size_t v = 0; v < lo.size(); ++v) sect[v] = block[v][rng() % block[v].size()];
    t.levels.push_back(std::move(hi));
    t.transitions.push_back(std::move(images));
    t.sections.push_back(std::move(sect));
  }
  return t;
}

inline ProSpace tower_space(const Tower& t) {
  return ProSpace::table(t.levels, t.transitions);
}

inline SectionFamily tower_sections(const ProSpace& x, const Tower& t) {
  return SectionFamily::from_table(x, t.sections);
}

}  // namespace oracles

#endif
