#include "patchtop/textio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace patchtop {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string clean = line;
  auto hash = clean.find('#');
  if (hash != std::string::npos) clean.erase(hash);
  std::istringstream in(clean);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

struct Cursor {
  std::string file;
  int line = 0;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(file + ":" + std::to_string(line) + ": " + msg);
  }
};

// a->b
std::pair<std::string, std::string> parse_arrow(const std::string& tok, const Cursor& at) {
  auto pos = tok.find("->");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= tok.size())
    at.fail("expected '<from>-><to>', got '" + tok + "'");
  return {tok.substr(0, pos), tok.substr(pos + 2)};
}

int parse_int(const std::string& tok, const Cursor& at) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    at.fail("expected an integer, got '" + tok + "'");
  }
}

struct PendingPoset {
  std::string name;
  Cursor at;
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> le;
};

struct PendingLattice {
  std::string name;
  Cursor at;
  std::vector<std::string> carrier;
  bool carrier_seen = false;
  std::vector<std::vector<std::string>> gens;
};

struct PendingPro {
  std::string name;
  Cursor at;
  std::string rule;           // "chain-growth" | "constant" | "table"
  std::string constant_base;  // poset name
  std::map<int, std::string> levels;
  std::map<int, std::vector<std::pair<std::string, std::string>>> maps;
  std::map<int, std::vector<std::pair<std::string, std::string>>> sections;
};

struct PendingSupport {
  std::string name;
  Cursor at;
  std::string on;
  std::vector<std::pair<std::string, std::vector<std::string>>> fin_gens;
  std::vector<std::pair<std::string, std::pair<int, std::vector<std::string>>>> pro_gens;
};

class Loader {
public:
  explicit Loader(int working_depth) : working_depth_(working_depth) {}

  void feed(const std::string& text, const std::string& filename) {
    Cursor at{filename, 0};
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      ++at.line;
      auto toks = tokenize(line);
      if (toks.empty()) continue;
      handle(toks, at);
    }
    finalize_block(at);
  }

  Workspace take() { return std::move(ws_); }

private:
  void handle(const std::vector<std::string>& toks, const Cursor& at) {
    const std::string& head = toks[0];
    if (head == "poset" || head == "lattice" || head == "prospace" || head == "support") {
      finalize_block(at);
      if (toks.size() < 2) at.fail("'" + head + "' needs a name");
      if (head == "poset") {
        poset_.emplace();
        poset_->name = toks[1];
        poset_->at = at;
      } else if (head == "lattice") {
        lattice_.emplace();
        lattice_->name = toks[1];
        lattice_->at = at;
      } else if (head == "prospace") {
        pro_.emplace();
        pro_->name = toks[1];
        pro_->at = at;
      } else {
        if (toks.size() != 4 || toks[2] != "on")
          at.fail("expected 'support <name> on <space>'");
        support_.emplace();
        support_->name = toks[1];
        support_->at = at;
        support_->on = toks[3];
      }
      return;
    }

    if (poset_) {
      if (head == "elem") {
        poset_->elems.insert(poset_->elems.end(), toks.begin() + 1, toks.end());
      } else if (head == "le") {
        if (toks.size() != 3) at.fail("expected 'le <a> <b>'");
        poset_->le.emplace_back(toks[1], toks[2]);
      } else {
        at.fail("unexpected directive '" + head + "' in a poset block");
      }
      return;
    }
    if (lattice_) {
      if (head == "carrier") {
        lattice_->carrier.assign(toks.begin() + 1, toks.end());
        lattice_->carrier_seen = true;
      } else if (head == "gen") {
        lattice_->gens.emplace_back(toks.begin() + 1, toks.end());
      } else {
        at.fail("unexpected directive '" + head + "' in a lattice block");
      }
      return;
    }
    if (pro_) {
      if (head == "rule") {
        if (toks.size() < 2) at.fail("expected a rule name");
        pro_->rule = toks[1];
        if (pro_->rule == "constant") {
          if (toks.size() != 3) at.fail("expected 'rule constant <poset>'");
          pro_->constant_base = toks[2];
        } else if (pro_->rule == "chain-growth") {
          if (toks.size() != 2) at.fail("expected 'rule chain-growth'");
        } else if (pro_->rule == "table") {
          if (toks.size() != 2) at.fail("expected 'rule table'");
        } else {
          at.fail("unknown rule '" + pro_->rule + "'");
        }
      } else if (head == "level") {
        if (toks.size() != 3) at.fail("expected 'level <n> <poset-name>'");
        pro_->levels[parse_int(toks[1], at)] = toks[2];
      } else if (head == "map") {
        if (toks.size() != 3) at.fail("expected 'map <n> <a>-><b>'");
        pro_->maps[parse_int(toks[1], at)].push_back(parse_arrow(toks[2], at));
      } else if (head == "section") {
        if (toks.size() != 3) at.fail("expected 'section <n> <a>-><b>'");
        pro_->sections[parse_int(toks[1], at)].push_back(parse_arrow(toks[2], at));
      } else {
        at.fail("unexpected directive '" + head + "' in a prospace block");
      }
      return;
    }
    if (support_) {
      if (head != "gen") at.fail("unexpected directive '" + head + "' in a support block");
      // gen <label> = ...
      if (toks.size() < 3 || toks[2] != "=") at.fail("expected 'gen <label> = ...'");
      if (toks.size() >= 4 && toks[3] == "level") {
        // gen <label> = level <n> : <elem> ...
        if (toks.size() < 6 || toks[5] != ":")
          at.fail("expected 'gen <label> = level <n> : <elem> ...'");
        int lvl = parse_int(toks[4], at);
        std::vector<std::string> elems(toks.begin() + 6, toks.end());
        support_->pro_gens.emplace_back(toks[1], std::make_pair(lvl, std::move(elems)));
      } else {
        std::vector<std::string> elems(toks.begin() + 3, toks.end());
        support_->fin_gens.emplace_back(toks[1], std::move(elems));
      }
      return;
    }
    at.fail("directive '" + head + "' outside of any block");
  }

  void finalize_block(const Cursor& at) {
    if (poset_) {
      try {
        FinPoset p(poset_->elems, poset_->le);
        if (!ws_.posets.emplace(poset_->name, std::move(p)).second)
          poset_->at.fail("duplicate poset name '" + poset_->name + "'");
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        poset_->at.fail(std::string("in poset '") + poset_->name + "': " + e.what());
      }
      poset_.reset();
    }
    if (lattice_) {
      if (!lattice_->carrier_seen) lattice_->at.fail("lattice block without a carrier line");
      try {
        SetLattice l = SetLattice::generate(lattice_->carrier, lattice_->gens);
        if (!ws_.lattices.emplace(lattice_->name, std::move(l)).second)
          lattice_->at.fail("duplicate lattice name '" + lattice_->name + "'");
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        lattice_->at.fail(std::string("in lattice '") + lattice_->name + "': " + e.what());
      }
      lattice_.reset();
    }
    if (pro_) {
      finalize_pro();
      pro_.reset();
    }
    if (support_) {
      finalize_support();
      support_.reset();
    }
    (void)at;
  }

  void finalize_pro() {
    const Cursor& at = pro_->at;
    try {
      ProEntry entry{ProSpace::chain_growth(working_depth_), std::nullopt};
      if (pro_->rule == "chain-growth") {
        entry.space = ProSpace::chain_growth(working_depth_);
        entry.sections = entry.space.canonical_sections();
      } else if (pro_->rule == "constant") {
        auto it = ws_.posets.find(pro_->constant_base);
        if (it == ws_.posets.end())
          at.fail("constant rule references unknown poset '" + pro_->constant_base + "'");
        entry.space = ProSpace::constant(it->second, working_depth_);
        entry.sections = entry.space.canonical_sections();
      } else if (pro_->rule == "table") {
        if (pro_->levels.empty()) at.fail("table rule without level lines");
        int top = 0;
        for (const auto& [n, _] : pro_->levels) top = std::max(top, n);
        std::vector<FinPoset> levels;
        for (int n = 0; n <= top; ++n) {
          auto it = pro_->levels.find(n);
          if (it == pro_->levels.end())
            at.fail("missing 'level " + std::to_string(n) + "' line");
          auto pit = ws_.posets.find(it->second);
          if (pit == ws_.posets.end())
            at.fail("level " + std::to_string(n) + " references unknown poset '" +
                    it->second + "'");
          levels.push_back(pit->second);
        }
        std::vector<std::vector<std::string>> transitions;
        for (int n = 0; n < top; ++n) {
          auto mit = pro_->maps.find(n);
          if (mit == pro_->maps.end()) at.fail("missing 'map " + std::to_string(n) + "' lines");
          const FinPoset& hi = levels[n + 1];
          std::vector<std::string> images(hi.size());
          std::vector<bool> got(hi.size(), false);
          for (const auto& [a, b] : mit->second) {
            std::size_t i = hi.index_of(a);
            images[i] = b;
            got[i] = true;
          }
          for (std::size_t i = 0; i < hi.size(); ++i)
            if (!got[i])
              at.fail("map " + std::to_string(n) + " does not cover element '" +
                      hi.element(i) + "'");
          transitions.push_back(std::move(images));
        }
        entry.space = ProSpace::table(std::move(levels), std::move(transitions));
        if (!pro_->sections.empty()) {
          std::vector<std::vector<std::string>> images;
          for (int n = 0; n < top; ++n) {
            auto sit = pro_->sections.find(n);
            if (sit == pro_->sections.end())
              at.fail("sections given but 'section " + std::to_string(n) + "' lines are missing");
            const FinPoset& lo = entry.space.level(n);
            std::vector<std::string> img(lo.size());
            std::vector<bool> got(lo.size(), false);
            for (const auto& [a, b] : sit->second) {
              std::size_t i = lo.index_of(a);
              img[i] = b;
              got[i] = true;
            }
            for (std::size_t i = 0; i < lo.size(); ++i)
              if (!got[i])
                at.fail("section " + std::to_string(n) + " does not cover element '" +
                        lo.element(i) + "'");
            images.push_back(std::move(img));
          }
          entry.sections = SectionFamily::from_table(entry.space, std::move(images));
        }
      } else {
        at.fail("prospace block without a rule line");
      }
      if (!pro_->sections.empty() && pro_->rule != "table")
        at.fail("section lines are only accepted for table-rule prospaces");
      if (!ws_.prospaces.emplace(pro_->name, std::move(entry)).second)
        at.fail("duplicate prospace name '" + pro_->name + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      at.fail(std::string("in prospace '") + pro_->name + "': " + e.what());
    }
  }

  void finalize_support() {
    const Cursor& at = support_->at;
    try {
      auto pit = ws_.posets.find(support_->on);
      if (pit != ws_.posets.end()) {
        if (!support_->pro_gens.empty())
          at.fail("level-presented generators need a prospace, not a poset");
        std::vector<std::pair<std::string, Bits>> gens;
        for (const auto& [label, elems] : support_->fin_gens)
          gens.emplace_back(label, pit->second.subset(elems));
        SupportDatum d = SupportDatum::finite(pit->second, std::move(gens));
        if (!ws_.supports.emplace(support_->name, std::move(d)).second)
          at.fail("duplicate support name '" + support_->name + "'");
        return;
      }
      auto xit = ws_.prospaces.find(support_->on);
      if (xit == ws_.prospaces.end())
        at.fail("support datum references unknown space '" + support_->on + "'");
      if (!support_->fin_gens.empty())
        at.fail("generators on a prospace must be level-presented ('gen g = level n : ...')");
      std::vector<std::pair<std::string, LevelSet>> gens;
      for (const auto& [label, lv] : support_->pro_gens) {
        const FinPoset& lp = xit->second.space.level(lv.first);
        gens.emplace_back(label, LevelSet{lv.first, lp.subset(lv.second)});
      }
      SupportDatum d = SupportDatum::pro(xit->second.space, std::move(gens));
      if (!ws_.supports.emplace(support_->name, std::move(d)).second)
        at.fail("duplicate support name '" + support_->name + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      at.fail(std::string("in support '") + support_->name + "': " + e.what());
    }
  }

  int working_depth_;
  Workspace ws_;
  std::optional<PendingPoset> poset_;
  std::optional<PendingLattice> lattice_;
  std::optional<PendingPro> pro_;
  std::optional<PendingSupport> support_;
};

}  // namespace

Workspace load_files(const std::vector<std::string>& paths, int working_depth) {
  Loader loader(working_depth);
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    loader.feed(buf.str(), path);
  }
  return loader.take();
}

Workspace load_text(const std::string& text, const std::string& filename, int working_depth) {
  Loader loader(working_depth);
  loader.feed(text, filename);
  return loader.take();
}

std::string poset_to_text(const FinPoset& x, const std::string& name) {
  std::ostringstream out;
  out << "poset " << name << "\n";
  if (x.size() > 0) {
    out << "elem";
    for (const auto& e : x.elements()) out << " " << e;
    out << "\n";
  }
  // Covering relations are enough; the loader recloses transitively.
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j || !x.leq(i, j)) continue;
      bool covering = true;
      for (std::size_t k = 0; k < x.size() && covering; ++k)
        if (k != i && k != j && x.leq(i, k) && x.leq(k, j)) covering = false;
      if (covering) out << "le " << x.element(i) << " " << x.element(j) << "\n";
    }
  return out.str();
}

}  // namespace patchtop
