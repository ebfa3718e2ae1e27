#include "patchtop/workspace.hpp"

#include <algorithm>
#include <sstream>

namespace patchtop {

const FinPoset& Workspace::poset(const std::string& name) const {
  auto it = posets.find(name);
  if (it == posets.end()) throw Error("unknown poset '" + name + "'");
  return it->second;
}

const SetLattice& Workspace::lattice(const std::string& name) const {
  auto it = lattices.find(name);
  if (it == lattices.end()) throw Error("unknown lattice '" + name + "'");
  return it->second;
}

const ProEntry& Workspace::prospace(const std::string& name) const {
  auto it = prospaces.find(name);
  if (it == prospaces.end()) throw Error("unknown prospace '" + name + "'");
  return it->second;
}

const SupportDatum& Workspace::support(const std::string& name) const {
  auto it = supports.find(name);
  if (it == supports.end()) throw Error("unknown support datum '" + name + "'");
  return it->second;
}

Report::Record& Report::fresh() {
  records.emplace_back();
  return records.back();
}

std::string Report::render(bool porcelain) const {
  std::ostringstream out;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (porcelain) {
      for (std::size_t i = 0; i < records[r].size(); ++i) {
        if (i) out << '\t';
        out << records[r][i].first << '=' << records[r][i].second;
      }
      out << '\n';
    } else {
      if (r) out << '\n';
      for (const auto& [k, v] : records[r]) out << k << ": " << v << '\n';
    }
  }
  return out.str();
}

std::string format_ids(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ", ";
    s += ids[i];
  }
  s += "}";
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::vector<std::string> parse_id_list(const std::string& spec) {
  if (spec == "-") return {};
  return split(spec, ',');
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string set_text(const FinPoset& x, const Bits& s) { return format_ids(x.ids(s)); }

std::string levelset_text(const ProSpace& x, const LevelSet& c) {
  return "level " + std::to_string(c.level) + ": " + set_text(x.level(c.level), c.members);
}

std::string covering_relations(const FinPoset& x) {
  std::vector<std::string> rels;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j || !x.leq(i, j)) continue;
      bool covering = true;
      for (std::size_t k = 0; k < x.size() && covering; ++k)
        if (k != i && k != j && x.leq(i, k) && x.leq(k, j)) covering = false;
      if (covering) rels.push_back(x.element(i) + "<=" + x.element(j));
    }
  std::sort(rels.begin(), rels.end());
  std::string out;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    if (i) out += ", ";
    out += rels[i];
  }
  return out.empty() ? "(none)" : out;
}

ProPoint parse_pro_point(const ProEntry& entry, const std::string& spec) {
  if (spec.rfind("sec:", 0) == 0) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw Error("expected 'sec:<level>:<elem>'");
    if (!entry.sections) throw Error("this prospace has no sections");
    return ProPoint::section(*entry.sections, std::stoi(parts[1]), parts[2]).labeled(spec);
  }
  if (spec.rfind("table:", 0) == 0) {
    return ProPoint::table_thread(entry.space, parse_id_list(spec.substr(6))).labeled(spec);
  }
  // Bare name: a thread with that id at every level; otherwise a section
  // point C_k based at level k (the finite points of the growing chain).
  try {
    return ProPoint::named_thread(entry.space, spec);
  } catch (const Error&) {
    if (spec.size() > 1 && spec[0] == 'C' && entry.sections) {
      int k = std::stoi(spec.substr(1));
      return ProPoint::section(*entry.sections, k, spec).labeled(spec);
    }
    throw;
  }
}

DenseFamily parse_pro_family(const ProEntry& entry, const std::string& spec) {
  if (spec == "sections" || spec == "finite-points") {
    if (!entry.sections) throw Error("this prospace has no sections");
    return retractable_limit(entry.space, *entry.sections);
  }
  if (spec.rfind("points:", 0) == 0) {
    DenseFamily f;
    for (const auto& p : split(spec.substr(7), ';')) f.points.push_back(parse_pro_point(entry, p));
    return f;
  }
  throw Error("unknown family spec '" + spec + "' (use sections | finite-points | points:p;q)");
}

}  // namespace

Report cmd_dual(const Workspace& ws, const std::string& space) {
  const FinPoset& x = ws.poset(space);
  FinPoset dual = hochster_dual(x);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "dual");
  r.emplace_back("space", space);
  r.emplace_back("elements", format_ids(dual.elements()));
  r.emplace_back("order", covering_relations(dual));
  return rep;
}

Report cmd_thomason(const Workspace& ws, const std::string& space,
                    const std::vector<std::string>& subset) {
  const FinPoset& x = ws.poset(space);
  Bits s = x.subset(subset);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "thomason");
  r.emplace_back("space", space);
  r.emplace_back("subset", set_text(x, s));
  r.emplace_back("verdict", bool_text(is_thomason(x, s)));
  return rep;
}

Report cmd_dense(const Workspace& ws, const std::string& space,
                 const std::vector<std::string>& subset) {
  const FinPoset& x = ws.poset(space);
  Bits s = x.subset(subset);
  auto witness = patch_density_witness(x, s);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "dense");
  r.emplace_back("space", space);
  r.emplace_back("subset", set_text(x, s));
  r.emplace_back("verdict", bool_text(!witness.has_value()));
  if (witness) r.emplace_back("missed-constructible", set_text(x, *witness));
  return rep;
}

Report cmd_lemma_dense_epi(const Workspace& ws, const std::string& space,
                           const std::vector<std::string>& images) {
  const FinPoset& x = ws.poset(space);
  DenseEpiResult res = lemma_dense_epi(x, images);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "lemma-dense-epi");
  r.emplace_back("space", space);
  r.emplace_back("map", format_ids(images));
  r.emplace_back("dense", bool_text(res.dense));
  r.emplace_back("opens-separated", bool_text(res.opens_separated));
  r.emplace_back("sierpinski-epi", bool_text(res.sierpinski_epi));
  r.emplace_back("agreement", bool_text(res.all_equal()));
  if (res.missed_constructible)
    r.emplace_back("missed-constructible", set_text(x, *res.missed_constructible));
  if (res.opens_witness)
    r.emplace_back("opens-witness", set_text(x, res.opens_witness->first) + " vs " +
                                        set_text(x, res.opens_witness->second));
  if (res.epi_witness)
    r.emplace_back("epi-witness", set_text(x, res.epi_witness->first) + " vs " +
                                      set_text(x, res.epi_witness->second));
  return rep;
}

Report cmd_closure(const Workspace& ws, const std::string& lattice, bool via_evaluation) {
  const SetLattice& l = ws.lattice(lattice);
  ClosureResult c = via_evaluation ? closure_via_evaluation(l) : spectral_closure(l);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", via_evaluation ? "closure-ev" : "closure");
  r.emplace_back("lattice", lattice);
  r.emplace_back("lattice-size", std::to_string(l.elements().size()));
  r.emplace_back("points", format_ids(c.space.elements()));
  r.emplace_back("order", covering_relations(c.space));
  for (std::size_t i = 0; i < l.carrier_size(); ++i)
    r.emplace_back("unit " + l.carrier_id(i), c.space.element(c.unit[i]));
  r.emplace_back("unit-star-bijective", bool_text(verify_unit_star(l, c)));
  return rep;
}

Report cmd_realize(const Workspace& ws, const std::string& space,
                   const std::vector<std::string>& dom, const std::vector<std::string>& img) {
  const FinPoset& x = ws.poset(space);
  Realization real = realize_in_ambient(SetMap{dom, img}, x);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "realize");
  r.emplace_back("space", space);
  r.emplace_back("domain", format_ids(dom));
  r.emplace_back("image", format_ids(img));
  r.emplace_back("subspace", format_ids(real.subspace.elements()));
  r.emplace_back("closure-points", format_ids(real.closure.space.elements()));
  for (std::size_t p = 0; p < real.iso.size(); ++p)
    r.emplace_back("iso " + real.closure.space.element(p),
                   real.subspace.element(real.iso[p]));
  r.emplace_back("verdict", "realized");
  return rep;
}

Report cmd_pro_dense(const Workspace& ws, const std::string& prospace,
                     const std::string& family, const std::vector<std::string>& exclude,
                     const Query& q) {
  const ProEntry& entry = ws.prospace(prospace);
  DenseFamily f = parse_pro_family(entry, family);
  for (const auto& e : exclude) f.excluded.push_back(parse_pro_point(entry, e));
  ProDensityReport res = patch_dense_pro(entry.space, f, q.depth);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "pro-dense");
  r.emplace_back("prospace", prospace);
  r.emplace_back("family", family);
  if (!exclude.empty()) {
    std::string ex;
    for (std::size_t i = 0; i < exclude.size(); ++i) {
      if (i) ex += "; ";
      ex += exclude[i];
    }
    r.emplace_back("excluded", ex);
  }
  r.emplace_back("depth", std::to_string(res.depth));
  switch (res.verdict) {
    case ProDensity::DenseProven:
      r.emplace_back("verdict", "DENSE_PROVEN");
      break;
    case ProDensity::DenseUpToDepth:
      r.emplace_back("verdict", "DENSE_UP_TO_DEPTH");
      break;
    case ProDensity::NotDense:
      r.emplace_back("verdict", "NOT_DENSE");
      break;
  }
  if (res.witness) r.emplace_back("witness", levelset_text(entry.space, *res.witness));
  r.emplace_back("note", res.note);
  return rep;
}

Report cmd_visible(const Workspace& ws, const std::string& prospace, const std::string& point,
                   const Query& q) {
  const ProEntry& entry = ws.prospace(prospace);
  ProPoint p = parse_pro_point(entry, point);
  VisibilityReport res = weakly_visible_pro(entry.space, p, q.depth);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "visible");
  r.emplace_back("prospace", prospace);
  r.emplace_back("point", p.label());
  r.emplace_back("depth", std::to_string(res.depth));
  r.emplace_back("verdict", res.visible ? "VISIBLE" : "NOT_VISIBLE_UP_TO_DEPTH");
  if (res.visible) {
    r.emplace_back("witness-level", std::to_string(res.witness_level));
    r.emplace_back("V", levelset_text(entry.space, *res.v));
    r.emplace_back("W", levelset_text(entry.space, *res.w));
  }
  return rep;
}

Report cmd_singleton(const Workspace& ws, const std::string& prospace, const std::string& point,
                     const Query& q) {
  const ProEntry& entry = ws.prospace(prospace);
  ProPoint p = parse_pro_point(entry, point);
  SingletonReport res = is_constructible_singleton(entry.space, p, q.depth);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "singleton");
  r.emplace_back("prospace", prospace);
  r.emplace_back("point", p.label());
  r.emplace_back("depth", std::to_string(res.depth));
  r.emplace_back("verdict",
                 res.constructible ? "CONSTRUCTIBLE" : "NOT_CONSTRUCTIBLE_UP_TO_DEPTH");
  if (res.constructible) r.emplace_back("witness-level", std::to_string(res.witness_level));
  r.emplace_back("note", res.note);
  return rep;
}

namespace {

void distinguish_record(Report::Record& r, const SupportDatum& d, const DistinguishReport& res) {
  r.emplace_back("bound", std::to_string(res.bound));
  if (d.is_pro()) r.emplace_back("depth", std::to_string(res.depth));
  r.emplace_back("implication", bool_text(res.implication_holds));
  if (res.implication_witness)
    r.emplace_back("implication-witness", res.implication_witness->first.text() + " vs " +
                                              res.implication_witness->second.text());
  r.emplace_back("basis-density", bool_text(res.basis_density_holds));
  if (res.basis_witness)
    r.emplace_back("basis-witness", "C(" + res.basis_witness->first.text() + "," +
                                        res.basis_witness->second.text() + ")");
  r.emplace_back("agreement", bool_text(res.implication_holds == res.basis_density_holds));
  r.emplace_back("patch-density", bool_text(res.full_patch_density));
  r.emplace_back("generators-generate-opens", bool_text(res.generators_generate_opens));
  r.emplace_back("saturated", bool_text(res.saturated));
}

}  // namespace

Report cmd_distinguish(const Workspace& ws, const std::string& support,
                       const std::string& family, const Query& q) {
  const SupportDatum& d = ws.support(support);
  MapFamily fam;
  if (!d.is_pro()) {
    const FinPoset& x = d.fin_space();
    if (family == "identity") {
      fam.finite_maps.emplace_back(x, x, x.elements());
    } else if (family.rfind("points:", 0) == 0) {
      for (const auto& id : parse_id_list(family.substr(7))) {
        FinPoset pt({"*"}, std::vector<std::pair<std::string, std::string>>{});
        fam.finite_maps.emplace_back(pt, x, std::vector<std::string>{id});
      }
    } else {
      throw Error("unknown family spec '" + family + "' (use identity | points:a,b)");
    }
  } else {
    // Find the prospace entry backing this datum, for section lookup.
    const ProEntry* entry = nullptr;
    for (const auto& [name, e] : ws.prospaces)
      if (e.space.same_object(d.pro_space())) entry = &e;
    if (!entry) throw Error("support datum's prospace is not in the workspace");
    fam.pro_family = parse_pro_family(*entry, family);
  }
  DistinguishReport res = distinguishes_supports(d, fam, q.bound, q.depth);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "distinguish");
  r.emplace_back("support", support);
  r.emplace_back("family", family);
  distinguish_record(r, d, res);
  return rep;
}

Report cmd_classify(const Workspace& ws, const std::string& support,
                    const std::string& thomason, const Query& q) {
  const SupportDatum& d = ws.support(support);
  Bits t(0);
  std::string echo;
  if (!d.is_pro()) {
    t = d.fin_space().subset(parse_id_list(thomason));
    echo = set_text(d.fin_space(), t);
  } else {
    if (thomason.rfind("level:", 0) != 0)
      throw Error("pro thomason sets are given as 'level:<n>:a,b'");
    auto parts = split(thomason, ':');
    if (parts.size() < 2) throw Error("pro thomason sets are given as 'level:<n>:a,b'");
    int lvl = std::stoi(parts[1]);
    std::vector<std::string> ids = parts.size() >= 3 ? parse_id_list(parts[2])
                                                     : std::vector<std::string>{};
    LevelSet ls{lvl, d.pro_space().level(lvl).subset(ids)};
    if (lvl > d.presentation_level())
      throw Error("thomason set presented above the datum's presentation level");
    t = lift(d.pro_space(), ls, d.presentation_level()).members;
    echo = levelset_text(d.pro_space(), ls);
  }
  IdealShadow shadow = ideal_of_thomason(d, t, q.bound);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "classify");
  r.emplace_back("support", support);
  r.emplace_back("thomason", echo);
  r.emplace_back("bound", std::to_string(q.bound));
  r.emplace_back("members", std::to_string(shadow.members.size()));
  std::string terms;
  for (std::size_t i = 0; i < shadow.members.size(); ++i) {
    if (i) terms += ", ";
    terms += shadow.members[i].text();
  }
  r.emplace_back("terms", terms.empty() ? "(none)" : terms);
  r.emplace_back("supp-union", set_text(d.arena(), shadow.supp_union));
  r.emplace_back("exact", bool_text(shadow.exact));
  return rep;
}

Report cmd_reconstruct(const Workspace& ws, const std::string& support,
                       const std::string& dense, const Query& q) {
  const SupportDatum& d = ws.support(support);
  Report rep;
  auto& r = rep.fresh();
  r.emplace_back("command", "reconstruct");
  r.emplace_back("support", support);
  r.emplace_back("dense", dense);
  r.emplace_back("bound", std::to_string(q.bound));
  if (!d.is_pro()) {
    const FinPoset& x = d.fin_space();
    Bits dset = dense == "all" ? x.full_set() : x.subset(parse_id_list(dense));
    ReconstructionReport res = reconstruct_from_dense(d, dset, q.bound);
    r.emplace_back("verdict", res.ok ? "reconstructed" : "refused");
    if (!res.ok) {
      r.emplace_back("diagnostic", res.diagnostic);
      return rep;
    }
    r.emplace_back("points", format_ids(res.closure->space.elements()));
    for (std::size_t p = 0; p < res.iso->size(); ++p)
      r.emplace_back("iso " + res.closure->space.element(p), x.element((*res.iso)[p]));
  } else {
    const ProEntry* entry = nullptr;
    for (const auto& [name, e] : ws.prospaces)
      if (e.space.same_object(d.pro_space())) entry = &e;
    if (!entry) throw Error("support datum's prospace is not in the workspace");
    DenseFamily f = parse_pro_family(*entry, dense);
    ProReconstructionReport res = reconstruct_from_dense_pro(d, f, q.bound, q.depth);
    r.emplace_back("depth", std::to_string(q.depth));
    r.emplace_back("verdict", res.ok ? "reconstructed" : "refused");
    if (!res.diagnostic.empty()) r.emplace_back("diagnostic", res.diagnostic);
    for (const auto& lr : res.levels)
      r.emplace_back("level " + std::to_string(lr.level),
                     lr.ok ? "ok" : ("failed: " + lr.diagnostic));
  }
  return rep;
}

Report cmd_demo_chromatic(const Query& q) {
  const int depth = q.depth;
  ProSpace x = chromatic_chain(std::max(depth + 2, 8));
  Report rep;

  {
    auto& r = rep.fresh();
    r.emplace_back("command", "demo chromatic");
    r.emplace_back("depth", std::to_string(depth));
    r.emplace_back("level-0", format_ids(x.level(0).elements()));
    r.emplace_back("level-" + std::to_string(depth),
                   format_ids(x.level(depth).elements()));
  }

  DenseFamily finite = chromatic_finite_points(x);
  {
    auto& r = rep.fresh();
    r.emplace_back("query", "density of the finite points");
    ProDensityReport res = patch_dense_pro(x, finite, depth);
    r.emplace_back("verdict", res.verdict == ProDensity::DenseProven ? "DENSE_PROVEN"
                                                                     : "unexpected");
    r.emplace_back("note", res.note);
  }

  {
    auto& r = rep.fresh();
    r.emplace_back("query", "density of {Cinf} alone");
    DenseFamily only_inf;
    only_inf.points.push_back(chromatic_infinity(x));
    ProDensityReport res = patch_dense_pro(x, only_inf, depth);
    r.emplace_back("verdict", res.verdict == ProDensity::NotDense ? "NOT_DENSE" : "unexpected");
    if (res.witness) r.emplace_back("witness", levelset_text(x, *res.witness));
  }

  {
    auto& r = rep.fresh();
    r.emplace_back("query", "is {C2} constructible");
    SingletonReport res = is_constructible_singleton(x, chromatic_point(x, 2), depth);
    r.emplace_back("verdict", res.constructible ? "CONSTRUCTIBLE" : "unexpected");
    r.emplace_back("witness-level", std::to_string(res.witness_level));
  }

  {
    auto& r = rep.fresh();
    r.emplace_back("query", "is {Cinf} constructible");
    SingletonReport res = is_constructible_singleton(x, chromatic_infinity(x), depth);
    r.emplace_back("verdict",
                   res.constructible ? "unexpected" : "NOT_CONSTRUCTIBLE_UP_TO_DEPTH");
    r.emplace_back("note", res.note);
  }

  {
    auto& r = rep.fresh();
    r.emplace_back("query", "weak visibility of C2");
    VisibilityReport res = weakly_visible_pro(x, chromatic_point(x, 2), depth);
    r.emplace_back("verdict", res.visible ? "VISIBLE" : "unexpected");
    if (res.visible) {
      r.emplace_back("V", levelset_text(x, *res.v));
      r.emplace_back("W", levelset_text(x, *res.w));
    }
  }

  {
    auto& r = rep.fresh();
    r.emplace_back("query", "density after removing C2");
    DenseFamily f = finite;
    f.excluded.push_back(chromatic_point(x, 2));
    ProDensityReport res = patch_dense_pro(x, f, depth);
    r.emplace_back("verdict", res.verdict == ProDensity::NotDense ? "NOT_DENSE" : "unexpected");
    if (res.witness) r.emplace_back("witness", levelset_text(x, *res.witness));
  }

  {
    auto& r = rep.fresh();
    r.emplace_back("query", "supports distinguished by the section family");
    SupportDatum d = chromatic_support(x, depth + 1);
    MapFamily fam;
    fam.pro_family = finite;
    DistinguishReport res = distinguishes_supports(d, fam, q.bound, depth);
    distinguish_record(r, d, res);
  }

  {
    auto& r = rep.fresh();
    r.emplace_back("query", "reconstruction from the finite points");
    SupportDatum d = chromatic_support(x, depth + 1);
    ProReconstructionReport res = reconstruct_from_dense_pro(d, finite, q.bound, depth);
    r.emplace_back("verdict", res.ok ? "reconstructed" : "refused");
    int ok_levels = 0;
    for (const auto& lr : res.levels) ok_levels += lr.ok ? 1 : 0;
    r.emplace_back("levels-recovered",
                   std::to_string(ok_levels) + " of 0.." + std::to_string(q.depth));
  }

  return rep;
}

}  // namespace patchtop
