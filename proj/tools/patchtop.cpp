// patchtop: batch queries over finite spectral spaces, subset lattices,
// pro-spaces and support data loaded from text files.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "patchtop/textio.hpp"
#include "patchtop/workspace.hpp"

using namespace patchtop;

int main(int argc, char** argv) {
  CLI::App app{"exact point-set topology of finite spectral spaces and their limits"};
  app.require_subcommand(1);

  std::vector<std::string> load_paths;
  Query q;
  bool porcelain = false;
  bool timing = false;
  app.add_option("--load", load_paths, "input files (poset/lattice/prospace/support blocks)");
  auto* depth_opt =
      app.add_option("--depth", q.depth, "level depth for pro-space queries")->capture_default_str();
  app.add_option("--bound", q.bound, "term size bound for support queries")->capture_default_str();
  app.add_option("--seed", q.seed, "seed for randomized checks")->capture_default_str();
  app.add_flag("--porcelain", porcelain, "one machine-readable record per line");
  app.add_flag("--timing", timing, "append elapsed time (breaks byte-for-byte reproducibility)");

  std::string space, lattice, support, subset, family, point, thomason, dense, demo_name;
  std::string map_images, dom, img;
  std::vector<std::string> exclude;

  auto* c_dual = app.add_subcommand("dual", "Hochster dual of a finite space");
  c_dual->add_option("--space", space)->required();

  auto* c_thomason = app.add_subcommand("thomason", "is the subset Thomason?");
  c_thomason->add_option("--space", space)->required();
  c_thomason->add_option("--subset", subset, "comma-separated ids ('-' for empty)")->required();

  auto* c_dense = app.add_subcommand("dense", "is the subset patch-dense?");
  c_dense->add_option("--space", space)->required();
  c_dense->add_option("--subset", subset)->required();

  auto* c_lemma = app.add_subcommand("lemma-dense-epi", "triple-oracle density conditions");
  c_lemma->add_option("--space", space)->required();
  c_lemma->add_option("--map", map_images, "images of the index set, comma-separated")->required();

  auto* c_closure = app.add_subcommand("closure", "spectral closure of a subset lattice");
  c_closure->add_option("--lattice", lattice)->required();

  auto* c_closure_ev = app.add_subcommand("closure-ev", "closure via the evaluation map");
  c_closure_ev->add_option("--lattice", lattice)->required();

  auto* c_realize = app.add_subcommand("realize", "realize the closure inside an ambient space");
  c_realize->add_option("--space", space)->required();
  c_realize->add_option("--dom", dom, "domain ids, comma-separated")->required();
  c_realize->add_option("--img", img, "image ids, comma-separated")->required();

  auto* c_pro_dense = app.add_subcommand("pro-dense", "patch-density of a family of points");
  c_pro_dense->add_option("--prospace", space)->required();
  c_pro_dense->add_option("--family", family, "sections | finite-points | points:p;q")->required();
  c_pro_dense->add_option("--exclude", exclude, "points removed from the family");

  auto* c_visible = app.add_subcommand("visible", "weak visibility of a point of the limit");
  c_visible->add_option("--prospace", space)->required();
  c_visible->add_option("--point", point)->required();

  auto* c_singleton = app.add_subcommand("singleton", "is {p} a level-presented set?");
  c_singleton->add_option("--prospace", space)->required();
  c_singleton->add_option("--point", point)->required();

  auto* c_disting = app.add_subcommand("distinguish", "does the family distinguish supports?");
  c_disting->add_option("--support", support)->required();
  c_disting->add_option("--family", family, "identity | points:a,b | sections")->required();

  auto* c_classify = app.add_subcommand("classify", "ideal shadow of a Thomason subset");
  c_classify->add_option("--support", support)->required();
  c_classify->add_option("--thomason", thomason, "ids, or level:<n>:ids for pro data")->required();

  auto* c_recon = app.add_subcommand("reconstruct", "rebuild the space from restricted supports");
  c_recon->add_option("--support", support)->required();
  c_recon->add_option("--dense", dense, "all | ids | sections | finite-points")->required();

  auto* c_demo = app.add_subcommand("demo", "built-in demonstration");
  c_demo->add_option("name", demo_name, "demo name (chromatic)")->required();

  CLI11_PARSE(app, argc, argv);

  auto started = std::chrono::steady_clock::now();
  try {
    Workspace ws = load_files(load_paths, std::max(q.depth + 2, 32));
    q.depth_explicit = depth_opt->count() > 0;

    Report rep;
    if (c_dual->parsed()) {
      rep = cmd_dual(ws, space);
    } else if (c_thomason->parsed()) {
      rep = cmd_thomason(ws, space, subset == "-" ? std::vector<std::string>{}
                                                  : CLI::detail::split(subset, ','));
    } else if (c_dense->parsed()) {
      rep = cmd_dense(ws, space, subset == "-" ? std::vector<std::string>{}
                                               : CLI::detail::split(subset, ','));
    } else if (c_lemma->parsed()) {
      rep = cmd_lemma_dense_epi(ws, space, map_images == "-" ? std::vector<std::string>{}
                                                             : CLI::detail::split(map_images, ','));
    } else if (c_closure->parsed()) {
      rep = cmd_closure(ws, lattice, false);
    } else if (c_closure_ev->parsed()) {
      rep = cmd_closure(ws, lattice, true);
    } else if (c_realize->parsed()) {
      rep = cmd_realize(ws, space, CLI::detail::split(dom, ','), CLI::detail::split(img, ','));
    } else if (c_pro_dense->parsed()) {
      if (!q.depth_explicit)
        q.depth = std::min(q.depth, ws.prospace(space).space.working_depth());
      rep = cmd_pro_dense(ws, space, family, exclude, q);
    } else if (c_visible->parsed()) {
      if (!q.depth_explicit)
        q.depth = std::min(q.depth, ws.prospace(space).space.working_depth());
      rep = cmd_visible(ws, space, point, q);
    } else if (c_singleton->parsed()) {
      if (!q.depth_explicit)
        q.depth = std::min(q.depth, ws.prospace(space).space.working_depth());
      rep = cmd_singleton(ws, space, point, q);
    } else if (c_disting->parsed()) {
      rep = cmd_distinguish(ws, support, family, q);
    } else if (c_classify->parsed()) {
      rep = cmd_classify(ws, support, thomason, q);
    } else if (c_recon->parsed()) {
      rep = cmd_reconstruct(ws, support, dense, q);
    } else if (c_demo->parsed()) {
      if (demo_name != "chromatic") throw Error("unknown demo '" + demo_name + "'");
      rep = cmd_demo_chromatic(q);
    }

    if (timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - started)
                    .count();
      rep.fresh().emplace_back("elapsed-ms", std::to_string(ms));
    }
    std::cout << rep.render(porcelain);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
