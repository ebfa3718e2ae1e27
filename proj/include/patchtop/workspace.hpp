#ifndef PATCHTOP_WORKSPACE_HPP
#define PATCHTOP_WORKSPACE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patchtop/support.hpp"

namespace patchtop {

struct ParseError : Error {
  using Error::Error;
};

struct ProEntry {
  ProSpace space;
  std::optional<SectionFamily> sections;  // file-provided or rule-provided
};

// Named objects loaded from input files.  Names are unique per kind and
// dangling references are rejected at load time.
struct Workspace {
  std::map<std::string, FinPoset> posets;
  std::map<std::string, SetLattice> lattices;
  std::map<std::string, ProEntry> prospaces;
  std::map<std::string, SupportDatum> supports;

  const FinPoset& poset(const std::string& name) const;
  const SetLattice& lattice(const std::string& name) const;
  const ProEntry& prospace(const std::string& name) const;
  const SupportDatum& support(const std::string& name) const;
};

// Query knobs shared by the subcommands.
struct Query {
  int depth = 32;
  bool depth_explicit = false;
  int bound = 6;
  std::uint64_t seed = 0;
};

// A deterministic report: one or more records of key/value lines.
struct Report {
  using Record = std::vector<std::pair<std::string, std::string>>;
  std::vector<Record> records;

  Record& fresh();
  std::string render(bool porcelain) const;
};

std::string format_ids(std::vector<std::string> ids);  // "{a, b}" sorted

Report cmd_dual(const Workspace& ws, const std::string& space);
Report cmd_thomason(const Workspace& ws, const std::string& space,
                    const std::vector<std::string>& subset);
Report cmd_dense(const Workspace& ws, const std::string& space,
                 const std::vector<std::string>& subset);
Report cmd_lemma_dense_epi(const Workspace& ws, const std::string& space,
                           const std::vector<std::string>& images);
Report cmd_closure(const Workspace& ws, const std::string& lattice, bool via_evaluation);
Report cmd_realize(const Workspace& ws, const std::string& space,
                   const std::vector<std::string>& dom, const std::vector<std::string>& img);
Report cmd_pro_dense(const Workspace& ws, const std::string& prospace,
                     const std::string& family, const std::vector<std::string>& exclude,
                     const Query& q);
Report cmd_visible(const Workspace& ws, const std::string& prospace, const std::string& point,
                   const Query& q);
Report cmd_singleton(const Workspace& ws, const std::string& prospace, const std::string& point,
                     const Query& q);
Report cmd_distinguish(const Workspace& ws, const std::string& support,
                       const std::string& family, const Query& q);
Report cmd_classify(const Workspace& ws, const std::string& support,
                    const std::string& thomason, const Query& q);
Report cmd_reconstruct(const Workspace& ws, const std::string& support,
                       const std::string& dense, const Query& q);
Report cmd_demo_chromatic(const Query& q);

}  // namespace patchtop

#endif
