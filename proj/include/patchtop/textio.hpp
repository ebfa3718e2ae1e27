#ifndef PATCHTOP_TEXTIO_HPP
#define PATCHTOP_TEXTIO_HPP

#include <string>
#include <vector>

#include "patchtop/workspace.hpp"

namespace patchtop {

// Line-oriented text formats, UTF-8, '#' starts a comment:
//
//   poset <name>
//   elem <id> <id> ...
//   le <a> <b>              # declares a <= b; closure taken
//
//   lattice <name>
//   carrier <id> ...
//   gen <id> ...            # one generator subset per line (may be empty)
//
//   prospace <name>
//   rule chain-growth | rule constant <poset> | rule table
//   level <n> <poset-name>          # table rule
//   map <n> <a>-><b>                # p_n: level n+1 -> level n
//   section <n> <a>-><b>            # s_n: level n -> level n+1 (optional)
//
//   support <name> on <space>
//   gen <label> = <elem> ...                # finite space
//   gen <label> = level <n> : <elem> ...    # pro space
//
// Parse errors carry file and line number.  Rule-backed prospaces get the
// given working depth.
Workspace load_files(const std::vector<std::string>& paths, int working_depth = 32);

// Parse from an in-memory buffer (used by the tests).
Workspace load_text(const std::string& text, const std::string& filename = "<memory>",
                    int working_depth = 32);

std::string poset_to_text(const FinPoset& x, const std::string& name);

}  // namespace patchtop

#endif
