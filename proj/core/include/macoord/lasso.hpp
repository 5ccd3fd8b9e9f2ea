#pragma once

#include <vector>

#include "macoord/ltl.hpp"
#include "macoord/nba.hpp"

namespace macoord {

// Ultimately periodic word u . v^w. cycle must be non-empty.
struct Lasso {
  std::vector<SymbolSet> prefix;
  std::vector<SymbolSet> cycle;
};

// Direct LTL semantics on the lasso, by recursive evaluation with
// memoization over (subformula, position) pairs; positions past the prefix
// fold back into the cycle. Independent of any automaton construction: this
// is the reference the translation is tested against.
bool word_satisfies(const Formula& f, const Lasso& w);

// Nondeterministic membership test: simulates the reachable state set over
// the prefix, then decides Buchi acceptance of the periodic part by building
// one-period reachability with an accepting-visit flag and looking for a
// flagged cycle.
bool nba_accepts_lasso(const Nba& a, const Lasso& w);

}  // namespace macoord
