#pragma once

#include "macoord/ltl.hpp"
#include "macoord/nba.hpp"

namespace macoord {

struct TranslateOptions {
  // Upper bound on tableau nodes and on emitted automaton states. Exceeding
  // it raises ResourceLimitError rather than thrashing.
  int max_states = 100000;
};

// Full-LTL to NBA through the standard on-the-fly tableau: negation normal
// form (Release appears internally for negated/[] obligations), node
// expansion with cover splitting, one acceptance set per Until obligation,
// then counter degeneralization to a plain Buchi automaton. Unreachable
// states are pruned; no further minimization is attempted.
Nba translate_to_nba(const Formula& f, const TranslateOptions& options = {});

}  // namespace macoord
