#pragma once

#include <string>
#include <vector>

#include "macoord/ltl.hpp"

namespace macoord {

struct NbaLiteral {
  int prop = 0;
  bool positive = true;
};

// Conjunction of literals; empty conjunction matches every symbol.
struct NbaGuard {
  std::vector<NbaLiteral> literals;

  bool matches(SymbolSet symbol) const {
    for (const NbaLiteral& l : literals) {
      bool holds = (symbol & symbol_bit(l.prop)) != 0;
      if (holds != l.positive) return false;
    }
    return true;
  }
};

struct NbaEdge {
  NbaGuard guard;
  int target = 0;
};

// Nondeterministic Buchi automaton over symbol sets drawn from a fixed
// proposition alphabet. States are dense ids; edges are stored per source.
struct Nba {
  int num_props = 0;
  int num_states = 0;
  std::vector<std::vector<NbaEdge>> edges;
  std::vector<int> initial;
  std::vector<bool> accepting;

  // Graphviz rendering for debugging. alphabet supplies literal names; pass
  // an empty alphabet to label by proposition index.
  std::string to_dot(const Alphabet& alphabet = {}) const;
};

std::string guard_str(const NbaGuard& g, const Alphabet& alphabet = {});

}  // namespace macoord
